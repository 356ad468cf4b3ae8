#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "matteforge/image.hpp"

namespace matteforge::testing {

inline ImageBuffer random_image(std::mt19937_64& rng, int w, int h) {
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  std::vector<float> v(static_cast<std::size_t>(w) * h * 3);
  for (auto& x : v) x = u(rng);
  return ImageBuffer(w, h, std::move(v));
}

// Mixes exact 0 and 1 with interior values so edge cases appear often.
inline AlphaMatte random_alpha(std::mt19937_64& rng, int w, int h) {
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  std::uniform_int_distribution<int> pick(0, 9);
  std::vector<float> v(static_cast<std::size_t>(w) * h);
  for (auto& x : v) {
    const int k = pick(rng);
    x = k == 0 ? 0.0f : k == 1 ? 1.0f : u(rng);
  }
  return AlphaMatte(w, h, std::move(v));
}

inline FgEntry random_fg(std::mt19937_64& rng, int w, int h, std::string id = "fg") {
  return FgEntry(std::move(id), random_image(rng, w, h), random_alpha(rng, w, h));
}

/// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("matteforge_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// Writes a small deterministic pool: `n_fg` foregrounds of varying sizes
/// with soft disc-shaped alphas, and `n_bg` backgrounds of other aspect
/// ratios. Returns {fg_dir, alpha_dir, bg_dir} under `root`.
struct ToyPoolDirs {
  std::filesystem::path fg;
  std::filesystem::path alpha;
  std::filesystem::path bg;
};

ToyPoolDirs write_toy_pool(const std::filesystem::path& root, int n_fg = 6, int n_bg = 4);

/// Reads a whole file as bytes.
std::vector<char> read_bytes(const std::filesystem::path& path);

}  // namespace matteforge::testing
