#include "matteforge/pools.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include <fmt/format.h>

#include "matteforge/error.hpp"
#include "matteforge/image_codec.hpp"

namespace matteforge {

namespace fs = std::filesystem;

namespace {

bool is_image_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

void require_directory(const fs::path& dir, const char* role) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw IoError(fmt::format("{} directory '{}' does not exist or is not a directory", role,
                              dir.string()));
  }
}

}  // namespace

std::vector<fs::path> list_images(const fs::path& dir) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && is_image_extension(entry.path())) files.push_back(entry.path());
  }
  if (ec) throw IoError(fmt::format("cannot list '{}': {}", dir.string(), ec.message()));
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return std::pair(a.stem().string(), a.filename().string()) <
           std::pair(b.stem().string(), b.filename().string());
  });
  return files;
}

Pools load_pools(const PoolLayout& layout) {
  require_directory(layout.fg_dir, "foreground");
  require_directory(layout.alpha_dir, "alpha");
  require_directory(layout.bg_dir, "background");

  Pools pools;
  auto& report = pools.report;

  std::map<std::string, fs::path> alphas;
  for (const auto& p : list_images(layout.alpha_dir)) {
    const auto [it, inserted] = alphas.emplace(p.stem().string(), p);
    if (!inserted) {
      report.warnings.push_back({p, fmt::format("duplicate alpha stem '{}', keeping '{}'",
                                                it->first, it->second.filename().string())});
    }
  }

  std::map<std::string, bool> used_alpha;
  std::set<std::string> seen;
  for (const auto& fg_path : list_images(layout.fg_dir)) {
    const std::string stem = fg_path.stem().string();
    if (!seen.insert(stem).second) {
      report.warnings.push_back({fg_path, fmt::format("duplicate foreground stem '{}'", stem)});
      continue;
    }
    const auto a = alphas.find(stem);
    if (a == alphas.end()) {
      report.warnings.push_back({fg_path, "no alpha matte with the same stem; skipped"});
      continue;
    }
    used_alpha[stem] = true;
    try {
      ImageBuffer image = load_rgb(fg_path);
      AlphaMatte alpha = load_alpha(a->second);
      if (image.shape() != alpha.shape()) {
        report.errors.push_back({fg_path, fmt::format("image {} and alpha {} differ in size",
                                                      to_string(image.shape()),
                                                      to_string(alpha.shape()))});
        continue;
      }
      if (alpha.fully_transparent()) {
        report.warnings.push_back({a->second, "alpha matte is fully transparent; skipped"});
        continue;
      }
      pools.foregrounds.emplace_back(stem, std::move(image), std::move(alpha));
    } catch (const Error& e) {
      report.errors.push_back({fg_path, e.what()});
    }
  }
  for (const auto& [stem, path] : alphas) {
    if (!used_alpha.contains(stem)) {
      report.warnings.push_back({path, "no foreground with the same stem; skipped"});
    }
  }

  std::set<std::string> seen_bg;
  for (const auto& bg_path : list_images(layout.bg_dir)) {
    const std::string stem = bg_path.stem().string();
    if (!seen_bg.insert(stem).second) {
      report.warnings.push_back({bg_path, fmt::format("duplicate background stem '{}'", stem)});
      continue;
    }
    try {
      pools.backgrounds.push_back({stem, load_rgb(bg_path)});
    } catch (const Error& e) {
      report.errors.push_back({bg_path, e.what()});
    }
  }

  if (pools.foregrounds.empty()) {
    throw IoError(fmt::format("no usable foregrounds in '{}' ({} warnings, {} errors)",
                              layout.fg_dir.string(), report.warnings.size(), report.errors.size()));
  }
  if (pools.backgrounds.empty()) {
    throw IoError(fmt::format("no usable backgrounds in '{}'", layout.bg_dir.string()));
  }
  return pools;
}

}  // namespace matteforge
