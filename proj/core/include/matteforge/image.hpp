#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace matteforge {

struct Shape {
  int width = 0;
  int height = 0;

  std::size_t pixels() const noexcept {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  bool operator==(const Shape&) const = default;
};

std::string to_string(Shape shape);

/// Row-major H x W x 3 RGB raster of floats, nominally in [0, 1].
///
/// Values are compositing-space values taken straight from the decoded
/// file (no gamma linearisation).
class ImageBuffer {
 public:
  static constexpr int kChannels = 3;

  /// Constant-filled raster. Throws ShapeError for non-positive dimensions.
  ImageBuffer(int width, int height, float fill = 0.0f);

  /// Takes ownership of `data`; its size must be width * height * 3.
  ImageBuffer(int width, int height, std::vector<float> data);

  int width() const noexcept { return shape_.width; }
  int height() const noexcept { return shape_.height; }
  Shape shape() const noexcept { return shape_; }

  std::span<const float> data() const noexcept { return data_; }
  std::span<float> mutable_data() noexcept { return data_; }

  float at(int x, int y, int c) const noexcept {
    return data_[(static_cast<std::size_t>(y) * shape_.width + x) * kChannels + c];
  }
  float& at(int x, int y, int c) noexcept {
    return data_[(static_cast<std::size_t>(y) * shape_.width + x) * kChannels + c];
  }

  bool operator==(const ImageBuffer&) const = default;

 private:
  Shape shape_;
  std::vector<float> data_;
};

/// Row-major H x W single-channel opacity map. Every value lies in [0, 1];
/// construction rejects anything else (including NaN) with ParameterError.
class AlphaMatte {
 public:
  AlphaMatte(int width, int height, float fill = 0.0f);
  AlphaMatte(int width, int height, std::vector<float> data);

  /// Clamps every value into [0, 1] instead of rejecting. NaN maps to 0.
  static AlphaMatte clamped(int width, int height, std::vector<float> data);

  int width() const noexcept { return shape_.width; }
  int height() const noexcept { return shape_.height; }
  Shape shape() const noexcept { return shape_; }

  std::span<const float> data() const noexcept { return data_; }

  float at(int x, int y) const noexcept {
    return data_[static_cast<std::size_t>(y) * shape_.width + x];
  }

  /// True when every pixel is exactly zero.
  bool fully_transparent() const noexcept;

  bool operator==(const AlphaMatte&) const = default;

 private:
  struct Unchecked {};
  AlphaMatte(Unchecked, int width, int height, std::vector<float> data);

  Shape shape_;
  std::vector<float> data_;
};

/// A named foreground with its alpha matte. Image and alpha share a shape.
struct FgEntry {
  FgEntry(std::string id, ImageBuffer image, AlphaMatte alpha);

  std::string id;
  ImageBuffer image;
  AlphaMatte alpha;
};

struct BgEntry {
  std::string id;
  ImageBuffer image;
};

/// Guard added to the combined-alpha denominator when recovering an
/// un-premultiplied colour.
struct EpsilonConfig {
  explicit EpsilonConfig(double epsilon = 1e-6);

  double epsilon;
};

// Throws ShapeError naming both shapes unless a == b.
void require_same_shape(Shape a, Shape b, const char* what);

}  // namespace matteforge
