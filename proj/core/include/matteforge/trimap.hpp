#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "matteforge/image.hpp"

namespace matteforge {

// Byte values match the usual on-disk trimap encoding.
enum class TrimapLabel : std::uint8_t {
  Background = 0,
  Unknown = 128,
  Foreground = 255,
};

class Trimap {
 public:
  Trimap(int width, int height, TrimapLabel fill = TrimapLabel::Unknown);

  int width() const noexcept { return shape_.width; }
  int height() const noexcept { return shape_.height; }
  Shape shape() const noexcept { return shape_; }

  TrimapLabel at(int x, int y) const noexcept {
    return labels_[static_cast<std::size_t>(y) * shape_.width + x];
  }
  void set(int x, int y, TrimapLabel label) noexcept {
    labels_[static_cast<std::size_t>(y) * shape_.width + x] = label;
  }
  std::span<const TrimapLabel> labels() const noexcept { return labels_; }

  std::size_t count(TrimapLabel label) const noexcept;

  bool operator==(const Trimap&) const = default;

 private:
  Shape shape_;
  std::vector<TrimapLabel> labels_;
};

struct TrimapParams {
  double fg_threshold = 0.95;
  double bg_threshold = 0.05;
  int dilation_radius = 10;
};

/// alpha >= fg_threshold -> Foreground, alpha <= bg_threshold -> Background,
/// everything else Unknown; the Unknown band is then grown by a
/// (2r+1) x (2r+1) square structuring element.
///
/// Requires 0 <= bg_threshold < fg_threshold <= 1 and radius >= 0,
/// otherwise ParameterError.
Trimap generate_trimap(const AlphaMatte& alpha, const TrimapParams& params);

}  // namespace matteforge
