#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "matteforge/image.hpp"
#include "matteforge/trimap.hpp"

namespace matteforge {

/// Pixels to evaluate (non-zero = included).
class PixelMask {
 public:
  PixelMask(int width, int height, std::vector<std::uint8_t> included);

  /// The Unknown region of a trimap.
  static PixelMask unknown_region(const Trimap& trimap);

  Shape shape() const noexcept { return shape_; }
  std::span<const std::uint8_t> values() const noexcept { return included_; }
  std::size_t selected() const noexcept;

 private:
  Shape shape_;
  std::vector<std::uint8_t> included_;
};

struct EvalResult {
  double sad = 0.0;  // sum |pred - gt| on the 0..255 scale, divided by 1000
  double mse = 0.0;  // mean (pred - gt)^2 on the 0..1 scale
  std::size_t pixel_count = 0;
};

EvalResult evaluate(const AlphaMatte& pred, const AlphaMatte& gt);

/// Restricted to the selected pixels. An empty selection is a ParameterError.
EvalResult evaluate(const AlphaMatte& pred, const AlphaMatte& gt, const PixelMask& mask);

/// Column-wise arithmetic mean (pixel_count is rounded down).
EvalResult mean(std::span<const EvalResult> results);

}  // namespace matteforge
