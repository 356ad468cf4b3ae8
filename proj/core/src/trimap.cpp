#include "matteforge/trimap.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "matteforge/error.hpp"

namespace matteforge {

Trimap::Trimap(int width, int height, TrimapLabel fill) : shape_{width, height} {
  if (width < 1 || height < 1) {
    throw ShapeError(fmt::format("trimap dimensions must be positive, got {}x{}", width, height));
  }
  labels_.assign(shape_.pixels(), fill);
}

std::size_t Trimap::count(TrimapLabel label) const noexcept {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), label));
}

Trimap generate_trimap(const AlphaMatte& alpha, const TrimapParams& params) {
  if (!(params.bg_threshold >= 0.0 && params.bg_threshold < params.fg_threshold &&
        params.fg_threshold <= 1.0)) {
    throw ParameterError(fmt::format(
        "trimap thresholds need 0 <= bg_threshold < fg_threshold <= 1, got bg={} fg={}",
        params.bg_threshold, params.fg_threshold));
  }
  if (params.dilation_radius < 0) {
    throw ParameterError(
        fmt::format("trimap dilation radius must be >= 0, got {}", params.dilation_radius));
  }

  const int w = alpha.width();
  const int h = alpha.height();
  Trimap seed(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double a = alpha.at(x, y);
      if (a >= params.fg_threshold) {
        seed.set(x, y, TrimapLabel::Foreground);
      } else if (a <= params.bg_threshold) {
        seed.set(x, y, TrimapLabel::Background);
      }
    }
  }
  const int r = params.dilation_radius;
  if (r == 0) return seed;

  // Separable square dilation of the Unknown set: rows, then columns.
  std::vector<std::uint8_t> unknown(seed.shape().pixels());
  for (std::size_t i = 0; i < unknown.size(); ++i) {
    unknown[i] = seed.labels()[i] == TrimapLabel::Unknown;
  }
  std::vector<std::uint8_t> rows(unknown.size(), 0);
  for (int y = 0; y < h; ++y) {
    // Distance to the nearest unknown pixel on the left and right.
    int last = -(r + 1) - 1;
    std::vector<int> left(w), right(w);
    for (int x = 0; x < w; ++x) {
      if (unknown[static_cast<std::size_t>(y) * w + x]) last = x;
      left[x] = last;
    }
    last = w + r + 1;
    for (int x = w - 1; x >= 0; --x) {
      if (unknown[static_cast<std::size_t>(y) * w + x]) last = x;
      right[x] = last;
    }
    for (int x = 0; x < w; ++x) {
      rows[static_cast<std::size_t>(y) * w + x] = (x - left[x] <= r) || (right[x] - x <= r);
    }
  }
  Trimap out = seed;
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) {
      const int y0 = std::max(0, y - r);
      const int y1 = std::min(h - 1, y + r);
      for (int yy = y0; yy <= y1; ++yy) {
        if (rows[static_cast<std::size_t>(yy) * w + x]) {
          out.set(x, y, TrimapLabel::Unknown);
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace matteforge
