#include "matteforge/metrics.hpp"

#include <cmath>

#include <fmt/format.h>

#include "matteforge/error.hpp"

namespace matteforge {

PixelMask::PixelMask(int width, int height, std::vector<std::uint8_t> included)
    : shape_{width, height}, included_(std::move(included)) {
  if (width < 1 || height < 1 || included_.size() != shape_.pixels()) {
    throw ShapeError(fmt::format("mask {} needs {} values, got {}", to_string(shape_),
                                 shape_.pixels(), included_.size()));
  }
}

PixelMask PixelMask::unknown_region(const Trimap& trimap) {
  std::vector<std::uint8_t> included(trimap.shape().pixels());
  const auto labels = trimap.labels();
  for (std::size_t i = 0; i < included.size(); ++i) {
    included[i] = labels[i] == TrimapLabel::Unknown ? 1 : 0;
  }
  return PixelMask(trimap.width(), trimap.height(), std::move(included));
}

std::size_t PixelMask::selected() const noexcept {
  std::size_t n = 0;
  for (auto v : included_) n += v != 0;
  return n;
}

namespace {

EvalResult accumulate(const AlphaMatte& pred, const AlphaMatte& gt, const std::uint8_t* mask) {
  require_same_shape(pred.shape(), gt.shape(), "evaluate(pred, gt)");
  const auto p = pred.data();
  const auto g = gt.data();
  double abs_sum = 0.0;
  double sq_sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (mask && !mask[i]) continue;
    const double d = static_cast<double>(p[i]) - static_cast<double>(g[i]);
    abs_sum += std::abs(d);
    sq_sum += d * d;
    ++n;
  }
  if (n == 0) throw ParameterError("evaluation mask selects no pixels");
  return {abs_sum * 255.0 / 1000.0, sq_sum / static_cast<double>(n), n};
}

}  // namespace

EvalResult evaluate(const AlphaMatte& pred, const AlphaMatte& gt) {
  return accumulate(pred, gt, nullptr);
}

EvalResult evaluate(const AlphaMatte& pred, const AlphaMatte& gt, const PixelMask& mask) {
  require_same_shape(pred.shape(), mask.shape(), "evaluate(pred, mask)");
  return accumulate(pred, gt, mask.values().data());
}

EvalResult mean(std::span<const EvalResult> results) {
  if (results.empty()) return {};
  EvalResult out;
  std::size_t pixels = 0;
  for (const auto& r : results) {
    out.sad += r.sad;
    out.mse += r.mse;
    pixels += r.pixel_count;
  }
  const auto n = static_cast<double>(results.size());
  out.sad /= n;
  out.mse /= n;
  out.pixel_count = pixels / results.size();
  return out;
}

}  // namespace matteforge
