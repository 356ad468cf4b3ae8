#include "matteforge/image.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "matteforge/error.hpp"

namespace matteforge {

namespace {

Shape checked_shape(int width, int height) {
  if (width < 1 || height < 1) {
    throw ShapeError(fmt::format("raster dimensions must be positive, got {}x{}", width, height));
  }
  return Shape{width, height};
}

}  // namespace

std::string to_string(Shape shape) { return fmt::format("{}x{}", shape.width, shape.height); }

void require_same_shape(Shape a, Shape b, const char* what) {
  if (a != b) {
    throw ShapeError(fmt::format("{}: shape mismatch {} vs {}", what, to_string(a), to_string(b)));
  }
}

ImageBuffer::ImageBuffer(int width, int height, float fill)
    : shape_(checked_shape(width, height)), data_(shape_.pixels() * kChannels, fill) {}

ImageBuffer::ImageBuffer(int width, int height, std::vector<float> data)
    : shape_(checked_shape(width, height)), data_(std::move(data)) {
  if (data_.size() != shape_.pixels() * kChannels) {
    throw ShapeError(fmt::format("image {} needs {} values, got {}", to_string(shape_),
                                 shape_.pixels() * kChannels, data_.size()));
  }
}

AlphaMatte::AlphaMatte(int width, int height, float fill)
    : AlphaMatte(width, height, std::vector<float>(checked_shape(width, height).pixels(), fill)) {}

AlphaMatte::AlphaMatte(int width, int height, std::vector<float> data)
    : shape_(checked_shape(width, height)), data_(std::move(data)) {
  if (data_.size() != shape_.pixels()) {
    throw ShapeError(fmt::format("alpha {} needs {} values, got {}", to_string(shape_),
                                 shape_.pixels(), data_.size()));
  }
  const auto bad = std::find_if(data_.begin(), data_.end(),
                                [](float v) { return !(v >= 0.0f && v <= 1.0f); });
  if (bad != data_.end()) {
    throw ParameterError(fmt::format("alpha value {} at offset {} is outside [0, 1]", *bad,
                                     std::distance(data_.begin(), bad)));
  }
}

AlphaMatte::AlphaMatte(Unchecked, int width, int height, std::vector<float> data)
    : shape_(checked_shape(width, height)), data_(std::move(data)) {
  if (data_.size() != shape_.pixels()) {
    throw ShapeError(fmt::format("alpha {} needs {} values, got {}", to_string(shape_),
                                 shape_.pixels(), data_.size()));
  }
}

AlphaMatte AlphaMatte::clamped(int width, int height, std::vector<float> data) {
  for (float& v : data) {
    v = std::isnan(v) ? 0.0f : std::clamp(v, 0.0f, 1.0f);
  }
  return AlphaMatte(Unchecked{}, width, height, std::move(data));
}

bool AlphaMatte::fully_transparent() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](float v) { return v == 0.0f; });
}

FgEntry::FgEntry(std::string id_, ImageBuffer image_, AlphaMatte alpha_)
    : id(std::move(id_)), image(std::move(image_)), alpha(std::move(alpha_)) {
  if (image.shape() != alpha.shape()) {
    throw ShapeError(fmt::format("foreground '{}': image {} and alpha {} differ", id,
                                 to_string(image.shape()), to_string(alpha.shape())));
  }
}

EpsilonConfig::EpsilonConfig(double epsilon_) : epsilon(epsilon_) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ParameterError(fmt::format("epsilon must be positive and finite, got {}", epsilon));
  }
}

}  // namespace matteforge
