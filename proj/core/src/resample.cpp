#include "matteforge/resample.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "matteforge/error.hpp"

namespace matteforge {

namespace {

struct Tap {
  int lo;
  int hi;
  float w;  // weight of `hi`
};

std::vector<Tap> taps(int src, int dst) {
  std::vector<Tap> out(dst);
  const double scale = static_cast<double>(src) / dst;
  for (int i = 0; i < dst; ++i) {
    double s = (i + 0.5) * scale - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(src - 1));
    const int lo = static_cast<int>(std::floor(s));
    const int hi = std::min(lo + 1, src - 1);
    out[i] = {lo, hi, static_cast<float>(s - lo)};
  }
  return out;
}

void check_target(Shape target) {
  if (target.width < 1 || target.height < 1) {
    throw ShapeError(fmt::format("cannot resample to zero-area shape {}", to_string(target)));
  }
}

std::vector<float> resample(std::span<const float> src, Shape from, Shape to, int channels) {
  const auto xs = taps(from.width, to.width);
  const auto ys = taps(from.height, to.height);
  std::vector<float> out(to.pixels() * channels);
  auto px = [&](int x, int y, int c) {
    return src[(static_cast<std::size_t>(y) * from.width + x) * channels + c];
  };
  for (int y = 0; y < to.height; ++y) {
    const Tap& ty = ys[y];
    for (int x = 0; x < to.width; ++x) {
      const Tap& tx = xs[x];
      for (int c = 0; c < channels; ++c) {
        const float top = px(tx.lo, ty.lo, c) * (1.0f - tx.w) + px(tx.hi, ty.lo, c) * tx.w;
        const float bottom = px(tx.lo, ty.hi, c) * (1.0f - tx.w) + px(tx.hi, ty.hi, c) * tx.w;
        out[(static_cast<std::size_t>(y) * to.width + x) * channels + c] =
            top * (1.0f - ty.w) + bottom * ty.w;
      }
    }
  }
  return out;
}

}  // namespace

ImageBuffer resize_bilinear(const ImageBuffer& image, Shape target) {
  check_target(target);
  if (image.shape() == target) return image;
  auto data = resample(image.data(), image.shape(), target, ImageBuffer::kChannels);
  for (float& v : data) v = std::clamp(v, 0.0f, 1.0f);
  return ImageBuffer(target.width, target.height, std::move(data));
}

AlphaMatte resize_bilinear(const AlphaMatte& alpha, Shape target) {
  check_target(target);
  if (alpha.shape() == target) return alpha;
  return AlphaMatte::clamped(target.width, target.height,
                             resample(alpha.data(), alpha.shape(), target, 1));
}

ImageBuffer cover_fit(const ImageBuffer& image, Shape target) {
  check_target(target);
  if (image.shape() == target) return image;
  const double scale = std::max(static_cast<double>(target.width) / image.width(),
                                static_cast<double>(target.height) / image.height());
  // Rounded, but never below the target on either axis.
  const Shape scaled{
      std::max(target.width, static_cast<int>(std::lround(image.width() * scale))),
      std::max(target.height, static_cast<int>(std::lround(image.height() * scale)))};
  const ImageBuffer resized = resize_bilinear(image, scaled);
  const int x0 = (scaled.width - target.width) / 2;
  const int y0 = (scaled.height - target.height) / 2;
  if (x0 == 0 && y0 == 0 && scaled == target) return resized;

  ImageBuffer out(target.width, target.height);
  for (int y = 0; y < target.height; ++y) {
    for (int x = 0; x < target.width; ++x) {
      for (int c = 0; c < ImageBuffer::kChannels; ++c) {
        out.at(x, y, c) = resized.at(x0 + x, y0 + y, c);
      }
    }
  }
  return out;
}

FgEntry harmonize(const FgEntry& entry, Shape target) {
  check_target(target);
  if (entry.image.shape() == target) return entry;
  return FgEntry(entry.id, resize_bilinear(entry.image, target),
                 resize_bilinear(entry.alpha, target));
}

ImageBuffer harmonize(const ImageBuffer& background, Shape target) {
  return cover_fit(background, target);
}

}  // namespace matteforge
