#include "matteforge/operators.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

#include "matteforge/error.hpp"

namespace matteforge {

namespace {

constexpr int kC = ImageBuffer::kChannels;

float clamp01(float v) noexcept { return std::clamp(v, 0.0f, 1.0f); }

// Shared by ncf, rcf and premultiplied_rcf.
std::vector<float> union_alpha(std::span<const float> a, std::span<const float> b) {
  std::vector<float> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = clamp01(1.0f - (1.0f - a[i]) * (1.0f - b[i]));
  }
  return out;
}

void require_pair(const ImageBuffer& fa, const AlphaMatte& aa, const ImageBuffer& fb,
                  const AlphaMatte& ab, const char* op) {
  require_same_shape(fa.shape(), aa.shape(), op);
  require_same_shape(fb.shape(), ab.shape(), op);
  require_same_shape(fa.shape(), fb.shape(), op);
}

}  // namespace

ImageBuffer comp(const ImageBuffer& fg, const AlphaMatte& alpha, const ImageBuffer& bg) {
  require_same_shape(fg.shape(), alpha.shape(), "comp(fg, alpha)");
  require_same_shape(fg.shape(), bg.shape(), "comp(fg, bg)");

  const auto f = fg.data();
  const auto b = bg.data();
  const auto a = alpha.data();
  std::vector<float> out(f.size());
  for (std::size_t p = 0; p < a.size(); ++p) {
    const float w = a[p];
    for (int c = 0; c < kC; ++c) {
      const std::size_t i = p * kC + c;
      out[i] = clamp01(w * f[i] + (1.0f - w) * b[i]);
    }
  }
  return ImageBuffer(fg.width(), fg.height(), std::move(out));
}

Combination ncf(const ImageBuffer& fa, const AlphaMatte& alpha_a, const ImageBuffer& fb,
                const AlphaMatte& alpha_b) {
  require_pair(fa, alpha_a, fb, alpha_b, "ncf");
  const auto a = alpha_a.data();
  const auto x = fa.data();
  const auto y = fb.data();
  std::vector<float> image(x.size());
  for (std::size_t p = 0; p < a.size(); ++p) {
    for (int c = 0; c < kC; ++c) {
      const std::size_t i = p * kC + c;
      image[i] = clamp01(a[p] * x[i] + (1.0f - a[p]) * y[i]);
    }
  }
  return {ImageBuffer(fa.width(), fa.height(), std::move(image)),
          AlphaMatte::clamped(fa.width(), fa.height(), union_alpha(a, alpha_b.data()))};
}

Combination ncf(const FgEntry& a, const FgEntry& b) { return ncf(a.image, a.alpha, b.image, b.alpha); }

Combination rcf(const ImageBuffer& fa, const AlphaMatte& alpha_a, const ImageBuffer& fb,
                const AlphaMatte& alpha_b, EpsilonConfig eps) {
  require_pair(fa, alpha_a, fb, alpha_b, "rcf");
  const auto a = alpha_a.data();
  const auto b = alpha_b.data();
  const auto x = fa.data();
  const auto y = fb.data();
  auto alpha = union_alpha(a, b);
  const float e = static_cast<float>(eps.epsilon);
  std::vector<float> image(x.size());
  for (std::size_t p = 0; p < a.size(); ++p) {
    const float under = (1.0f - a[p]) * b[p];
    const float denom = alpha[p] + e;
    for (int c = 0; c < kC; ++c) {
      const std::size_t i = p * kC + c;
      image[i] = clamp01((a[p] * x[i] + under * y[i]) / denom);
    }
  }
  return {ImageBuffer(fa.width(), fa.height(), std::move(image)),
          AlphaMatte::clamped(fa.width(), fa.height(), std::move(alpha))};
}

Combination rcf(const FgEntry& a, const FgEntry& b, EpsilonConfig eps) {
  return rcf(a.image, a.alpha, b.image, b.alpha, eps);
}

Combination premultiplied_rcf(const ImageBuffer& fa, const AlphaMatte& alpha_a,
                              const ImageBuffer& fb, const AlphaMatte& alpha_b) {
  require_pair(fa, alpha_a, fb, alpha_b, "premultiplied_rcf");
  const auto a = alpha_a.data();
  const auto b = alpha_b.data();
  const auto x = fa.data();
  const auto y = fb.data();
  std::vector<float> image(x.size());
  for (std::size_t p = 0; p < a.size(); ++p) {
    const float under = (1.0f - a[p]) * b[p];
    for (int c = 0; c < kC; ++c) {
      const std::size_t i = p * kC + c;
      image[i] = clamp01(a[p] * x[i] + under * y[i]);
    }
  }
  return {ImageBuffer(fa.width(), fa.height(), std::move(image)),
          AlphaMatte::clamped(fa.width(), fa.height(), union_alpha(a, b))};
}

Combination premultiplied_rcf(const FgEntry& a, const FgEntry& b) {
  return premultiplied_rcf(a.image, a.alpha, b.image, b.alpha);
}

}  // namespace matteforge
