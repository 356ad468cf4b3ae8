#pragma once

#include "matteforge/image.hpp"

namespace matteforge {

/// A combined foreground: colour plus its alpha.
struct Combination {
  ImageBuffer image;
  AlphaMatte alpha;
};

/// FG-BG composition: out = alpha * fg + (1 - alpha) * bg, clamped to [0, 1].
ImageBuffer comp(const ImageBuffer& fg, const AlphaMatte& alpha, const ImageBuffer& bg);

/// Naive combination: `b` is treated as an opaque background for `a`.
///   F = aA * FA + (1 - aA) * FB
///   alpha = 1 - (1 - aA)(1 - aB)
/// The alpha of `b` never touches the colour, so whatever is stored in FB
/// under aB == 0 leaks into the result.
Combination ncf(const ImageBuffer& fa, const AlphaMatte& alpha_a,
                const ImageBuffer& fb, const AlphaMatte& alpha_b);
Combination ncf(const FgEntry& a, const FgEntry& b);

/// Reasonable combination: the colour that, composited with the combined
/// alpha, reproduces overlaying `a` onto (`b` composited onto anything).
///   alpha = 1 - (1 - aA)(1 - aB)
///   F = (aA * FA + (1 - aA) * aB * FB) / (alpha + eps)
/// `a` is on top. Swapping the arguments keeps the alpha bit-identical but
/// changes the colour wherever both alphas are non-zero and FA != FB.
Combination rcf(const ImageBuffer& fa, const AlphaMatte& alpha_a,
                const ImageBuffer& fb, const AlphaMatte& alpha_b,
                EpsilonConfig eps = EpsilonConfig{});
Combination rcf(const FgEntry& a, const FgEntry& b, EpsilonConfig eps = EpsilonConfig{});

/// The premultiplied colour of rcf without the epsilon division:
///   image = aA * FA + (1 - aA) * aB * FB,  alpha as in rcf.
Combination premultiplied_rcf(const ImageBuffer& fa, const AlphaMatte& alpha_a,
                              const ImageBuffer& fb, const AlphaMatte& alpha_b);
Combination premultiplied_rcf(const FgEntry& a, const FgEntry& b);

}  // namespace matteforge
