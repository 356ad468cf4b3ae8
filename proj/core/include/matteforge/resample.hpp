#pragma once

#include "matteforge/image.hpp"

namespace matteforge {

// Bilinear resampling with pixel-centre alignment:
//   src = (dst + 0.5) * (src_extent / dst_extent) - 0.5, clamped to the edge.
// No antialiasing prefilter. A raster already at the target shape is
// returned as an exact copy.
ImageBuffer resize_bilinear(const ImageBuffer& image, Shape target);
AlphaMatte resize_bilinear(const AlphaMatte& alpha, Shape target);

/// Scale preserving aspect ratio until `target` is covered, then crop the
/// centre. Used to fit a background under a foreground.
ImageBuffer cover_fit(const ImageBuffer& image, Shape target);

/// Stretch a foreground and its alpha to `target` (aspect not preserved).
/// Used for the second foreground of a combination.
FgEntry harmonize(const FgEntry& entry, Shape target);

/// Background harmonisation; same as cover_fit.
ImageBuffer harmonize(const ImageBuffer& background, Shape target);

}  // namespace matteforge
