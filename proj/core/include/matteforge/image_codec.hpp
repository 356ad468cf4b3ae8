#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "matteforge/image.hpp"
#include "matteforge/trimap.hpp"

namespace matteforge {

/// A decoded file, samples normalised to [0, 1] by the format's maximum
/// code value (255 or 65535).
struct DecodedImage {
  int width = 0;
  int height = 0;
  int channels = 0;   // 1 gray, 2 gray+alpha, 3 RGB, 4 RGBA
  int bit_depth = 8;  // 8 or 16
  std::vector<float> samples;
};

/// PNG (8/16-bit, any colour type) or baseline JPEG, detected by signature.
/// Palette and sub-byte PNGs are expanded to 8-bit. Throws IoError.
DecodedImage decode_image(const std::filesystem::path& path);

/// RGB raster; gray is replicated, a stored alpha channel is dropped.
ImageBuffer load_rgb(const std::filesystem::path& path);

/// Single-channel matte; colour files contribute their first channel.
AlphaMatte load_alpha(const std::filesystem::path& path);

/// Round-half-to-even of v * max_code after clamping to [0, 1].
std::uint8_t quantize8(float v) noexcept;
std::uint16_t quantize16(float v) noexcept;

void write_png(const std::filesystem::path& path, const ImageBuffer& image);
void write_png(const std::filesystem::path& path, const AlphaMatte& alpha, int bit_depth = 8);
void write_png(const std::filesystem::path& path, const Trimap& trimap);

}  // namespace matteforge
