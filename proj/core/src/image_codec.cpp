#include "matteforge/image_codec.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>

// jpeglib.h needs FILE and size_t declared first.
#include <jpeglib.h>

#include <fmt/format.h>

#include "matteforge/error.hpp"

namespace matteforge {

namespace fs = std::filesystem;

namespace {

// libpng and libjpeg report errors by longjmp. Everything that runs under a
// setjmp below is kept free of objects with destructors; buffers are sized
// by the caller between the header and body phases.

struct FileCloser {
  void operator()(std::FILE* f) const noexcept {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const fs::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) {
    throw IoError(fmt::format("cannot open '{}': {}", path.string(), std::strerror(errno)));
  }
  return f;
}

// ---------------------------------------------------------------- PNG read

struct PngErrorSink {
  std::jmp_buf jump;
  char message[256] = {};
};

void png_error_to_sink(png_structp png, png_const_charp msg) {
  auto* sink = static_cast<PngErrorSink*>(png_get_error_ptr(png));
  std::snprintf(sink->message, sizeof sink->message, "%s", msg);
  std::longjmp(sink->jump, 1);
}

void png_warning_ignore(png_structp, png_const_charp) {}

struct PngReadState {
  png_structp png = nullptr;
  png_infop info = nullptr;
  PngErrorSink sink;

  ~PngReadState() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
  }
};

struct RasterHeader {
  int width;
  int height;
  int channels;
  int bit_depth;
};

bool png_read_header(PngReadState& s, std::FILE* fp, RasterHeader& out) {
  s.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &s.sink, png_error_to_sink,
                                 png_warning_ignore);
  if (!s.png) return false;
  s.info = png_create_info_struct(s.png);
  if (!s.info) return false;
  if (setjmp(s.sink.jump)) return false;

  png_init_io(s.png, fp);
  png_read_info(s.png, s.info);
  png_set_expand(s.png);  // palette -> RGB, low-bit gray -> 8 bit, tRNS -> alpha
  png_set_interlace_handling(s.png);
  png_read_update_info(s.png, s.info);
  out.width = static_cast<int>(png_get_image_width(s.png, s.info));
  out.height = static_cast<int>(png_get_image_height(s.png, s.info));
  out.channels = png_get_channels(s.png, s.info);
  out.bit_depth = png_get_bit_depth(s.png, s.info);
  return true;
}

bool png_read_body(PngReadState& s, png_bytepp rows) {
  if (setjmp(s.sink.jump)) return false;
  png_read_image(s.png, rows);
  png_read_end(s.png, nullptr);
  return true;
}

DecodedImage decode_png(const fs::path& path) {
  FilePtr fp = open_file(path, "rb");
  PngReadState state;
  RasterHeader h{};
  if (!png_read_header(state, fp.get(), h)) {
    throw IoError(fmt::format("cannot decode PNG '{}': {}", path.string(), state.sink.message));
  }
  if (h.bit_depth != 8 && h.bit_depth != 16) {
    throw IoError(fmt::format("PNG '{}' has unsupported bit depth {}", path.string(), h.bit_depth));
  }
  const std::size_t bytes_per_sample = h.bit_depth / 8;
  const std::size_t stride = static_cast<std::size_t>(h.width) * h.channels * bytes_per_sample;
  std::vector<png_byte> raw(stride * h.height);
  std::vector<png_bytep> rows(h.height);
  for (int y = 0; y < h.height; ++y) rows[y] = raw.data() + stride * y;
  if (!png_read_body(state, rows.data())) {
    throw IoError(fmt::format("cannot decode PNG '{}': {}", path.string(), state.sink.message));
  }

  DecodedImage img{h.width, h.height, h.channels, h.bit_depth, {}};
  const std::size_t n = static_cast<std::size_t>(h.width) * h.height * h.channels;
  img.samples.resize(n);
  if (h.bit_depth == 8) {
    for (std::size_t i = 0; i < n; ++i) img.samples[i] = raw[i] / 255.0f;
  } else {
    // PNG stores 16-bit samples big-endian.
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned v = (unsigned{raw[2 * i]} << 8) | raw[2 * i + 1];
      img.samples[i] = static_cast<float>(v / 65535.0);
    }
  }
  return img;
}

// --------------------------------------------------------------- JPEG read

struct JpegErrorSink {
  jpeg_error_mgr mgr;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX] = {};
};

void jpeg_error_to_sink(j_common_ptr cinfo) {
  auto* sink = reinterpret_cast<JpegErrorSink*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, sink->message);
  std::longjmp(sink->jump, 1);
}

struct JpegReadState {
  jpeg_decompress_struct cinfo{};
  JpegErrorSink sink;
  bool created = false;

  ~JpegReadState() {
    if (created) jpeg_destroy_decompress(&cinfo);
  }
};

bool jpeg_read_header_phase(JpegReadState& s, std::FILE* fp, RasterHeader& out) {
  s.cinfo.err = jpeg_std_error(&s.sink.mgr);
  s.sink.mgr.error_exit = jpeg_error_to_sink;
  if (setjmp(s.sink.jump)) return false;
  jpeg_create_decompress(&s.cinfo);
  s.created = true;
  jpeg_stdio_src(&s.cinfo, fp);
  jpeg_read_header(&s.cinfo, TRUE);
  s.cinfo.out_color_space = s.cinfo.num_components == 1 ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_start_decompress(&s.cinfo);
  out.width = static_cast<int>(s.cinfo.output_width);
  out.height = static_cast<int>(s.cinfo.output_height);
  out.channels = s.cinfo.output_components;
  out.bit_depth = 8;
  return true;
}

bool jpeg_read_body(JpegReadState& s, JSAMPLE* raw, std::size_t stride) {
  if (setjmp(s.sink.jump)) return false;
  while (s.cinfo.output_scanline < s.cinfo.output_height) {
    JSAMPROW row = raw + stride * s.cinfo.output_scanline;
    jpeg_read_scanlines(&s.cinfo, &row, 1);
  }
  jpeg_finish_decompress(&s.cinfo);
  return true;
}

DecodedImage decode_jpeg(const fs::path& path) {
  FilePtr fp = open_file(path, "rb");
  JpegReadState state;
  RasterHeader h{};
  if (!jpeg_read_header_phase(state, fp.get(), h)) {
    throw IoError(fmt::format("cannot decode JPEG '{}': {}", path.string(), state.sink.message));
  }
  const std::size_t stride = static_cast<std::size_t>(h.width) * h.channels;
  std::vector<JSAMPLE> raw(stride * h.height);
  if (!jpeg_read_body(state, raw.data(), stride)) {
    throw IoError(fmt::format("cannot decode JPEG '{}': {}", path.string(), state.sink.message));
  }
  DecodedImage img{h.width, h.height, h.channels, 8, {}};
  img.samples.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) img.samples[i] = raw[i] / 255.0f;
  return img;
}

// --------------------------------------------------------------- PNG write

struct PngWriteState {
  png_structp png = nullptr;
  png_infop info = nullptr;
  PngErrorSink sink;

  ~PngWriteState() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
  }
};

bool png_write_all(PngWriteState& s, std::FILE* fp, int width, int height, int color_type,
                   int bit_depth, png_bytepp rows) {
  s.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &s.sink, png_error_to_sink,
                                  png_warning_ignore);
  if (!s.png) return false;
  s.info = png_create_info_struct(s.png);
  if (!s.info) return false;
  if (setjmp(s.sink.jump)) return false;
  png_init_io(s.png, fp);
  // Fixed encoder settings.
  png_set_compression_level(s.png, 6);
  png_set_filter(s.png, PNG_FILTER_TYPE_BASE, PNG_FILTER_SUB);
  png_set_IHDR(s.png, s.info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
               bit_depth, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(s.png, s.info);
  png_write_image(s.png, rows);
  png_write_end(s.png, nullptr);
  return true;
}

void write_png_bytes(const fs::path& path, int width, int height, int color_type, int bit_depth,
                     std::vector<png_byte>& raw) {
  const std::size_t stride = raw.size() / static_cast<std::size_t>(height);
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y) rows[y] = raw.data() + stride * y;
  FilePtr fp = open_file(path, "wb");
  PngWriteState state;
  if (!png_write_all(state, fp.get(), width, height, color_type, bit_depth, rows.data())) {
    throw IoError(fmt::format("cannot write PNG '{}': {}", path.string(), state.sink.message));
  }
  if (std::fflush(fp.get()) != 0) {
    throw IoError(fmt::format("cannot write PNG '{}': {}", path.string(), std::strerror(errno)));
  }
}

bool has_png_signature(const std::array<unsigned char, 8>& head) {
  return png_sig_cmp(head.data(), 0, head.size()) == 0;
}

}  // namespace

std::uint8_t quantize8(float v) noexcept {
  const float c = std::isnan(v) ? 0.0f : std::clamp(v, 0.0f, 1.0f);
  // nearbyint honours the default round-to-nearest-even mode.
  return static_cast<std::uint8_t>(std::nearbyint(static_cast<double>(c) * 255.0));
}

std::uint16_t quantize16(float v) noexcept {
  const float c = std::isnan(v) ? 0.0f : std::clamp(v, 0.0f, 1.0f);
  return static_cast<std::uint16_t>(std::nearbyint(static_cast<double>(c) * 65535.0));
}

DecodedImage decode_image(const fs::path& path) {
  std::array<unsigned char, 8> head{};
  {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
    in.read(reinterpret_cast<char*>(head.data()), head.size());
    if (in.gcount() < 3) throw IoError(fmt::format("'{}' is too short to be an image", path.string()));
  }
  if (has_png_signature(head)) return decode_png(path);
  if (head[0] == 0xFF && head[1] == 0xD8 && head[2] == 0xFF) return decode_jpeg(path);
  throw IoError(fmt::format("'{}' is neither PNG nor JPEG", path.string()));
}

ImageBuffer load_rgb(const fs::path& path) {
  const DecodedImage d = decode_image(path);
  ImageBuffer out(d.width, d.height);
  auto dst = out.mutable_data();
  const std::size_t pixels = static_cast<std::size_t>(d.width) * d.height;
  for (std::size_t p = 0; p < pixels; ++p) {
    const float* src = d.samples.data() + p * d.channels;
    for (int c = 0; c < 3; ++c) {
      dst[p * 3 + c] = d.channels >= 3 ? src[c] : src[0];
    }
  }
  return out;
}

AlphaMatte load_alpha(const fs::path& path) {
  const DecodedImage d = decode_image(path);
  const std::size_t pixels = static_cast<std::size_t>(d.width) * d.height;
  std::vector<float> values(pixels);
  for (std::size_t p = 0; p < pixels; ++p) values[p] = d.samples[p * d.channels];
  return AlphaMatte::clamped(d.width, d.height, std::move(values));
}

void write_png(const fs::path& path, const ImageBuffer& image) {
  const auto src = image.data();
  std::vector<png_byte> raw(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) raw[i] = quantize8(src[i]);
  write_png_bytes(path, image.width(), image.height(), PNG_COLOR_TYPE_RGB, 8, raw);
}

void write_png(const fs::path& path, const AlphaMatte& alpha, int bit_depth) {
  const auto src = alpha.data();
  std::vector<png_byte> raw;
  if (bit_depth == 8) {
    raw.resize(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) raw[i] = quantize8(src[i]);
  } else if (bit_depth == 16) {
    raw.resize(src.size() * 2);
    for (std::size_t i = 0; i < src.size(); ++i) {
      const std::uint16_t q = quantize16(src[i]);
      raw[2 * i] = static_cast<png_byte>(q >> 8);
      raw[2 * i + 1] = static_cast<png_byte>(q & 0xFF);
    }
  } else {
    throw ParameterError(fmt::format("alpha PNG bit depth must be 8 or 16, got {}", bit_depth));
  }
  write_png_bytes(path, alpha.width(), alpha.height(), PNG_COLOR_TYPE_GRAY, bit_depth, raw);
}

void write_png(const fs::path& path, const Trimap& trimap) {
  std::vector<png_byte> raw(trimap.shape().pixels());
  const auto labels = trimap.labels();
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = static_cast<png_byte>(labels[i]);
  write_png_bytes(path, trimap.width(), trimap.height(), PNG_COLOR_TYPE_GRAY, 8, raw);
}

}  // namespace matteforge
