#include "cli/png_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <vector>

namespace acut::io {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void png_error_handler(png_structp png, png_const_charp message) {
  auto* buffer = static_cast<std::string*>(png_get_error_ptr(png));
  if (buffer) *buffer = message;
  png_longjmp(png, 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

}  // namespace

Image read_png(const std::filesystem::path& path, PngInfo* info) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) throw IoError("cannot open " + path.string());

  png_byte signature[8];
  if (std::fread(signature, 1, 8, file.get()) != 8 || png_sig_cmp(signature, 0, 8) != 0) {
    throw IoError(path.string() + " is not a PNG file");
  }

  std::string error;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &error, png_error_handler, png_warning_handler);
  if (!png) throw IoError("libpng: cannot allocate read struct");
  png_infop png_info = png_create_info_struct(png);
  if (!png_info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("libpng: cannot allocate info struct");
  }

  std::vector<std::uint8_t> pixels;
  std::vector<png_bytep> rows;
  png_uint_32 width = 0, height = 0;
  int depth = 0, channels = 0;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &png_info, nullptr);
    throw IoError("failed decoding " + path.string() + ": " + error);
  }

  png_init_io(png, file.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, png_info);

  const int color_type = png_get_color_type(png, png_info);
  depth = png_get_bit_depth(png, png_info);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, png_info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color_type & PNG_COLOR_MASK_ALPHA || png_get_valid(png, png_info, PNG_INFO_tRNS)) png_set_strip_alpha(png);
  if (depth == 16) png_set_swap(png);  // host little-endian 16-bit samples
  png_read_update_info(png, png_info);

  width = png_get_image_width(png, png_info);
  height = png_get_image_height(png, png_info);
  depth = png_get_bit_depth(png, png_info);
  channels = png_get_channels(png, png_info);
  const std::size_t row_bytes = png_get_rowbytes(png, png_info);
  pixels.resize(row_bytes * height);
  rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) rows[y] = pixels.data() + y * row_bytes;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &png_info, nullptr);

  if (channels != 1 && channels != 3) throw IoError(path.string() + ": unsupported channel layout");
  if (info) info->bit_depth = depth;

  const std::size_t samples = static_cast<std::size_t>(width) * height * channels;
  std::vector<double> data(samples);
  if (depth == 16) {
    for (std::size_t i = 0; i < samples; ++i) {
      std::uint16_t v;
      std::memcpy(&v, pixels.data() + 2 * i, 2);
      data[i] = v / 65535.0;
    }
  } else {
    for (std::size_t i = 0; i < samples; ++i) data[i] = pixels[i] / 255.0;
  }
  return Image(static_cast<int>(width), static_cast<int>(height), channels, std::move(data));
}

void write_png(const std::filesystem::path& path, const Image& img, int bit_depth) {
  if (bit_depth != 8 && bit_depth != 16) throw DomainError("PNG bit depth must be 8 or 16");
  const auto clean = clipped(img);
  const double max_value = bit_depth == 16 ? 65535.0 : 255.0;
  const int bytes_per_sample = bit_depth / 8;
  const std::size_t row_bytes = static_cast<std::size_t>(img.width()) * img.channels() * bytes_per_sample;
  std::vector<std::uint8_t> pixels(row_bytes * img.height());
  const auto values = clean.data();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto q = static_cast<std::uint32_t>(std::lround(values[i] * max_value));
    if (bit_depth == 16) {
      pixels[2 * i] = static_cast<std::uint8_t>(q >> 8);  // PNG stores big-endian
      pixels[2 * i + 1] = static_cast<std::uint8_t>(q & 0xff);
    } else {
      pixels[i] = static_cast<std::uint8_t>(q);
    }
  }

  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) throw IoError("cannot open " + path.string() + " for writing");

  std::string error;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &error, png_error_handler, png_warning_handler);
  if (!png) throw IoError("libpng: cannot allocate write struct");
  png_infop png_info = png_create_info_struct(png);
  if (!png_info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("libpng: cannot allocate info struct");
  }
  std::vector<png_bytep> rows(static_cast<std::size_t>(img.height()));
  for (int y = 0; y < img.height(); ++y) rows[static_cast<std::size_t>(y)] = pixels.data() + y * row_bytes;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &png_info);
    throw IoError("failed encoding " + path.string() + ": " + error);
  }
  png_init_io(png, file.get());
  png_set_compression_level(png, 6);
  png_set_IHDR(png, png_info, static_cast<png_uint_32>(img.width()), static_cast<png_uint_32>(img.height()),
               bit_depth, img.channels() == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, png_info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &png_info);
  if (std::fflush(file.get()) != 0) throw IoError("failed writing " + path.string());
}

bool has_rawf_magic(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[4] = {};
  if (!in) throw IoError("cannot open " + path.string());
  return in.read(magic, 4) && std::memcmp(magic, "RAWF", 4) == 0;
}

}  // namespace acut::io
