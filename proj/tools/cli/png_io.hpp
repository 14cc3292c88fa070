#pragma once

#include <filesystem>

#include "acutance/image.hpp"

namespace acut::io {

/// PNG files are display-referred: samples map to [0,1] by dividing by 2^depth - 1.
struct PngInfo {
  int bit_depth = 16;
};

/// Reads 8/16-bit grey, grey+alpha, RGB, RGBA or palette PNGs; alpha is dropped.
Image read_png(const std::filesystem::path& path, PngInfo* info = nullptr);

/// Clips to [0,1] and quantizes with round-to-nearest. bit_depth is 8 or 16.
void write_png(const std::filesystem::path& path, const Image& img, int bit_depth = 16);

bool has_rawf_magic(const std::filesystem::path& path);

}  // namespace acut::io
