#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "acutance/acutance.hpp"
#include "acutance/image.hpp"

namespace acut::raw {

/// White-balance gains (red, green shared by both green sites, blue).
struct WhiteBalance {
  double r = 1.0;
  double g = 1.0;
  double b = 1.0;

  void validate() const;
  friend bool operator==(const WhiteBalance&, const WhiteBalance&) = default;
};

/// Single-channel RGGB Bayer mosaic with even dimensions.
class RawImage {
 public:
  RawImage() = default;
  RawImage(int width, int height, std::vector<double> data, WhiteBalance wb = {});

  int width() const { return width_; }
  int height() const { return height_; }
  const WhiteBalance& wb() const { return wb_; }
  double at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }
  std::span<const double> data() const { return data_; }

  friend bool operator==(const RawImage&, const RawImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
  WhiteBalance wb_;
};

/// Half-resolution planes in order R, G1, G2, B.
struct PackedRggb {
  int width = 0;   // W/2
  int height = 0;  // H/2
  std::array<std::vector<double>, 4> planes;

  double at(int plane, int x, int y) const {
    return planes[static_cast<std::size_t>(plane)][static_cast<std::size_t>(y) * width + x];
  }
  friend bool operator==(const PackedRggb&, const PackedRggb&) = default;
};

PackedRggb pack_rggb(const RawImage& raw);
RawImage unpack_rggb(const PackedRggb& packed, const WhiteBalance& wb = {});

/// (g_r R + g_g G1 + g_g G2 + g_b B) / 4 per packed site.
GreyImage raw_to_grey(const PackedRggb& packed, const WhiteBalance& wb);

/// Samples each site's channel divided by its gain, clipped to [0,1].
RawImage mosaic_from_rgb(const Image& img, const WhiteBalance& wb);

/// Heteroscedastic Gaussian approximation: x + sqrt(shot_a x + read_b) * N(0,1).
RawImage add_poisson_gaussian(const RawImage& raw, double shot_a, double read_b, std::uint64_t seed);

inline constexpr double kDefaultShot = 0.01;
inline constexpr double kDefaultRead = 1e-4;

/// Acutance of test against ref computed on the white-balanced packed grey arrays.
double raw_acutance(const RawImage& ref, const RawImage& test, const acutance::CsfParams& csf = {},
                    const acutance::ViewingConditions& v = {}, const spectrum::MeasureOptions& options = {});

/**
 * RAWF container, little-endian throughout:
 *
 *   offset  size  field
 *        0     4  magic "RAWF"
 *        4     4  uint32 width
 *        8     4  uint32 height
 *       12     4  float32 g_r
 *       16     4  float32 g_g
 *       20     4  float32 g_b
 *       24     8  reserved, zero
 *       32  4*W*H float32 samples, row-major
 */
inline constexpr std::size_t kRawfHeaderSize = 32;

std::vector<std::uint8_t> encode_rawf(const RawImage& raw);
RawImage decode_rawf(std::span<const std::uint8_t> bytes);

void write_rawf(const std::filesystem::path& path, const RawImage& raw);
RawImage read_rawf(const std::filesystem::path& path);

}  // namespace acut::raw
