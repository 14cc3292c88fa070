#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "acutance/image.hpp"

namespace acut::deadleaves {

using Rgb = std::array<double, 3>;

enum class ColorMode { uniform_rgb, grey_uniform, palette };

std::string to_string(ColorMode mode);
ColorMode color_mode_from_string(const std::string& name);

struct Params {
  double alpha = 3.0;
  double r_min = 1.0;
  double r_max = 128.0;
  int width = 512;
  int height = 512;
  ColorMode color_mode = ColorMode::uniform_rgb;
  std::vector<Rgb> palette;
  std::uint64_t seed = 0;
  /// Abort generation after this many disks.
  std::uint64_t disk_budget = 10'000'000;

  /// Square target of side n with the default radius bounds r_min = 1, r_max = n/4.
  static Params square(int n, std::uint64_t seed = 0);

  /// Throws DomainError describing the first violated constraint.
  void validate() const;
};

struct Disk {
  double cx;
  double cy;
  double radius;
  Rgb color;
};

/// Inverse of the truncated power-law CDF F(r) on [r_min, r_max], pdf proportional to r^-alpha.
double radius_quantile(const Params& params, double u);

/// One radius draw via inverse-CDF sampling.
double sample_radius(const Params& params, std::mt19937_64& rng);

/// True iff the centre of pixel (x, y) lies within the closed disk.
inline bool covers(const Disk& d, int x, int y) {
  const double dx = x + 0.5 - d.cx;
  const double dy = y + 0.5 - d.cy;
  return dx * dx + dy * dy <= d.radius * d.radius;
}

struct Generated {
  Image image;
  /// Disks in draw order; the first disk lies on top.
  std::vector<Disk> disks;
};

/**
 * Dead leaves target: disks are drawn front to back and each one only paints
 * pixels that are still uncovered, until every pixel is covered.
 *
 * Grey mode yields a 1-channel image, the other modes 3 channels.
 * Throws DomainError when the disk budget runs out before full coverage.
 */
Image generate(const Params& params);

/// As generate(), also returning the disk sequence.
Generated generate_traced(const Params& params);

}  // namespace acut::deadleaves
