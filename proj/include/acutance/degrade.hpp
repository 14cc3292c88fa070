#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "acutance/image.hpp"

namespace acut::degrade {

/// Noise std-devs are quoted on the 0..255 scale: sigma_255 = 25 adds N(0, (25/255)^2).
Image add_awgn(const Image& img, double sigma_255, std::uint64_t seed);

/// Normalized sampled Gaussian of radius ceil(4 sigma); {1} for sigma == 0.
std::vector<double> gaussian_taps(double sigma_b);

/// Periodic (circular) convolution with a normalized sampled Gaussian.
Image gaussian_blur(const Image& img, double sigma_b);

/// img + amount * (img - gaussian_blur(img, sigma_b)).
Image unsharp_mask(const Image& img, double amount, double sigma_b);

/// window x window median per channel, periodic borders. window must be odd.
Image median_filter(const Image& img, int window);

/// Stand-in for a restoration network: an image -> image map with a name.
struct Restorer {
  std::string name;
  std::function<Image(const Image&)> apply;

  Image operator()(const Image& img) const { return apply(img); }
};

struct DenoiserKind {
  enum class Filter { gaussian, median };
  Filter filter = Filter::gaussian;
  double sigma_b = 1.0;
  int window = 3;

  static DenoiserKind gaussian(double sigma_b) { return {Filter::gaussian, sigma_b, 3}; }
  static DenoiserKind median(int window) { return {Filter::median, 0.0, window}; }
};

Restorer reference_denoiser(const DenoiserKind& kind);

}  // namespace acut::degrade
