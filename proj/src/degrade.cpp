#include "acutance/degrade.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "acutance/kernels.hpp"

namespace acut::degrade {

Image add_awgn(const Image& img, double sigma_255, std::uint64_t seed) {
  if (!(sigma_255 >= 0.0) || !std::isfinite(sigma_255)) throw DomainError("awgn: sigma must be >= 0");
  if (sigma_255 == 0.0) return img;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma_255 / 255.0);
  std::vector<double> out(img.data().begin(), img.data().end());
  for (double& v : out) v += noise(rng);
  return Image(img.width(), img.height(), img.channels(), std::move(out));
}

std::vector<double> gaussian_taps(double sigma_b) {
  if (!(sigma_b >= 0.0) || !std::isfinite(sigma_b)) throw DomainError("gaussian blur: sigma must be >= 0");
  if (sigma_b == 0.0) return {1.0};
  const int radius = static_cast<int>(std::ceil(4.0 * sigma_b));
  std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double v = std::exp(-0.5 * i * i / (sigma_b * sigma_b));
    taps[static_cast<std::size_t>(i + radius)] = v;
    sum += v;
  }
  for (double& t : taps) t /= sum;
  return taps;
}

Image gaussian_blur(const Image& img, double sigma_b) {
  const auto taps = gaussian_taps(sigma_b);
  if (taps.size() == 1) return img;
  std::vector<double> out(img.size());
  kernels::omp::convolve_separable_periodic(img.data(), out, img.width(), img.height(), img.channels(), taps);
  return Image(img.width(), img.height(), img.channels(), std::move(out));
}

Image unsharp_mask(const Image& img, double amount, double sigma_b) {
  if (!(amount >= 0.0) || !std::isfinite(amount)) throw DomainError("unsharp mask: amount must be >= 0");
  if (amount == 0.0) return img;
  return linear_combination(1.0 + amount, img, -amount, gaussian_blur(img, sigma_b));
}

Image median_filter(const Image& img, int window) {
  if (window < 1 || window % 2 == 0) throw DomainError("median filter: window must be a positive odd integer");
  if (window == 1) return img;
  std::vector<double> out(img.size());
  kernels::omp::median_periodic(img.data(), out, img.width(), img.height(), img.channels(), window);
  return Image(img.width(), img.height(), img.channels(), std::move(out));
}

Restorer reference_denoiser(const DenoiserKind& kind) {
  std::ostringstream name;
  switch (kind.filter) {
    case DenoiserKind::Filter::gaussian: {
      gaussian_taps(kind.sigma_b);  // validates sigma
      name << "gaussian(" << kind.sigma_b << ")";
      const double sigma = kind.sigma_b;
      return {name.str(), [sigma](const Image& img) { return gaussian_blur(img, sigma); }};
    }
    case DenoiserKind::Filter::median: {
      if (kind.window < 1 || kind.window % 2 == 0) throw DomainError("median denoiser: window must be odd");
      name << "median(" << kind.window << ")";
      const int window = kind.window;
      return {name.str(), [window](const Image& img) { return median_filter(img, window); }};
    }
  }
  throw DomainError("unknown denoiser kind");
}

}  // namespace acut::degrade
