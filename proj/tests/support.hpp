#pragma once

// Test-only helpers: random inputs and brute-force oracles that stay
// independent of the library code paths they check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "acutance/deadleaves.hpp"
#include "acutance/image.hpp"

namespace acut::testing {

inline Image random_image(int w, int h, int channels, std::uint64_t seed, double lo = 0.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> d(static_cast<std::size_t>(w) * h * channels);
  for (double& v : d) v = u(rng);
  return Image(w, h, channels, std::move(d));
}

inline GreyImage random_grey(int w, int h, std::uint64_t seed) {
  const auto img = random_image(w, h, 1, seed);
  return GreyImage(w, h, std::vector<double>(img.data().begin(), img.data().end()));
}

inline Image constant_image(int w, int h, int channels, double v) { return Image(w, h, channels, v); }

/// Direct O(N^4) forward DFT.
inline std::vector<std::complex<double>> brute_force_dft(const GreyImage& img) {
  const int w = img.width();
  const int h = img.height();
  std::vector<std::complex<double>> out(static_cast<std::size_t>(w) * h);
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      std::complex<double> acc = 0.0;
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          const double phase = -2.0 * std::numbers::pi * (static_cast<double>(u) * x / w + static_cast<double>(v) * y / h);
          acc += img.at(x, y) * std::polar(1.0, phase);
        }
      }
      out[static_cast<std::size_t>(v) * w + u] = acc;
    }
  }
  return out;
}

/// Ring of a bin by direct floating-point comparison against k^2 <= r^2 < (k+1)^2; -1 outside.
inline int naive_ring(int u, int v, int n) {
  const int i = u < n / 2 ? u : u - n;
  const int j = v < n / 2 ? v : v - n;
  const double r2 = static_cast<double>(i) * i + static_cast<double>(j) * j;
  for (int k = 0; k <= n / 2; ++k) {
    if (static_cast<double>(k) * k <= r2 && r2 < static_cast<double>(k + 1) * (k + 1)) return k;
  }
  return -1;
}

/// Per-ring mean, computed one ring at a time with a full scan per ring.
inline std::vector<double> naive_ring_means(const std::vector<double>& field, int n) {
  std::vector<double> means(static_cast<std::size_t>(n / 2) + 1, 0.0);
  for (int k = 0; k <= n / 2; ++k) {
    double sum = 0.0;
    int count = 0;
    for (int v = 0; v < n; ++v) {
      for (int u = 0; u < n; ++u) {
        if (naive_ring(u, v, n) != k) continue;
        sum += field[static_cast<std::size_t>(v) * n + u];
        ++count;
      }
    }
    means[static_cast<std::size_t>(k)] = count ? sum / count : 0.0;
  }
  return means;
}

/// Paints disks back to front (last drawn first) with plain overdraw.
inline Image paint_back_to_front(const std::vector<deadleaves::Disk>& disks, int w, int h, int channels) {
  Image img(w, h, channels, 0.0);
  for (auto it = disks.rbegin(); it != disks.rend(); ++it) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const double dx = x + 0.5 - it->cx;
        const double dy = y + 0.5 - it->cy;
        if (dx * dx + dy * dy > it->radius * it->radius) continue;
        for (int c = 0; c < channels; ++c) img.at(x, y, c) = it->color[static_cast<std::size_t>(c)];
      }
    }
  }
  return img;
}

/// Least-squares line fit; returns slope and R^2.
struct LineFit {
  double slope;
  double intercept;
  double r2;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (slope * x[i] + intercept);
    ss_res += e * e;
  }
  return {slope, intercept, 1.0 - ss_res / syy};
}

}  // namespace acut::testing
