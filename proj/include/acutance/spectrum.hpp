#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "acutance/image.hpp"

namespace acut::spectrum {

using Complex = std::complex<double>;

/// Unnormalized forward DFT of a square grey image, DC at (0,0), row-major.
class Spectrum2D {
 public:
  Spectrum2D() = default;
  Spectrum2D(int width, int height, std::vector<Complex> bins);

  int width() const { return width_; }
  int height() const { return height_; }
  const Complex& at(int u, int v) const { return bins_[static_cast<std::size_t>(v) * width_ + u]; }
  std::span<const Complex> bins() const { return bins_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<Complex> bins_;
};

/// Real field over the DFT grid. Bins with valid == 0 are skipped by ring_average.
struct Field2D {
  int n = 0;
  std::vector<double> values;
  std::vector<std::uint8_t> valid;

  static Field2D filled(int n, double value);
  double at(int u, int v) const { return values[static_cast<std::size_t>(v) * n + u]; }
};

/// Ring-averaged MTF, values(k) for k = 1..floor(n/2) at digital frequency k/n.
class MtfCurve {
 public:
  MtfCurve() = default;
  MtfCurve(int n, double dc, std::vector<double> values);

  int n() const { return n_; }
  int max_ring() const { return static_cast<int>(values_.size()); }
  /// Value of ring k, 1 <= k <= max_ring().
  double at(int k) const { return values_.at(static_cast<std::size_t>(k - 1)); }
  /// Ratio at the DC bin; not part of the curve proper.
  double dc() const { return dc_; }
  double frequency(int k) const { return static_cast<double>(k) / n_; }
  std::span<const double> values() const { return values_; }

 private:
  int n_ = 0;
  double dc_ = 0.0;
  std::vector<double> values_;
};

Spectrum2D dft2(const GreyImage& img);

/// Inverse of dft2 (scaled by 1/N^2), keeping the real part.
GreyImage idft2(const Spectrum2D& spectrum);

/**
 * Per-bin |Y X*| / |X|^2. Bins with |X|^2 <= rel_eps * max|X|^2 are marked
 * invalid and left at 0.
 */
Field2D mtf_cross_2d(const Spectrum2D& ref, const Spectrum2D& test, double rel_eps = 1e-12);

/// Mean of the valid bins of each ring k = 1..N/2 (see kernels::RingIndex).
MtfCurve ring_average(const Field2D& field);

/// Ring means of |X|^2 for k = 1..N/2 (index 0 holds ring 1).
std::vector<double> radial_power_spectrum(const GreyImage& img);

enum class RingOrder {
  /// Ratio per bin, then ring mean.
  ratio_then_mean,
  /// Ring means of |phi_XY| and phi_XX, then their ratio. Less sensitive to noise.
  mean_then_ratio,
};

struct MeasureOptions {
  double rel_eps = 1e-12;
  /// Separable Hann window on both images before the DFT.
  bool hann_window = false;
  RingOrder order = RingOrder::ratio_then_mean;
};

/// to_grey -> dft2 -> mtf_cross_2d -> ring_average.
MtfCurve measure_mtf(const Image& ref, const Image& test, const MeasureOptions& options = {});
MtfCurve measure_mtf(const GreyImage& ref, const GreyImage& test, const MeasureOptions& options = {});

}  // namespace acut::spectrum
