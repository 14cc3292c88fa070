#pragma once

// Data-parallel inner loops shared by the measurement modules.
//
// Each kernel exists twice: `serial::` is the straightforward reference used
// by the tests, `omp::` is the OpenMP version the public operations call.
// Both variants accumulate in the same order wherever a reduction is
// involved, so their outputs are bit-identical.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace acut::kernels {

using Complex = std::complex<double>;

/**
 * Assignment of the bins of an N x N DFT grid to unit-width frequency rings.
 *
 * Bin (u, v) gets signed coordinates i, j in [-N/2, N/2) and belongs to ring
 * k iff k^2 <= i^2 + j^2 < (k+1)^2. Ring 0 is the DC singleton; rings beyond
 * N/2 (the grid corners) are not tracked.
 */
class RingIndex {
 public:
  explicit RingIndex(int n);

  int n() const { return n_; }
  int max_ring() const { return n_ / 2; }

  /// Ring of the bin at flat row-major index, or -1 for corner bins.
  int ring_of(std::size_t flat) const { return ring_of_[flat]; }
  /// Flat indices belonging to ring k, in row-major order.
  std::span<const std::uint32_t> members(int k) const { return members_[static_cast<std::size_t>(k)]; }

  /// Shared, lazily built index for size n. Safe to call from several threads.
  static const RingIndex& for_size(int n);

 private:
  int n_;
  std::vector<int> ring_of_;
  std::vector<std::vector<std::uint32_t>> members_;
};

/// Signed frequency coordinate of DFT bin index u on an n-point axis.
inline int signed_frequency(int u, int n) { return u < (n + 1) / 2 ? u : u - n; }

namespace serial {

void to_grey(std::span<const double> rgb, std::span<double> grey);

/// Periodic convolution with a symmetric separable kernel, rows then columns.
/// `taps` has odd length 2r+1 and is centred.
void convolve_separable_periodic(std::span<const double> in, std::span<double> out, int width, int height,
                                 int channels, std::span<const double> taps);

/// |test * conj(ref)| / |ref|^2 on bins where |ref|^2 > threshold, 0 and invalid elsewhere.
void cross_ratio(std::span<const Complex> ref, std::span<const Complex> test, double threshold,
                 std::span<double> values, std::span<std::uint8_t> valid);

/// Per-ring sum and count of valid values; means[k] = sum/count, 0 for empty rings.
void ring_means(const RingIndex& rings, std::span<const double> values, std::span<const std::uint8_t> valid,
                std::span<double> means, std::span<std::size_t> counts);

/// Window x window median per channel with periodic borders. `window` is odd.
void median_periodic(std::span<const double> in, std::span<double> out, int width, int height, int channels,
                     int window);

}  // namespace serial

namespace omp {

void to_grey(std::span<const double> rgb, std::span<double> grey);
void convolve_separable_periodic(std::span<const double> in, std::span<double> out, int width, int height,
                                 int channels, std::span<const double> taps);
void cross_ratio(std::span<const Complex> ref, std::span<const Complex> test, double threshold,
                 std::span<double> values, std::span<std::uint8_t> valid);
void ring_means(const RingIndex& rings, std::span<const double> values, std::span<const std::uint8_t> valid,
                std::span<double> means, std::span<std::size_t> counts);
void median_periodic(std::span<const double> in, std::span<double> out, int width, int height, int channels,
                     int window);

}  // namespace omp

}  // namespace acut::kernels
