#include "acutance/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace acut::kernels {

namespace {

constexpr double kRedWeight = 0.2126;
constexpr double kGreenWeight = 0.7152;
constexpr double kBlueWeight = 0.0722;

std::int64_t isqrt(std::int64_t v) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

inline int wrap(int i, int n) {
  i %= n;
  return i < 0 ? i + n : i;
}

inline double grey_of(const double* px) {
  return kRedWeight * px[0] + kGreenWeight * px[1] + kBlueWeight * px[2];
}

// One output sample of the horizontal pass.
inline double row_tap_sum(std::span<const double> in, int width, int channels, int x, int y, int c,
                          std::span<const double> taps) {
  const int r = static_cast<int>(taps.size() / 2);
  const std::size_t row = static_cast<std::size_t>(y) * width;
  double acc = 0.0;
  for (int t = -r; t <= r; ++t) {
    acc += taps[static_cast<std::size_t>(t + r)] * in[(row + wrap(x + t, width)) * channels + c];
  }
  return acc;
}

// One output sample of the vertical pass.
inline double col_tap_sum(std::span<const double> in, int width, int height, int channels, int x, int y, int c,
                          std::span<const double> taps) {
  const int r = static_cast<int>(taps.size() / 2);
  double acc = 0.0;
  for (int t = -r; t <= r; ++t) {
    const std::size_t yy = static_cast<std::size_t>(wrap(y + t, height));
    acc += taps[static_cast<std::size_t>(t + r)] * in[(yy * width + x) * channels + c];
  }
  return acc;
}

inline void cross_ratio_bin(const Complex& x, const Complex& y, double threshold, double& value,
                            std::uint8_t& valid) {
  const double power = std::norm(x);
  if (power > threshold) {
    value = std::abs(y * std::conj(x)) / power;
    valid = 1;
  } else {
    value = 0.0;
    valid = 0;
  }
}

double median_at(std::span<const double> in, int width, int height, int channels, int x, int y, int c,
                 int window, std::vector<double>& scratch) {
  const int r = window / 2;
  scratch.clear();
  for (int dy = -r; dy <= r; ++dy) {
    const std::size_t yy = static_cast<std::size_t>(wrap(y + dy, height));
    for (int dx = -r; dx <= r; ++dx) {
      scratch.push_back(in[(yy * width + wrap(x + dx, width)) * channels + c]);
    }
  }
  auto mid = scratch.begin() + static_cast<std::ptrdiff_t>(scratch.size() / 2);
  std::nth_element(scratch.begin(), mid, scratch.end());
  return *mid;
}

}  // namespace

RingIndex::RingIndex(int n) : n_(n), ring_of_(static_cast<std::size_t>(n) * n, -1) {
  members_.resize(static_cast<std::size_t>(max_ring()) + 1);
  const std::int64_t limit = static_cast<std::int64_t>(max_ring()) + 1;
  for (int v = 0; v < n; ++v) {
    const std::int64_t j = signed_frequency(v, n);
    for (int u = 0; u < n; ++u) {
      const std::int64_t i = signed_frequency(u, n);
      const std::int64_t k = isqrt(i * i + j * j);
      if (k >= limit) continue;
      const std::size_t flat = static_cast<std::size_t>(v) * n + u;
      ring_of_[flat] = static_cast<int>(k);
      members_[static_cast<std::size_t>(k)].push_back(static_cast<std::uint32_t>(flat));
    }
  }
}

const RingIndex& RingIndex::for_size(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<RingIndex>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<RingIndex>(n);
  return *slot;
}

namespace serial {

void to_grey(std::span<const double> rgb, std::span<double> grey) {
  for (std::size_t p = 0; p < grey.size(); ++p) grey[p] = grey_of(&rgb[3 * p]);
}

void convolve_separable_periodic(std::span<const double> in, std::span<double> out, int width, int height,
                                 int channels, std::span<const double> taps) {
  std::vector<double> tmp(in.size());
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      for (int c = 0; c < channels; ++c)
        tmp[(static_cast<std::size_t>(y) * width + x) * channels + c] =
            row_tap_sum(in, width, channels, x, y, c, taps);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      for (int c = 0; c < channels; ++c)
        out[(static_cast<std::size_t>(y) * width + x) * channels + c] =
            col_tap_sum(tmp, width, height, channels, x, y, c, taps);
}

void cross_ratio(std::span<const Complex> ref, std::span<const Complex> test, double threshold,
                 std::span<double> values, std::span<std::uint8_t> valid) {
  for (std::size_t i = 0; i < ref.size(); ++i) cross_ratio_bin(ref[i], test[i], threshold, values[i], valid[i]);
}

void ring_means(const RingIndex& rings, std::span<const double> values, std::span<const std::uint8_t> valid,
                std::span<double> means, std::span<std::size_t> counts) {
  std::vector<double> sums(means.size(), 0.0);
  std::fill(counts.begin(), counts.end(), std::size_t{0});
  for (std::size_t i = 0; i < values.size(); ++i) {
    const int k = rings.ring_of(i);
    if (k < 0 || !valid[i]) continue;
    sums[static_cast<std::size_t>(k)] += values[i];
    ++counts[static_cast<std::size_t>(k)];
  }
  for (std::size_t k = 0; k < means.size(); ++k) {
    means[k] = counts[k] ? sums[k] / static_cast<double>(counts[k]) : 0.0;
  }
}

void median_periodic(std::span<const double> in, std::span<double> out, int width, int height, int channels,
                     int window) {
  std::vector<double> scratch;
  scratch.reserve(static_cast<std::size_t>(window) * window);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      for (int c = 0; c < channels; ++c)
        out[(static_cast<std::size_t>(y) * width + x) * channels + c] =
            median_at(in, width, height, channels, x, y, c, window, scratch);
}

}  // namespace serial

namespace omp {

void to_grey(std::span<const double> rgb, std::span<double> grey) {
  const auto n = static_cast<std::ptrdiff_t>(grey.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < n; ++p) grey[static_cast<std::size_t>(p)] = grey_of(&rgb[3 * static_cast<std::size_t>(p)]);
}

void convolve_separable_periodic(std::span<const double> in, std::span<double> out, int width, int height,
                                 int channels, std::span<const double> taps) {
  std::vector<double> tmp(in.size());
#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      for (int c = 0; c < channels; ++c)
        tmp[(static_cast<std::size_t>(y) * width + x) * channels + c] =
            row_tap_sum(in, width, channels, x, y, c, taps);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      for (int c = 0; c < channels; ++c)
        out[(static_cast<std::size_t>(y) * width + x) * channels + c] =
            col_tap_sum(tmp, width, height, channels, x, y, c, taps);
}

void cross_ratio(std::span<const Complex> ref, std::span<const Complex> test, double threshold,
                 std::span<double> values, std::span<std::uint8_t> valid) {
  const auto n = static_cast<std::ptrdiff_t>(ref.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto s = static_cast<std::size_t>(i);
    cross_ratio_bin(ref[s], test[s], threshold, values[s], valid[s]);
  }
}

void ring_means(const RingIndex& rings, std::span<const double> values, std::span<const std::uint8_t> valid,
                std::span<double> means, std::span<std::size_t> counts) {
  const int rings_to_fill = static_cast<int>(std::min<std::size_t>(means.size(), rings.max_ring() + 1));
  std::fill(means.begin(), means.end(), 0.0);
  std::fill(counts.begin(), counts.end(), std::size_t{0});
  // Members are stored in row-major order, so each ring sums in the same order as serial::.
#pragma omp parallel for schedule(dynamic, 4)
  for (int k = 0; k < rings_to_fill; ++k) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::uint32_t flat : rings.members(k)) {
      if (!valid[flat]) continue;
      sum += values[flat];
      ++count;
    }
    const auto kk = static_cast<std::size_t>(k);
    counts[kk] = count;
    means[kk] = count ? sum / static_cast<double>(count) : 0.0;
  }
}

void median_periodic(std::span<const double> in, std::span<double> out, int width, int height, int channels,
                     int window) {
#pragma omp parallel
  {
    std::vector<double> scratch;
    scratch.reserve(static_cast<std::size_t>(window) * window);
#pragma omp for schedule(static)
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x)
        for (int c = 0; c < channels; ++c)
          out[(static_cast<std::size_t>(y) * width + x) * channels + c] =
              median_at(in, width, height, channels, x, y, c, window, scratch);
  }
}

}  // namespace omp

}  // namespace acut::kernels
