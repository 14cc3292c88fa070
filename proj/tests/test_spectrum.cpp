#include <doctest.h>

#include <cmath>
#include <numbers>

#include "acutance/deadleaves.hpp"
#include "acutance/degrade.hpp"
#include "acutance/kernels.hpp"
#include "acutance/spectrum.hpp"
#include "support.hpp"

using namespace acut;
using spectrum::Field2D;

namespace {

GreyImage grey_target(int n, std::uint64_t seed) {
  auto p = deadleaves::Params::square(n, seed);
  return to_grey(deadleaves::generate(p));
}

// DFT of a centred 1-D tap vector at integer frequency u on an n-periodic grid.
double taps_response(const std::vector<double>& taps, int u, int n) {
  const int r = static_cast<int>(taps.size() / 2);
  double acc = 0.0;
  for (int t = -r; t <= r; ++t) acc += taps[static_cast<std::size_t>(t + r)] * std::cos(2.0 * std::numbers::pi * u * t / n);
  return acc;
}

}  // namespace

TEST_CASE("dft2 of a constant has all energy at DC") {
  const GreyImage c(8, 8, 0.25);
  const auto s = spectrum::dft2(c);
  CHECK(s.at(0, 0).real() == doctest::Approx(16.0).epsilon(1e-14));
  for (int v = 0; v < 8; ++v)
    for (int u = 0; u < 8; ++u)
      if (u || v) CHECK(std::abs(s.at(u, v)) < 1e-12);
}

TEST_CASE("dft2 of a horizontal cosine peaks at the two conjugate bins") {
  const int n = 32;
  std::vector<double> d(n * n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) d[static_cast<std::size_t>(y) * n + x] = std::cos(2.0 * std::numbers::pi * 4 * x / n);
  const auto s = spectrum::dft2(GreyImage(n, n, d));
  CHECK(s.at(4, 0).real() == doctest::Approx(n * n / 2.0).epsilon(1e-12));
  CHECK(s.at(n - 4, 0).real() == doctest::Approx(n * n / 2.0).epsilon(1e-12));
  double rest = 0.0;
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < n; ++u)
      if (!(v == 0 && (u == 4 || u == n - 4))) rest = std::max(rest, std::abs(s.at(u, v)));
  CHECK(rest < 1e-9);
}

TEST_CASE("dft2 agrees with the direct summation") {
  const auto img = testing::random_grey(16, 16, 42);
  const auto fast = spectrum::dft2(img);
  const auto slow = testing::brute_force_dft(img);
  double worst = 0.0;
  for (std::size_t i = 0; i < slow.size(); ++i) worst = std::max(worst, std::abs(fast.bins()[i] - slow[i]));
  CHECK(worst < 1e-10);
}

TEST_CASE("idft2 inverts dft2") {
  const auto img = testing::random_grey(24, 24, 3);
  const auto back = spectrum::idft2(spectrum::dft2(img));
  for (std::size_t i = 0; i < img.size(); ++i) CHECK(std::abs(back.data()[i] - img.data()[i]) < 1e-13);
}

TEST_CASE("non-square inputs are rejected") {
  CHECK_THROWS_AS(spectrum::dft2(GreyImage(8, 4, 0.0)), DomainError);
  CHECK_THROWS_AS(spectrum::measure_mtf(GreyImage(8, 4, 0.0), GreyImage(8, 4, 0.0)), DomainError);
  CHECK_THROWS_AS(spectrum::measure_mtf(GreyImage(8, 8, 0.0), GreyImage(16, 16, 0.0)), DomainError);
}

TEST_CASE("mtf_cross_2d: identity, gain and the blur transfer function") {
  const int n = 64;
  const auto x = grey_target(n, 9);
  const auto sx = spectrum::dft2(x);

  const auto same = spectrum::mtf_cross_2d(sx, sx);
  const auto twice = spectrum::mtf_cross_2d(sx, spectrum::dft2(GreyImage(n, n, [&] {
                                             std::vector<double> d(x.data().begin(), x.data().end());
                                             for (double& v : d) v *= 2.0;
                                             return d;
                                           }())));
  for (std::size_t i = 0; i < same.values.size(); ++i) {
    if (!same.valid[i]) continue;
    CHECK(same.values[i] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(twice.values[i] == doctest::Approx(2.0).epsilon(1e-12));
  }

  // Periodic blur multiplies each bin by the kernel's own DFT.
  const double sigma = 1.0;
  const auto blurred = to_grey(degrade::gaussian_blur(x.to_image(), sigma));
  const auto field = spectrum::mtf_cross_2d(sx, spectrum::dft2(blurred));
  const auto taps = degrade::gaussian_taps(sigma);
  const int u = n / 4;  // 0.25 cycles/pixel
  REQUIRE(field.valid[static_cast<std::size_t>(u)]);
  CHECK(field.at(u, 0) == doctest::Approx(taps_response(taps, u, n)).epsilon(1e-9));
  const double continuous = std::exp(-2.0 * std::numbers::pi * std::numbers::pi * sigma * sigma * 0.0625);
  CHECK(continuous == doctest::Approx(0.29121293321402086).epsilon(1e-12));
  CHECK(std::abs(field.at(u, 0) - continuous) < 1e-4);
}

TEST_CASE("bins below the relative power threshold are excluded") {
  std::vector<spectrum::Complex> x(16, {0.0, 0.0}), y(16, {1.0, 0.0});
  x[0] = {4.0, 0.0};
  x[5] = {1e-8, 0.0};
  const spectrum::Spectrum2D sx(4, 4, x), sy(4, 4, y);
  const auto field = spectrum::mtf_cross_2d(sx, sy, 1e-12);
  CHECK(field.valid[0] == 1);
  CHECK(field.valid[5] == 0);
  CHECK(field.values[5] == 0.0);
  CHECK(spectrum::mtf_cross_2d(sx, sy, 0.0).valid[5] == 1);
}

TEST_CASE("ring_average of a constant field is constant") {
  for (int n : {8, 15, 64}) {
    const auto curve = spectrum::ring_average(Field2D::filled(n, 0.75));
    CHECK(curve.max_ring() == n / 2);
    for (int k = 1; k <= curve.max_ring(); ++k) CHECK(curve.at(k) == 0.75);
    CHECK(curve.frequency(curve.max_ring()) == doctest::Approx(static_cast<double>(n / 2) / n));
  }
}

TEST_CASE("ring cardinalities match direct enumeration") {
  for (int n : {8, 16, 32}) {
    const auto& rings = kernels::RingIndex::for_size(n);
    std::size_t assigned = 0;
    for (int k = 0; k <= n / 2; ++k) {
      std::size_t count = 0;
      for (int j = -n / 2; j < n / 2; ++j)
        for (int i = -n / 2; i < n / 2; ++i) {
          const int r2 = i * i + j * j;
          if (k * k <= r2 && r2 < (k + 1) * (k + 1)) ++count;
        }
      CHECK(rings.members(k).size() == count);
      assigned += count;
    }
    // Only corner bins beyond the last ring stay unassigned.
    std::size_t corners = 0;
    for (int j = -n / 2; j < n / 2; ++j)
      for (int i = -n / 2; i < n / 2; ++i)
        if (i * i + j * j >= (n / 2 + 1) * (n / 2 + 1)) ++corners;
    CHECK(assigned + corners == static_cast<std::size_t>(n) * n);
  }
  // For N = 16, rings 1..7 hold exactly the nonzero bins with r^2 < 64.
  const auto& rings16 = kernels::RingIndex::for_size(16);
  std::size_t inner = 0, enumerated = 0;
  for (int k = 1; k <= 7; ++k) inner += rings16.members(k).size();
  for (int j = -8; j < 8; ++j)
    for (int i = -8; i < 8; ++i)
      if (i * i + j * j > 0 && i * i + j * j < 64) ++enumerated;
  CHECK(inner == enumerated);
}

TEST_CASE("ring_average matches the naive per-pixel oracle") {
  for (int n : {8, 16, 32}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto img = testing::random_image(n, n, 1, seed * 31 + static_cast<std::uint64_t>(n));
      Field2D field{n, std::vector<double>(img.data().begin(), img.data().end()),
                    std::vector<std::uint8_t>(img.size(), 1)};
      const auto curve = spectrum::ring_average(field);
      const auto oracle = testing::naive_ring_means(field.values, n);
      CHECK(std::abs(curve.dc() - oracle[0]) <= 1e-12);
      for (int k = 1; k <= n / 2; ++k) CHECK(std::abs(curve.at(k) - oracle[static_cast<std::size_t>(k)]) <= 1e-12);
    }
  }
}

TEST_CASE("measure_mtf: identity, gain and circular shift") {
  const int n = 128;
  const auto x = grey_target(n, 4);
  const auto same = spectrum::measure_mtf(x, x);
  for (double v : same.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<double> scaled(x.data().begin(), x.data().end());
  for (double& v : scaled) v *= 0.5;
  const auto half = spectrum::measure_mtf(x, GreyImage(n, n, scaled));
  for (double v : half.values()) CHECK(v == doctest::Approx(0.5).epsilon(1e-12));

  // A circular shift only changes phase, which the cross magnitude ignores.
  std::vector<double> shifted(x.size());
  for (int y = 0; y < n; ++y)
    for (int xx = 0; xx < n; ++xx)
      shifted[static_cast<std::size_t>((y + 5) % n) * n + (xx + 11) % n] = x.at(xx, y);
  const auto moved = spectrum::measure_mtf(x, GreyImage(n, n, shifted));
  for (double v : moved.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-10));

  spectrum::MeasureOptions opts;
  opts.order = spectrum::RingOrder::mean_then_ratio;
  const auto by_means = spectrum::measure_mtf(x, x, opts);
  for (double v : by_means.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  opts.hann_window = true;
  const auto windowed = spectrum::measure_mtf(x, x, opts);
  for (double v : windowed.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("AWGN never lowers the measured MTF below one on average") {
  const int n = 256;
  const auto target = deadleaves::generate(deadleaves::Params::square(n, 77));
  std::vector<double> sum(static_cast<std::size_t>(n / 2), 0.0);
  const int seeds = 20;
  for (int s = 0; s < seeds; ++s) {
    const auto noisy = degrade::add_awgn(target, 25.0, static_cast<std::uint64_t>(1000 + s));
    const auto curve = spectrum::measure_mtf(target, noisy);
    for (int k = 1; k <= n / 2; ++k) sum[static_cast<std::size_t>(k - 1)] += curve.at(k);
  }
  double lowest = 1e300;
  for (double v : sum) lowest = std::min(lowest, v / seeds);
  MESSAGE("lowest seed-averaged ring value " << lowest);
  CHECK(lowest >= 0.99);
}

TEST_CASE("blurred target follows the Gaussian transfer function") {
  const int n = 512;
  const double sigma = 1.0;
  const auto target = deadleaves::generate(deadleaves::Params::square(n, 5));
  const auto curve = spectrum::measure_mtf(target, degrade::gaussian_blur(target, sigma));
  double ss = 0.0;
  int count = 0;
  for (int k = 1; k <= curve.max_ring(); ++k) {
    const double f = curve.frequency(k);
    if (f > 0.2) break;
    const double expected = std::exp(-2.0 * std::numbers::pi * std::numbers::pi * sigma * sigma * f * f);
    ss += (curve.at(k) - expected) * (curve.at(k) - expected);
    ++count;
  }
  const double rms = std::sqrt(ss / count);
  MESSAGE("blur RMS " << rms);
  CHECK(rms < 0.03);
}
