// Serial reference kernels against their OpenMP counterparts on 512^2 inputs.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "acutance/degrade.hpp"
#include "acutance/kernels.hpp"

namespace k = acut::kernels;

namespace {

constexpr int kSide = 512;

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

std::vector<k::Complex> complex_noise(std::size_t n, std::uint64_t seed) {
  const auto re = noise(n, seed);
  const auto im = noise(n, seed + 1);
  std::vector<k::Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = {re[i], im[i]};
  return v;
}

constexpr std::size_t kPixels = static_cast<std::size_t>(kSide) * kSide;

template <auto Fn>
void BM_ToGrey(benchmark::State& state) {
  const auto rgb = noise(3 * kPixels, 1);
  std::vector<double> grey(kPixels);
  for (auto _ : state) {
    Fn(rgb, grey);
    benchmark::DoNotOptimize(grey.data());
  }
}

template <auto Fn>
void BM_Blur(benchmark::State& state) {
  const auto img = noise(3 * kPixels, 2);
  const auto taps = acut::degrade::gaussian_taps(2.0);
  std::vector<double> out(img.size());
  for (auto _ : state) {
    Fn(img, out, kSide, kSide, 3, taps);
    benchmark::DoNotOptimize(out.data());
  }
}

template <auto Fn>
void BM_CrossRatio(benchmark::State& state) {
  const auto x = complex_noise(kPixels, 3);
  const auto y = complex_noise(kPixels, 5);
  std::vector<double> values(kPixels);
  std::vector<std::uint8_t> valid(kPixels);
  for (auto _ : state) {
    Fn(x, y, 1e-12, values, valid);
    benchmark::DoNotOptimize(values.data());
  }
}

template <auto Fn>
void BM_RingMeans(benchmark::State& state) {
  const auto& rings = k::RingIndex::for_size(kSide);
  const auto field = noise(kPixels, 7);
  const std::vector<std::uint8_t> valid(kPixels, 1);
  std::vector<double> means(kSide / 2 + 1);
  std::vector<std::size_t> counts(kSide / 2 + 1);
  for (auto _ : state) {
    Fn(rings, field, valid, means, counts);
    benchmark::DoNotOptimize(means.data());
  }
}

template <auto Fn>
void BM_Median(benchmark::State& state) {
  const auto img = noise(kPixels, 8);
  std::vector<double> out(img.size());
  for (auto _ : state) {
    Fn(img, out, kSide, kSide, 1, 5);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_ToGrey<k::serial::to_grey>)->Name("to_grey/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ToGrey<k::omp::to_grey>)->Name("to_grey/omp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Blur<k::serial::convolve_separable_periodic>)->Name("blur/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Blur<k::omp::convolve_separable_periodic>)->Name("blur/omp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CrossRatio<k::serial::cross_ratio>)->Name("cross_ratio/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrossRatio<k::omp::cross_ratio>)->Name("cross_ratio/omp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RingMeans<k::serial::ring_means>)->Name("ring_means/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RingMeans<k::omp::ring_means>)->Name("ring_means/omp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Median<k::serial::median_periodic>)->Name("median5/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Median<k::omp::median_periodic>)->Name("median5/omp")->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
