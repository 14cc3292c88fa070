#include "acutance/spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "acutance/kernels.hpp"

namespace acut::spectrum {

namespace {

// FFTW's planner is not thread-safe; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void transform(std::vector<Complex>& data, int width, int height, int sign) {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_2d(height, width, buf, buf, sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw DomainError("dft2: FFTW could not plan a " + std::to_string(width) + "x" +
                                         std::to_string(height) + " transform");
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

GreyImage hann_windowed(const GreyImage& img) {
  const int n = img.width();
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / n);
  std::vector<double> out(img.data().begin(), img.data().end());
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x)
      out[static_cast<std::size_t>(y) * n + x] *= w[static_cast<std::size_t>(x)] * w[static_cast<std::size_t>(y)];
  return GreyImage(n, n, std::move(out));
}

void require_square(const GreyImage& img, const char* what) {
  if (!img.is_square()) {
    throw DomainError(std::string(what) + ": image must be square, got " + std::to_string(img.width()) + "x" +
                      std::to_string(img.height()));
  }
}

void require_matched(const Spectrum2D& a, const Spectrum2D& b) {
  if (a.width() != b.width() || a.height() != b.height()) throw DomainError("mtf_cross_2d: spectrum shape mismatch");
  if (a.width() != a.height()) throw DomainError("mtf_cross_2d: spectra must be square");
}

double power_threshold(const Spectrum2D& ref, double rel_eps) {
  double peak = 0.0;
  for (const auto& c : ref.bins()) peak = std::max(peak, std::norm(c));
  return rel_eps * peak;
}

MtfCurve curve_from_ring_means(int n, std::span<const double> means) {
  std::vector<double> values(means.begin() + 1, means.end());
  return MtfCurve(n, means[0], std::move(values));
}

MtfCurve mean_then_ratio(const Spectrum2D& ref, const Spectrum2D& test, double rel_eps) {
  const int n = ref.width();
  const auto& rings = kernels::RingIndex::for_size(n);
  const std::size_t bins = ref.bins().size();
  const double threshold = power_threshold(ref, rel_eps);
  std::vector<double> cross(bins), power(bins);
  std::vector<std::uint8_t> valid(bins);
  for (std::size_t i = 0; i < bins; ++i) {
    const Complex& x = ref.bins()[i];
    power[i] = std::norm(x);
    cross[i] = std::abs(test.bins()[i] * std::conj(x));
    valid[i] = power[i] > threshold;
  }
  const std::size_t k_count = static_cast<std::size_t>(rings.max_ring()) + 1;
  std::vector<double> cross_mean(k_count), power_mean(k_count);
  std::vector<std::size_t> counts(k_count);
  kernels::omp::ring_means(rings, cross, valid, cross_mean, counts);
  kernels::omp::ring_means(rings, power, valid, power_mean, counts);
  std::vector<double> ratio(k_count);
  for (std::size_t k = 0; k < k_count; ++k) ratio[k] = counts[k] ? cross_mean[k] / power_mean[k] : 0.0;
  return curve_from_ring_means(n, ratio);
}

}  // namespace

Spectrum2D::Spectrum2D(int width, int height, std::vector<Complex> bins)
    : width_(width), height_(height), bins_(std::move(bins)) {
  if (bins_.size() != static_cast<std::size_t>(width) * height) throw DomainError("Spectrum2D: size mismatch");
}

Field2D Field2D::filled(int n, double value) {
  const auto bins = static_cast<std::size_t>(n) * n;
  return Field2D{n, std::vector<double>(bins, value), std::vector<std::uint8_t>(bins, 1)};
}

MtfCurve::MtfCurve(int n, double dc, std::vector<double> values) : n_(n), dc_(dc), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != n / 2) throw DomainError("MtfCurve: expected floor(n/2) ring values");
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) throw DomainError("MtfCurve: values must be finite and non-negative");
  }
}

Spectrum2D dft2(const GreyImage& img) {
  require_square(img, "dft2");
  std::vector<Complex> data(img.data().begin(), img.data().end());
  transform(data, img.width(), img.height(), FFTW_FORWARD);
  return Spectrum2D(img.width(), img.height(), std::move(data));
}

GreyImage idft2(const Spectrum2D& spectrum) {
  std::vector<Complex> data(spectrum.bins().begin(), spectrum.bins().end());
  transform(data, spectrum.width(), spectrum.height(), FFTW_BACKWARD);
  const double scale = 1.0 / (static_cast<double>(spectrum.width()) * spectrum.height());
  std::vector<double> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = data[i].real() * scale;
  return GreyImage(spectrum.width(), spectrum.height(), std::move(out));
}

Field2D mtf_cross_2d(const Spectrum2D& ref, const Spectrum2D& test, double rel_eps) {
  require_matched(ref, test);
  if (!(rel_eps >= 0.0)) throw DomainError("mtf_cross_2d: eps must be non-negative");
  Field2D field;
  field.n = ref.width();
  field.values.resize(ref.bins().size());
  field.valid.resize(ref.bins().size());
  kernels::omp::cross_ratio(ref.bins(), test.bins(), power_threshold(ref, rel_eps), field.values, field.valid);
  return field;
}

MtfCurve ring_average(const Field2D& field) {
  const auto bins = static_cast<std::size_t>(field.n) * field.n;
  if (field.n <= 0 || field.values.size() != bins || field.valid.size() != bins) {
    throw DomainError("ring_average: field must be square with a matching validity mask");
  }
  const auto& rings = kernels::RingIndex::for_size(field.n);
  const std::size_t k_count = static_cast<std::size_t>(rings.max_ring()) + 1;
  std::vector<double> means(k_count);
  std::vector<std::size_t> counts(k_count);
  kernels::omp::ring_means(rings, field.values, field.valid, means, counts);
  return curve_from_ring_means(field.n, means);
}

std::vector<double> radial_power_spectrum(const GreyImage& img) {
  const auto spec = dft2(img);
  const auto& rings = kernels::RingIndex::for_size(spec.width());
  std::vector<double> power(spec.bins().size());
  for (std::size_t i = 0; i < power.size(); ++i) power[i] = std::norm(spec.bins()[i]);
  const std::vector<std::uint8_t> valid(power.size(), 1);
  const std::size_t k_count = static_cast<std::size_t>(rings.max_ring()) + 1;
  std::vector<double> means(k_count);
  std::vector<std::size_t> counts(k_count);
  kernels::omp::ring_means(rings, power, valid, means, counts);
  return {means.begin() + 1, means.end()};
}

MtfCurve measure_mtf(const GreyImage& ref, const GreyImage& test, const MeasureOptions& options) {
  require_square(ref, "measure_mtf");
  if (ref.width() != test.width() || ref.height() != test.height()) {
    throw DomainError("measure_mtf: reference and test sizes differ");
  }
  const auto ref_spec = dft2(options.hann_window ? hann_windowed(ref) : ref);
  const auto test_spec = dft2(options.hann_window ? hann_windowed(test) : test);
  if (options.order == RingOrder::mean_then_ratio) return mean_then_ratio(ref_spec, test_spec, options.rel_eps);
  return ring_average(mtf_cross_2d(ref_spec, test_spec, options.rel_eps));
}

MtfCurve measure_mtf(const Image& ref, const Image& test, const MeasureOptions& options) {
  require_same_shape(ref, test, "measure_mtf");
  return measure_mtf(to_grey(ref), to_grey(test), options);
}

}  // namespace acut::spectrum
