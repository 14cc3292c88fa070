#include "acutance/acutance.hpp"

#include <cmath>
#include <numbers>

namespace acut::acutance {

void ViewingConditions::validate() const {
  if (!(pixel_size_mm > 0.0) || !std::isfinite(pixel_size_mm)) throw DomainError("pixel size must be positive");
  if (!(distance_mm > 0.0) || !std::isfinite(distance_mm)) throw DomainError("viewing distance must be positive");
}

double view_angle_deg(const ViewingConditions& v) {
  v.validate();
  return 180.0 / std::numbers::pi * std::atan(v.pixel_size_mm / v.distance_mm);
}

double digital_to_angular(double f_digital, const ViewingConditions& v) {
  if (!(f_digital >= 0.0 && f_digital <= 0.5)) {
    throw DomainError("digital frequency must lie in [0, 0.5] cycles/pixel");
  }
  return f_digital / view_angle_deg(v);
}

double nyquist_cpd(const ViewingConditions& v) { return digital_to_angular(0.5, v); }

void CsfParams::validate() const {
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("CSF b must be positive");
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("CSF c must be positive");
  if (cap_cpd && !(*cap_cpd > 0.0)) throw DomainError("CSF cap must be positive");
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("trapezoid: sample count mismatch");
  double sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) sum += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return sum;
}

CsfModel::CsfModel(double b, double c, double nyquist_cpd, int intervals) : b_(b), c_(c), nyquist_(nyquist_cpd) {
  if (intervals < 1) throw DomainError("CSF grid needs at least one interval");
  if (!(nyquist_cpd > 0.0)) throw DomainError("CSF Nyquist must be positive");
  grid_.resize(static_cast<std::size_t>(intervals) + 1);
  for (int i = 0; i <= intervals; ++i) grid_[static_cast<std::size_t>(i)] = nyquist_cpd * i / intervals;
  normalize();
}

CsfModel CsfModel::on_grid(double b, double c, std::span<const double> grid_cpd) {
  if (grid_cpd.size() < 2 || grid_cpd.front() != 0.0) throw DomainError("CSF grid must start at 0 with >= 2 points");
  CsfModel m;
  m.b_ = b;
  m.c_ = c;
  m.grid_.assign(grid_cpd.begin(), grid_cpd.end());
  m.nyquist_ = m.grid_.back();
  m.normalize();
  return m;
}

double CsfModel::shape(double nu) const {
  if (nu < 0.0) throw DomainError("CSF frequency must be non-negative");
  if (nu == 0.0) return 0.0;
  return std::pow(nu, c_) * std::exp(-b_ * nu);
}

void CsfModel::normalize() {
  CsfParams{b_, c_, {}}.validate();
  std::vector<double> y(grid_.size());
  for (std::size_t i = 0; i < grid_.size(); ++i) y[i] = shape(grid_[i]);
  const double integral = trapezoid(grid_, y);
  if (!(integral > 0.0)) throw DomainError("CSF integral is not positive on the given grid");
  a_ = 1.0 / integral;
}

double csf(double nu, const CsfModel& model) { return model(nu); }

AcutanceBreakdown evaluate(const spectrum::MtfCurve& curve, const CsfParams& params, const ViewingConditions& v) {
  params.validate();
  v.validate();
  if (curve.max_ring() < 1) throw DomainError("acutance: curve has no rings");

  AcutanceBreakdown out;
  out.rows.push_back({0, 0.0, 0.0, curve.dc(), 0.0});
  for (int k = 1; k <= curve.max_ring(); ++k) {
    const double f = curve.frequency(k);
    const double nu = digital_to_angular(f, v);
    if (params.cap_cpd && nu > *params.cap_cpd * (1.0 + 1e-12)) break;
    out.rows.push_back({k, f, nu, curve.at(k), 0.0});
  }
  if (out.rows.size() < 2) throw DomainError("acutance: CSF cap excludes every ring");

  std::vector<double> grid(out.rows.size());
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = out.rows[i].f_angular;
  const auto model = CsfModel::on_grid(params.b, params.c, grid);
  out.csf_normalizer = model.a();

  std::vector<double> integrand(out.rows.size());
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    out.rows[i].csf_weight = model(out.rows[i].f_angular);
    integrand[i] = out.rows[i].csf_weight * out.rows[i].mtf;
  }
  out.acutance = trapezoid(grid, integrand);
  return out;
}

double acutance_score(const spectrum::MtfCurve& curve, const CsfParams& csf, const ViewingConditions& v) {
  return evaluate(curve, csf, v).acutance;
}

double acutance_loss(const Image& restored, const Image& ref, const CsfParams& csf, const ViewingConditions& v,
                     const spectrum::MeasureOptions& options) {
  return std::abs(1.0 - acutance_score(spectrum::measure_mtf(ref, restored, options), csf, v));
}

}  // namespace acut::acutance
