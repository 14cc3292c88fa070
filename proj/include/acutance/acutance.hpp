#pragma once

#include <optional>
#include <span>
#include <vector>

#include "acutance/image.hpp"
#include "acutance/spectrum.hpp"

namespace acut::acutance {

/// Viewing geometry used to map cycles/pixel onto cycles/degree.
struct ViewingConditions {
  double pixel_size_mm = 0.2;
  double distance_mm = 1000.0;

  void validate() const;
};

/// Angle subtended by one pixel: (180/pi) * atan(P / D).
double view_angle_deg(const ViewingConditions& v);

/// Cycles/degree of a digital frequency in [0, 0.5] cycles/pixel.
double digital_to_angular(double f_digital, const ViewingConditions& v);

/// Angular frequency of the 0.5 cycles/pixel Nyquist limit.
double nyquist_cpd(const ViewingConditions& v);

/// Approximate acuity limit of the human visual system, used by the optional cap.
inline constexpr double kVisualLimitCpd = 40.0;

struct CsfParams {
  double b = 0.2;
  double c = 0.8;
  /// Integrate only up to this angular frequency (e.g. kVisualLimitCpd). Unset: full Nyquist.
  std::optional<double> cap_cpd;

  void validate() const;
};

/// Trapezoid rule over samples (x_i, y_i); x must be increasing.
double trapezoid(std::span<const double> x, std::span<const double> y);

/**
 * CSF(nu) = a * nu^c * exp(-b nu), with `a` chosen so that the trapezoid
 * integral over the model's grid on [0, nyquist] equals one.
 */
class CsfModel {
 public:
  /// Normalized on a uniform grid with `intervals` steps over [0, nyquist_cpd].
  CsfModel(double b, double c, double nyquist_cpd, int intervals = 4096);

  /// Normalized on an arbitrary increasing grid starting at 0.
  static CsfModel on_grid(double b, double c, std::span<const double> grid_cpd);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double nyquist_cpd() const { return nyquist_; }
  std::span<const double> grid() const { return grid_; }

  double operator()(double nu) const { return a_ * shape(nu); }
  double shape(double nu) const;

 private:
  CsfModel() = default;
  void normalize();

  double a_ = 1.0;
  double b_ = 0.2;
  double c_ = 0.8;
  double nyquist_ = 0.0;
  std::vector<double> grid_;
};

double csf(double nu, const CsfModel& model);

/// One row per ring k = 0..K; row 0 is DC and carries zero CSF weight.
struct RingRow {
  int k;
  double f_digital;
  double f_angular;
  double mtf;
  double csf_weight;
};

struct AcutanceBreakdown {
  std::vector<RingRow> rows;
  double acutance = 0.0;
  double csf_normalizer = 0.0;
};

/**
 * Texture acutance: trapezoid integral of CSF(nu_k) * MTF(k) on the ring grid
 * nu_k = digital_to_angular(k/N). The CSF is normalized on the same grid, so a
 * flat unit MTF scores exactly 1.
 */
AcutanceBreakdown evaluate(const spectrum::MtfCurve& curve, const CsfParams& csf, const ViewingConditions& v);

double acutance_score(const spectrum::MtfCurve& curve, const CsfParams& csf = {}, const ViewingConditions& v = {});

/// |1 - A| of the restored image measured against the reference.
double acutance_loss(const Image& restored, const Image& ref, const CsfParams& csf = {},
                     const ViewingConditions& v = {}, const spectrum::MeasureOptions& options = {});

}  // namespace acut::acutance
