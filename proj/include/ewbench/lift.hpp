#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ewbench/curv.hpp"
#include "ewbench/ew.hpp"

namespace ewb {

/// Base structure in the gauge V = -2/l, a weight -1 solution psi, and l.
struct LiftConfig {
  EWStructure base;
  WeightedForm psi;
  double ell = 1.0;
};

/// psi = c omega on the base, gauge-fixed to V = -2/l first when `fix_gauge`.
LiftConfig make_lift(EWStructure base, double ell, double c, bool fix_gauge);

/// Throws GaugeViolation unless |V l + 2| <= gauge_tol, and
/// HypothesisViolation unless the psi residual is <= psi_tol, at every point.
void check_lift_hypotheses(const LiftConfig& cfg, std::span<const ChartPoint> base_points,
                           double gauge_tol = 1e-9, double psi_tol = 1e-7);

/// Chart (alpha, base...):
///   theta = l/sin(a) da - l/2 cos(a) omega + sqrt2 sin(a) psi,
///   g = theta^2 + h / sin^2(a),
///   A = sqrt2/2 sin(2a) psi - l/4 cos(2a) omega.
SpacetimeData build_alpha(const LiftConfig& cfg);

/// Chart (r, base...) from sin(a) = sech(r/l), cos(a) = tanh(r/l):
///   theta = -dr - l/2 tanh(r/l) omega + sqrt2 sech(r/l) psi,
///   g = theta^2 + cosh^2(r/l) h,
///   A = sqrt2 sech tanh psi - l/4 (tanh^2 - sech^2) omega.
SpacetimeData build_regular(const LiftConfig& cfg);

/// Image of a regular-chart point in the alpha chart.
ChartPoint alpha_point(const ChartPoint& regular, double ell);
/// d alpha / d r at a regular-chart point; the other coordinates are fixed.
double dalpha_dr(const ChartPoint& regular, double ell);

/// Lift sample points: `alpha` or `r` prepended to base points.
std::vector<ChartPoint> lift_points(std::span<const ChartPoint> base_points, bool alpha_chart,
                                    std::uint64_t seed);

/// g_lim = (dr + r/2 omega - sqrt2 psi)^2 + h on the regular chart, A = 0.
SpacetimeData limit_metric(const LiftConfig& cfg);

struct LimitStep {
  double ell = 0.0;
  double metric_error = 0.0;   // max |g(l) - g_lim(l)|
  double field_max = 0.0;      // max |F(l)|
  double field_limit = 0.0;    // max |l/4 d omega|
  double limit_riemann = 0.0;  // max |R^a_bcd| of g_lim(l)
};

struct LimitReport {
  std::vector<LimitStep> steps;
  std::vector<double> ratios;  // metric_error(l_k) / metric_error(l_{k+1})
  bool metric_diverges = false;
  bool field_diverges = false;
};

LimitReport flat_limit(const std::function<LiftConfig(double)>& family, const std::vector<double>& ells,
                       std::span<const ChartPoint> regular_points);

}  // namespace ewb
