#pragma once

#include <array>
#include <string>
#include <utility>

#include "ewbench/forms.hpp"

namespace ewb {

/// Einstein-Weyl data on a 3-chart: coframe (e^1, e^2, e^3), the 1-form omega
/// and the weighted function V.  Conformal structure h = e2.e2 - 4 e1.e3.
struct EWStructure {
  Chart chart;
  std::array<FormField, 3> frame;
  FormField omega;
  ScalarField V;
  std::string provenance;

  Coframe3 coframe(const ChartPoint& pt, int order) const;
  Metric3 metric(const ChartPoint& pt, int order) const;
};

/// A 1-form together with its conformal weight m (psi -> e^{mf} psi).
struct WeightedForm {
  FormField form;
  double weight = -1.0;
};

/// (u_t + w_y + u w_x - w u_x,  u_y + w_x).
std::pair<double, double> hypercr_residual(const ScalarField& u, const ScalarField& w,
                                           const ChartPoint& pt);

/// d e^i - 1/2 omega ^ e^i + V * e^i  for i = 1, 2, 3.
std::array<Form, 3> gt_residual(const EWStructure& s, const ChartPoint& pt);

/// *(dV + 1/2 V omega) - 1/2 d omega.
Form monopole_residual(const EWStructure& s, const ChartPoint& pt);

/// e^i -> e^f e^i, omega -> omega + 2 df, V -> e^{-f} V.
EWStructure gauge_transform(const EWStructure& s, ScalarField f);

/// Gauge factor f = ln(-l V / 2), which takes V to the constant -2/l.
/// Requires l V < 0 wherever it is evaluated.
ScalarField constant_v_gauge(const EWStructure& s, double ell);
EWStructure fix_gauge(const EWStructure& s, double ell);

/// D psi = d psi - (m/2) omega ^ psi.  psi needs jet order >= 1.
Form weighted_d(const Form& psi, double weight, const Form& omega);

/// D psi - V * psi.
Form psi_residual(const WeightedForm& psi, const EWStructure& s, const ChartPoint& pt);

/// psi = c omega with weight -1.
WeightedForm psi_multiple(const EWStructure& s, double c);
/// psi = c omega + d(c + k) with weight -1, for scalar fields c and k.
WeightedForm psi_gradient_family(const EWStructure& s, ScalarField c, ScalarField k);

/// H_xt - H_yy + H_y H_xx - H_x H_xy.
double hcr_residual(const ScalarField& H, const ChartPoint& pt);

/// (H_xx H_y - H_xy H_x,  H_xt - H_yy); their sum is hcr_residual.
std::pair<double, double> constraints_residual(const ScalarField& H, const ChartPoint& pt);

/// Hyper-CR structure on (x, y, t): e1 = dx - u dy + w dt, e2 = dy - u dt,
/// e3 = dt, omega = u_x dy + (u u_x + 2 u_y) dt, V = u_x / 2.
EWStructure from_uw(ScalarField u, ScalarField w, std::string provenance = "u,w");

/// from_uw with u = H_x, w = -H_y.
EWStructure from_H(ScalarField H, std::string provenance = "H");

double max_abs(const std::array<Form, 3>& forms);

}  // namespace ewb
