#include "ewbench/ew.hpp"

#include <algorithm>
#include <cmath>

#include "ewbench/errors.hpp"

namespace ewb {

Coframe3 EWStructure::coframe(const ChartPoint& pt, int order) const {
  return {{frame[0](pt, order), frame[1](pt, order), frame[2](pt, order)}};
}

Metric3 EWStructure::metric(const ChartPoint& pt, int order) const {
  return metric_from_coframe(coframe(pt, order));
}

std::pair<double, double> hypercr_residual(const ScalarField& u, const ScalarField& w,
                                           const ChartPoint& pt) {
  const Jet uj = u(pt, 1);
  const Jet wj = w(pt, 1);
  const double r1 = uj.d(2) + wj.d(1) + uj.value() * wj.d(0) - wj.value() * uj.d(0);
  const double r2 = uj.d(1) + wj.d(0);
  return {r1, r2};
}

std::array<Form, 3> gt_residual(const EWStructure& s, const ChartPoint& pt) {
  const Coframe3 e = s.coframe(pt, 1);
  const Coframe3 e0 = {{e.e[0].truncate(0), e.e[1].truncate(0), e.e[2].truncate(0)}};
  const Form omega = s.omega(pt, 0);
  const Jet V = s.V(pt, 0);
  std::array<Form, 3> r;
  for (int i = 0; i < 3; ++i) {
    r[i] = ext_d(e.e[i]) - Jet(0.5) * wedge(omega, e0.e[i]) + V * hodge3(e0.e[i], e0);
  }
  return r;
}

Form monopole_residual(const EWStructure& s, const ChartPoint& pt) {
  const Coframe3 e = s.coframe(pt, 0);
  const Form omega1 = s.omega(pt, 1);
  const Jet V1 = s.V(pt, 1);
  const Form dV = ext_d(scalar_form(V1, pt.dim));
  const Form source = dV + (V1.truncate(0) * Jet(0.5)) * omega1.truncate(0);
  return hodge3(source, e) - Jet(0.5) * ext_d(omega1);
}

EWStructure gauge_transform(const EWStructure& s, ScalarField f) {
  EWStructure out = s;
  for (int i = 0; i < 3; ++i) {
    out.frame[i] = [e = s.frame[i], f](const ChartPoint& pt, int order) {
      return exp(f(pt, order)) * e(pt, order);
    };
  }
  out.omega = [omega = s.omega, df = differential(f)](const ChartPoint& pt, int order) {
    return omega(pt, order) + Jet(2.0) * df(pt, order);
  };
  out.V = [V = s.V, f](const ChartPoint& pt, int order) { return exp(-f(pt, order)) * V(pt, order); };
  out.provenance = s.provenance + " (gauge transformed)";
  return out;
}

ScalarField constant_v_gauge(const EWStructure& s, double ell) {
  return [V = s.V, ell](const ChartPoint& pt, int order) {
    const Jet arg = Jet(-0.5 * ell) * V(pt, order);
    if (!(arg.value() > 0.0)) {
      throw GaugeViolation("cannot reach V = -2/l: l V must be negative");
    }
    return log(arg);
  };
}

EWStructure fix_gauge(const EWStructure& s, double ell) {
  EWStructure out = gauge_transform(s, constant_v_gauge(s, ell));
  out.provenance = s.provenance + " (gauge V = -2/l)";
  return out;
}

Form weighted_d(const Form& psi, double weight, const Form& omega) {
  return ext_d(psi) - Jet(0.5 * weight) * wedge(omega.truncate(psi.order() - 1), psi.truncate(psi.order() - 1));
}

Form psi_residual(const WeightedForm& psi, const EWStructure& s, const ChartPoint& pt) {
  const Form p1 = psi.form(pt, 1);
  const Coframe3 e = s.coframe(pt, 0);
  const Form omega = s.omega(pt, 0);
  const Jet V = s.V(pt, 0);
  return weighted_d(p1, psi.weight, omega) - V * hodge3(p1.truncate(0), e);
}

WeightedForm psi_multiple(const EWStructure& s, double c) {
  return {[omega = s.omega, c](const ChartPoint& pt, int order) { return Jet(c) * omega(pt, order); },
          -1.0};
}

WeightedForm psi_gradient_family(const EWStructure& s, ScalarField c, ScalarField k) {
  const ScalarField sum = [c, k](const ChartPoint& pt, int order) { return c(pt, order) + k(pt, order); };
  return {[omega = s.omega, c, dsum = differential(sum)](const ChartPoint& pt, int order) {
            return c(pt, order) * omega(pt, order) + dsum(pt, order);
          },
          -1.0};
}

double hcr_residual(const ScalarField& H, const ChartPoint& pt) {
  const Jet h = H(pt, 2);
  return h.d(0, 2) - h.d(1, 1) + h.d(1) * h.d(0, 0) - h.d(0) * h.d(0, 1);
}

std::pair<double, double> constraints_residual(const ScalarField& H, const ChartPoint& pt) {
  const Jet h = H(pt, 2);
  return {h.d(0, 0) * h.d(1) - h.d(0, 1) * h.d(0), h.d(0, 2) - h.d(1, 1)};
}

EWStructure from_uw(ScalarField u, ScalarField w, std::string provenance) {
  const ScalarField ux = partial_field(u, 0);
  const ScalarField uy = partial_field(u, 1);
  EWStructure s;
  s.chart = Chart::xyt();
  s.provenance = std::move(provenance);
  s.frame[0] = [u, w](const ChartPoint& pt, int order) {
    return one_form({Jet::constant(1.0, pt.dim, order), -u(pt, order), w(pt, order)});
  };
  s.frame[1] = [u](const ChartPoint& pt, int order) {
    return one_form({Jet::constant(0.0, pt.dim, order), Jet::constant(1.0, pt.dim, order), -u(pt, order)});
  };
  s.frame[2] = [](const ChartPoint& pt, int order) {
    return one_form({Jet::constant(0.0, pt.dim, order), Jet::constant(0.0, pt.dim, order),
                     Jet::constant(1.0, pt.dim, order)});
  };
  s.omega = [u, ux, uy](const ChartPoint& pt, int order) {
    const Jet uxj = ux(pt, order);
    return one_form({Jet::constant(0.0, pt.dim, order), uxj, u(pt, order) * uxj + Jet(2.0) * uy(pt, order)});
  };
  s.V = [ux](const ChartPoint& pt, int order) { return Jet(0.5) * ux(pt, order); };
  return s;
}

EWStructure from_H(ScalarField H, std::string provenance) {
  const ScalarField hx = partial_field(H, 0);
  const ScalarField hy = partial_field(H, 1);
  const ScalarField w = [hy](const ChartPoint& pt, int order) { return -hy(pt, order); };
  return from_uw(hx, w, std::move(provenance));
}

double max_abs(const std::array<Form, 3>& forms) {
  double m = 0.0;
  for (const Form& f : forms) m = std::max(m, max_abs(f));
  return m;
}

}  // namespace ewb
