#include "ewbench/lift.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace ewb {

namespace {

constexpr int kBaseMap[3] = {1, 2, 3};

ChartPoint base_of(const ChartPoint& pt) { return ChartPoint{pt[1], pt[2], pt[3]}; }

Jet up(const Jet& j, int order) {
  return j.is_constant() ? Jet::constant(j.value(), 4, order) : embed(j, 4, kBaseMap);
}

Form up(const Form& f, int order) {
  Form r = one_form({Jet::constant(0.0, 4, order), up(f[0], order), up(f[1], order), up(f[2], order)});
  return r;
}

Metric4 up(const Metric3& h, int order) {
  Metric4 g;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      g(a, b) = (a == 0 || b == 0) ? Jet::constant(0.0, 4, order) : up(h(a - 1, b - 1), order);
    }
  }
  return g;
}

struct BaseData {
  Form omega, psi;
  Metric4 h;
};

BaseData base_data(const LiftConfig& cfg, const ChartPoint& pt, int order) {
  const ChartPoint b = base_of(pt);
  return {up(cfg.base.omega(b, order), order), up(cfg.psi.form(b, order), order),
          up(cfg.base.metric(b, order), order)};
}

Metric4 square_plus(const Form& theta, const Metric4& h, const Jet& hscale) {
  Metric4 g;
  for (int a = 0; a < 4; ++a) {
    for (int b = a; b < 4; ++b) {
      g(a, b) = theta[a] * theta[b] + hscale * h(a, b);
      g(b, a) = g(a, b);
    }
  }
  return g;
}

Form dr_form(double coeff, int order) {
  const Jet z = Jet::constant(0.0, 4, order);
  return one_form({Jet::constant(coeff, 4, order), z, z, z});
}

Chart lift_chart(const EWStructure& base, const std::string& first) {
  Chart c;
  c.coords.push_back(first);
  for (const auto& n : base.chart.coords) c.coords.push_back(n);
  return c;
}

}  // namespace

LiftConfig make_lift(EWStructure base, double ell, double c, bool fix) {
  LiftConfig cfg;
  cfg.base = fix ? fix_gauge(base, ell) : std::move(base);
  cfg.psi = psi_multiple(cfg.base, c);
  cfg.ell = ell;
  return cfg;
}

void check_lift_hypotheses(const LiftConfig& cfg, std::span<const ChartPoint> base_points, double gauge_tol,
                           double psi_tol) {
  for (const ChartPoint& b : base_points) {
    const double v = cfg.base.V(b, 0).value();
    if (!(std::abs(v * cfg.ell + 2.0) <= gauge_tol)) {
      throw GaugeViolation("lift needs V = -2/l; found V l = " + std::to_string(v * cfg.ell));
    }
    const double r = max_abs(psi_residual(cfg.psi, cfg.base, b));
    if (!(r <= psi_tol)) throw HypothesisViolation("psi equation residual " + std::to_string(r));
  }
}

SpacetimeData build_alpha(const LiftConfig& cfg) {
  SpacetimeData st;
  st.chart = lift_chart(cfg.base, "alpha");
  st.ell = cfg.ell;
  st.description = "alpha-chart lift of " + cfg.base.provenance;
  const double l = cfg.ell;
  st.g = [cfg, l](const ChartPoint& pt, int order) {
    const BaseData d = base_data(cfg, pt, order);
    const Jet a = Jet::variable(0, pt[0], 4, order);
    const Jet s = sin(a);
    if (std::abs(s.value()) < 1e-12) throw DomainError("alpha chart: sin(alpha) = 0");
    const Jet is = reciprocal(s);
    const Form theta = (Jet(l) * is) * dr_form(1.0, order) + (Jet(-0.5 * l) * cos(a)) * d.omega +
                       (Jet(std::numbers::sqrt2) * s) * d.psi;
    return square_plus(theta, d.h, is * is);
  };
  st.A = [cfg, l](const ChartPoint& pt, int order) {
    const BaseData d = base_data(cfg, pt, order);
    const Jet a2 = Jet(2.0) * Jet::variable(0, pt[0], 4, order);
    return (Jet(0.5 * std::numbers::sqrt2) * sin(a2)) * d.psi - (Jet(0.25 * l) * cos(a2)) * d.omega;
  };
  return st;
}

SpacetimeData build_regular(const LiftConfig& cfg) {
  SpacetimeData st;
  st.chart = lift_chart(cfg.base, "r");
  st.ell = cfg.ell;
  st.description = "regular-chart lift of " + cfg.base.provenance;
  const double l = cfg.ell;
  const auto hyper = [l](const ChartPoint& pt, int order) {
    const Jet z = Jet::variable(0, pt[0], 4, order) / Jet(l);
    const Jet ch = cosh(z);
    return std::array<Jet, 3>{ch, reciprocal(ch), tanh(z)};
  };
  st.g = [cfg, l, hyper](const ChartPoint& pt, int order) {
    const BaseData d = base_data(cfg, pt, order);
    const auto [ch, sech, th] = hyper(pt, order);
    const Form theta =
        dr_form(-1.0, order) + (Jet(-0.5 * l) * th) * d.omega + (Jet(std::numbers::sqrt2) * sech) * d.psi;
    return square_plus(theta, d.h, ch * ch);
  };
  st.A = [cfg, l, hyper](const ChartPoint& pt, int order) {
    const BaseData d = base_data(cfg, pt, order);
    const auto [ch, sech, th] = hyper(pt, order);
    return (Jet(std::numbers::sqrt2) * sech * th) * d.psi - (Jet(0.25 * l) * (th * th - sech * sech)) * d.omega;
  };
  return st;
}

ChartPoint alpha_point(const ChartPoint& regular, double ell) {
  ChartPoint a = regular;
  const double z = regular[0] / ell;
  a[0] = std::atan2(1.0 / std::cosh(z), std::tanh(z));
  return a;
}

double dalpha_dr(const ChartPoint& regular, double ell) { return -1.0 / (std::cosh(regular[0] / ell) * ell); }

std::vector<ChartPoint> lift_points(std::span<const ChartPoint> base_points, bool alpha_chart, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist = alpha_chart
                                                    ? std::uniform_real_distribution<double>(0.2, std::numbers::pi - 0.2)
                                                    : std::uniform_real_distribution<double>(-2.0, 2.0);
  std::vector<ChartPoint> out;
  out.reserve(base_points.size());
  for (const ChartPoint& b : base_points) out.push_back(ChartPoint{dist(rng), b[0], b[1], b[2]});
  return out;
}

SpacetimeData limit_metric(const LiftConfig& cfg) {
  SpacetimeData st;
  st.chart = lift_chart(cfg.base, "r");
  st.ell = cfg.ell;
  st.description = "flat limit of " + cfg.base.provenance;
  st.g = [cfg](const ChartPoint& pt, int order) {
    const BaseData d = base_data(cfg, pt, order);
    const Jet r = Jet::variable(0, pt[0], 4, order);
    const Form theta = dr_form(1.0, order) + (Jet(0.5) * r) * d.omega - Jet(std::numbers::sqrt2) * d.psi;
    return square_plus(theta, d.h, Jet(1.0));
  };
  st.A = [](const ChartPoint& pt, int order) {
    const Jet z = Jet::constant(0.0, pt.dim, order);
    return one_form({z, z, z, z});
  };
  return st;
}

LimitReport flat_limit(const std::function<LiftConfig(double)>& family, const std::vector<double>& ells,
                       std::span<const ChartPoint> regular_points) {
  LimitReport rep;
  for (double l : ells) {
    const LiftConfig cfg = family(l);
    const SpacetimeData reg = build_regular(cfg);
    const SpacetimeData lim = limit_metric(cfg);
    LimitStep step;
    step.ell = l;
    for (const ChartPoint& pt : regular_points) {
      step.metric_error =
          std::max(step.metric_error, (metric_values(reg, pt) - metric_values(lim, pt)).cwiseAbs().maxCoeff());
      step.field_max = std::max(step.field_max, max_abs(ext_d(reg.A(pt, 1))));
      step.field_limit =
          std::max(step.field_limit, 0.25 * std::abs(l) * max_abs(ext_d(cfg.base.omega(base_of(pt), 1))));
      const auto R = riemann<4>(christoffel<4>(derivs_from_jets<4>(lim.g(pt, 2))));
      for (const auto& row : R) {
        for (const auto& m : row) step.limit_riemann = std::max(step.limit_riemann, m.cwiseAbs().maxCoeff());
      }
    }
    if (!rep.steps.empty()) {
      const LimitStep& prev = rep.steps.back();
      rep.ratios.push_back(step.metric_error > 0.0 ? prev.metric_error / step.metric_error : 0.0);
      if (step.metric_error > prev.metric_error) rep.metric_diverges = true;
      if (step.field_limit > prev.field_limit * (1.0 + 1e-9)) rep.field_diverges = true;
    }
    rep.steps.push_back(step);
  }
  return rep;
}

}  // namespace ewb
