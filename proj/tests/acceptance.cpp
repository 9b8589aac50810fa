// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ewbench/errors.hpp"
#include "ewbench/families.hpp"
#include "ewbench/lift.hpp"
#include "ewbench/run.hpp"

using namespace ewb;

namespace {

// Pinned tolerances.
constexpr double kFamilyTol = 1e-7;
constexpr int kFamilyPoints = 200;
constexpr double kHcrTol = 1e-8;
constexpr double kConeGuard = 0.25;
constexpr double kLegendreTol = 1e-9;
constexpr double kHeisenbergPullbackTol = 1e-10;
constexpr double kLiftTol = 1e-6;
constexpr int kLiftPoints = 100;
constexpr double kLiftBetaFloor = 0.5;
constexpr double kControlFloor = 1e-3;
constexpr double kAdsTol = 1e-7;
constexpr double kKretschmannRel = 1e-6;
constexpr double kGaugeGtTol = 1e-6;
constexpr int kGauges = 10;
constexpr double kRatioLo = 3.6;
constexpr double kRatioHi = 4.4;
constexpr double kLimitRiemannTol = 1e-6;
constexpr double kDdTol = 1e-9;
constexpr double kFdRel = 1e-4;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<ChartPoint> points(SampleDomain d, int n, std::uint64_t seed) {
  d.count = n;
  d.seed = seed;
  return sample(d);
}

double structure_gap(const EWStructure& a, const EWStructure& b, const ChartPoint& pt) {
  double gap = (values(a.metric(pt, 0)) - values(b.metric(pt, 0))).cwiseAbs().maxCoeff();
  gap = std::max(gap, max_abs(a.omega(pt, 0) - b.omega(pt, 0)));
  return std::max(gap, std::abs(a.V(pt, 0).value() - b.V(pt, 0).value()));
}

double max_em(const SpacetimeData& st, const std::vector<ChartPoint>& pts, const EMConventions& conv = {}) {
  double m = 0.0;
  for (const auto& p : pts) m = std::max(m, em_residual(st, p, conv).cwiseAbs().maxCoeff());
  return m;
}

double max_maxwell(const SpacetimeData& st, const std::vector<ChartPoint>& pts) {
  double m = 0.0;
  for (const auto& p : pts) m = std::max(m, max_abs(maxwell_residual(st, p)));
  return m;
}

struct Base {
  CatalogEntry entry;
  double ell;
  bool fix;
};

std::vector<Base> certified_bases() {
  return {{heisenberg_entry(1.0), -1.0, false},
          {class_b_entry("1"), 4.0, false},
          {class_a_entry("y^2-2*t", kLiftBetaFloor), 1.0, true}};
}

Outcome criterion1() {
  Outcome o;
  double worst = 0.0;
  for (const CatalogEntry& e : default_catalog()) {
    double gt = 0.0, mono = 0.0, weyl = 0.0;
    for (const auto& p : points(e.domain, kFamilyPoints, 7)) {
      gt = std::max(gt, max_abs(gt_residual(e.structure, p)));
      mono = std::max(mono, max_abs(monopole_residual(e.structure, p)));
      const WeylResidual w = weyl_ricci_residual(e.structure, p);
      weyl = std::max({weyl, w.compat, w.ew});
    }
    o.require(gt <= kFamilyTol && mono <= kFamilyTol && weyl <= kFamilyTol,
              e.name + " gt " + fmt(gt) + " monopole " + fmt(mono) + " weyl " + fmt(weyl));
    worst = std::max({worst, gt, mono, weyl});
  }
  if (o.pass) o.detail = "9 catalog structures, worst residual " + fmt(worst) + " <= " + fmt(kFamilyTol);
  return o;
}

Outcome criterion2() {
  Outcome o;
  const ScalarField H = fundamental_field();
  const SampleDomain d{{{-1, 1}, {2, 3}, {-1, 1}},
                       {field_guard(expr_field(parse("y^2-4*x*t", {"x", "y", "t"})), kConeGuard, "cone")}, 0, 0};
  double hcr = 0.0, nl = 0.0, lin = 0.0;
  for (const auto& p : points(d, kFamilyPoints, 11)) {
    hcr = std::max(hcr, std::abs(hcr_residual(H, p)));
    const auto [a, b] = constraints_residual(H, p);
    nl = std::max(nl, std::abs(a));
    lin = std::max(lin, std::abs(b));
  }
  o.require(hcr <= kHcrTol, "hcr " + fmt(hcr));
  o.require(nl <= kHcrTol && lin <= kHcrTol, "constraints " + fmt(nl) + ", " + fmt(lin));
  if (o.pass) o.detail = "hcr " + fmt(hcr) + ", constraints " + fmt(nl) + " / " + fmt(lin) + " <= " + fmt(kHcrTol);
  return o;
}

Outcome criterion3() {
  Outcome o;
  double gap = 0.0;
  for (const CatalogEntry& e : default_catalog()) {
    if (!e.generator) continue;
    const EWStructure dual = from_generator(*e.generator);
    for (const auto& p : points(e.domain, kFamilyPoints, 12)) gap = std::max(gap, structure_gap(e.structure, dual, p));
  }
  o.require(gap <= kLegendreTol, "closed form vs generator " + fmt(gap));
  double pull = 0.0;
  for (double l : {1.0, 2.5, -1.5}) {
    const EWStructure b = class_b(constant_field(-l / 4.0));
    const EWStructure h = heisenberg(l);
    Eigen::Matrix3d J = Eigen::Matrix3d::Identity();
    J(0, 0) = 4.0 / l;
    for (const auto& p : sample({{{-1, 1}, {-1, 1}, {-1, 1}}, {}, 13, kFamilyPoints})) {
      const ChartPoint q{4.0 * p[0] / l, p[1], p[2]};
      const Eigen::Matrix3d hb = J.transpose() * values(b.metric(q, 0)) * J;
      pull = std::max(pull, (hb - values(h.metric(p, 0))).cwiseAbs().maxCoeff());
      const Form wb = b.omega(q, 0), wh = h.omega(p, 0);
      const Eigen::Vector3d w = J.transpose() * Eigen::Vector3d(wb[0].value(), wb[1].value(), wb[2].value());
      pull = std::max(pull, (w - Eigen::Vector3d(wh[0].value(), wh[1].value(), wh[2].value())).cwiseAbs().maxCoeff());
      pull = std::max(pull, std::abs(b.V(q, 0).value() - h.V(p, 0).value()));
    }
  }
  o.require(pull <= kHeisenbergPullbackTol, "class B vs Heisenberg " + fmt(pull));
  if (o.pass) o.detail = "Legendre gap " + fmt(gap) + ", class B/Heisenberg gap " + fmt(pull);
  return o;
}

// Lift residuals over the certified bases; `conv` selects the normalization.
double lift_worst(const EMConventions& conv, double c, bool with_maxwell) {
  double worst = 0.0;
  for (const Base& b : certified_bases()) {
    const LiftConfig cfg = make_lift(b.entry.structure, b.ell, c, b.fix);
    const auto bp = points(b.entry.domain, kLiftPoints, 21);
    check_lift_hypotheses(cfg, bp);
    for (bool alpha : {true, false}) {
      const SpacetimeData st = alpha ? build_alpha(cfg) : build_regular(cfg);
      const auto pts = lift_points(bp, alpha, 22);
      worst = std::max(worst, max_em(st, pts, conv));
      if (with_maxwell) worst = std::max(worst, max_maxwell(st, pts));
    }
  }
  return worst;
}

Outcome criterion4() {
  Outcome o;
  double worst = 0.0;
  for (double c : {0.0, 0.5}) worst = std::max(worst, lift_worst({}, c, true));
  o.require(worst <= kLiftTol, "lift residual " + fmt(worst));

  // u -> u + 0.1 x^2 on the fundamental-solution base (w != 0), and on the
  // Heisenberg frame with omega and V held fixed.
  const std::vector<std::string> xyt = {"x", "y", "t"};
  const ScalarField u = expr_field(parse("2*t*(y^2-4*x*t)^(-3/2) + 0.1*x^2", xyt));
  const ScalarField w = expr_field(parse("y*(y^2-4*x*t)^(-3/2)", xyt));
  const SampleDomain d{{{0.1, 1}, {2, 3}, {0.3, 1}},
                       {field_guard(expr_field(parse("y^2-4*x*t", xyt)), kConeGuard, "cone")}, 0, 0};
  const auto bp = points(d, 20, 23);
  double control = 1e300;
  for (double c : {0.0, 0.5}) {
    const LiftConfig cfg = make_lift(from_uw(u, w, "perturbed fundamental"), -50.0, c, true);
    control = std::min(control, max_em(build_alpha(cfg), lift_points(bp, true, 24)));
  }
  EWStructure bad = heisenberg(1.0);
  bad.frame = from_uw(expr_field(parse("4*x + 0.1*x^2", xyt)), constant_field(0.0)).frame;
  const auto hp = sample({{{-1, 1}, {-1, 1}, {-1, 1}}, {}, 25, 20});
  control = std::min(control, max_em(build_alpha(make_lift(bad, -1.0, 0.5, false)), lift_points(hp, true, 26)));
  o.require(control > kControlFloor, "negative control only reached " + fmt(control));
  if (o.pass)
    o.detail = "3 bases x c in {0, 0.5}, worst " + fmt(worst) + " <= " + fmt(kLiftTol) + "; controls >= " + fmt(control);
  return o;
}

Outcome criterion5() {
  Outcome o;
  double ric = 0.0, krel = 0.0;
  for (double l : {1.0, 2.0, 0.5}) {
    const SpacetimeData ads = poincare_ads(l);
    for (const auto& p : sample({{{0.3, 2.0}, {-1, 1}, {-1, 1}, {-1, 1}}, {}, 31, 50})) {
      const auto m = derivs_from_jets<4>(ads.g(p, 2));
      const auto r = curvature(m);
      ric = std::max(ric, (r.ricci + 3.0 / (l * l) * m.g).cwiseAbs().maxCoeff());
      const double k = 24.0 / std::pow(l, 4);
      krel = std::max(krel, std::abs(r.kretschmann - k) / k);
    }
  }
  o.require(ric <= kAdsTol, "AdS Ricci residual " + fmt(ric));
  o.require(krel <= kKretschmannRel, "AdS Kretschmann relative error " + fmt(krel));
  EMConventions half;
  half.f2_scale = 0.5;
  const double rejected = lift_worst(half, 0.5, false);
  o.require(rejected > kLiftTol, "1/2-normalized |F|^2 passes criterion 4 (" + fmt(rejected) + ")");
  if (o.pass)
    o.detail = "AdS Ricci " + fmt(ric) + ", K rel " + fmt(krel) + "; rejected |F|^2 normalization gives " +
               fmt(rejected) + " > " + fmt(kLiftTol);
  return o;
}

// Random smooth gauge factor in the chart's own coordinate names.
std::string random_gauge(std::mt19937_64& rng, const Chart& chart) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  const auto& c = chart.coords;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.6f*sin(%.6f*%s + %.6f*%s + %.6f*%s) + %.6f*%s*%s + %.6f*%s^2", u(rng), u(rng),
                c[0].c_str(), u(rng), c[1].c_str(), u(rng), c[2].c_str(), u(rng), c[0].c_str(), c[2].c_str(), u(rng),
                c[1].c_str());
  return buf;
}

Outcome criterion6() {
  Outcome o;
  std::mt19937_64 rng(61);
  double worst = 0.0;
  for (const CatalogEntry& e : default_catalog()) {
    const auto pts = points(e.domain, 50, 62);
    for (int k = 0; k < kGauges; ++k) {
      const std::string f = random_gauge(rng, e.structure.chart);
      const EWStructure g = gauge_transform(e.structure, expr_field(parse(f, e.structure.chart.coords)));
      double gt = 0.0;
      for (const auto& p : pts) gt = std::max(gt, max_abs(gt_residual(g, p)));
      o.require(gt <= kGaugeGtTol, e.name + " f = " + f + ": gt " + fmt(gt));
      worst = std::max(worst, gt);
    }
  }
  if (o.pass) o.detail = "9 structures x 10 random f, worst gt " + fmt(worst) + " <= " + fmt(kGaugeGtTol);
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto bp = sample({{{-1, 1}, {-1, 1}, {-1, 1}}, {}, 71, 20});
  const auto pts = lift_points(bp, false, 72);
  const auto family = [](double l) { return make_lift(heisenberg(-l), l, 0.0, false); };
  const LimitReport rep = flat_limit(family, {100.0, 200.0, 1000.0, 10000.0}, pts);
  const double ratio = rep.ratios[0];
  const double riem = rep.steps.back().limit_riemann;
  o.require(ratio >= kRatioLo && ratio <= kRatioHi, "ratio at l = 100, 200 is " + fmt(ratio));
  o.require(riem <= kLimitRiemannTol, "limit Riemann at l = 1e4 is " + fmt(riem));
  o.require(!rep.metric_diverges && !rep.field_diverges, "limit diverges");
  if (o.pass) o.detail = "ratio " + fmt(ratio) + " in [3.6, 4.4], limit Riemann " + fmt(riem) + " at l = 1e4";
  return o;
}

std::string stable_report(const RunConfig& c) {
  RunResult r = run(c);
  r.report.erase("wall_time_s");
  return serialize(r.report);
}

Outcome criterion8() {
  Outcome o;
  // d d = 0 on scalars and 1-forms built from random expressions.
  std::mt19937_64 rng(81);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::vector<std::string> xyt = {"x", "y", "t"};
  const char* pool[] = {"sin(x*y)", "exp(t)-x", "x^2*t", "cosh(y-t)", "y/(2+x^2)", "tanh(x+t)"};
  std::uniform_int_distribution<int> pick(0, 5);
  double dd = 0.0;
  for (int n = 0; n < 200; ++n) {
    const ChartPoint p{u(rng), u(rng), u(rng)};
    Form a(1, 3);
    for (int k = 0; k < 3; ++k) a[k] = eval_jet(parse(pool[pick(rng)], xyt), p, 2);
    dd = std::max(dd, max_abs(ext_d(ext_d(a))));
    dd = std::max(dd, max_abs(ext_d(ext_d(scalar_form(eval_jet(parse(pool[pick(rng)], xyt), p, 2), 3)))));
  }
  o.require(dd <= kDdTol, "d d residual " + fmt(dd));

  double fd = 0.0;
  for (const CatalogEntry& e : default_catalog()) {
    const EWStructure& s = e.structure;
    std::vector<ScalarField> fields = {s.V};
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < 3; ++k)
        fields.push_back([f = s.frame[i], k](const ChartPoint& p, int order) { return f(p, order)[k]; });
      fields.push_back([f = s.omega, i](const ChartPoint& p, int order) { return f(p, order)[i]; });
    }
    for (const auto& p : points(e.domain, 30, 82)) {
      for (const ScalarField& f : fields) {
        const Jet j = f(p, 2);
        const ValueField v = [&f](const ChartPoint& q) { return f(q, 0).value(); };
        for (int a = 0; a < 3; ++a) {
          for (int b = -1; b < 3; ++b) {
            if (b >= 0 && b < a) continue;
            std::array<int, 4> idx{};
            ++idx[a];
            if (b >= 0) ++idx[b];
            const double exact = j.is_constant() ? 0.0 : (b < 0 ? j.d(a) : j.d(a, b));
            fd = std::max(fd, std::abs(fd_oracle(v, p, idx) - exact) / std::max(1.0, std::abs(exact)));
          }
        }
      }
    }
  }
  o.require(fd <= kFdRel, "jets vs finite differences " + fmt(fd));

  bool stable = true;
  for (const char* cmd : {"verify", "lift", "limit"}) {
    RunConfig c;
    c.command = cmd;
    c.case_name = "heisenberg";
    c.points = 40;
    c.seed = 83;
    c.c = 0.5;
    ::setenv("EWBENCH_THREADS", "1", 1);
    const std::string a = stable_report(c);
    const std::string b = stable_report(c);
    ::setenv("EWBENCH_THREADS", "3", 1);
    const std::string t = stable_report(c);
    ::unsetenv("EWBENCH_THREADS");
    stable = stable && a == b && a == t;
  }
  o.require(stable, "reports differ between identical runs");
  if (o.pass) o.detail = "d d " + fmt(dd) + ", jets vs FD rel " + fmt(fd) + ", reports byte-stable";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"family certification", criterion1},  {"hyper-CR equation and constraints", criterion2},
      {"closed form vs generator", criterion3}, {"Einstein-Maxwell lift", criterion4},
      {"convention pinning", criterion5},    {"conformal invariance", criterion6},
      {"flat limit", criterion7},            {"infrastructure", criterion8},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
