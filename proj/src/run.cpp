#include "ewbench/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

#include "ewbench/errors.hpp"
#include "ewbench/families.hpp"
#include "ewbench/lift.hpp"

namespace ewb {

namespace {

using ojson = nlohmann::ordered_json;

const std::vector<std::string> kVerifyChecks = {"gt",  "monopole", "hypercr",     "psi",      "weyl",
                                                "hcr", "constraints", "generator", "legendre"};
const std::vector<std::string> kLiftChecks = {"em", "maxwell", "invariants", "signature"};
const std::vector<std::string> kLimitChecks = {"limit"};

constexpr double kGaugeTol = 1e-9;
constexpr double kPsiTol = 1e-7;

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

// Per-point evaluation with ordered results.  The lowest-index exception is
// rethrown so failures are independent of the thread count.
using PointFn = std::function<std::vector<double>(const ChartPoint&)>;

std::vector<std::vector<double>> map_points(const std::vector<ChartPoint>& pts, const PointFn& fn) {
  const std::size_t n = pts.size();
  std::vector<std::vector<double>> out(n);
  std::vector<std::exception_ptr> errs(n);
  const auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < n; i += stride) {
      try {
        out[i] = fn(pts[i]);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), std::max<std::size_t>(n, 1));
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(work, k, threads);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

ojson point_json(const Chart& chart, const ChartPoint& pt) {
  ojson j = ojson::object();
  for (int i = 0; i < pt.dim; ++i) j[chart.coords[i]] = pt[i];
  return j;
}

struct Stat {
  double max = 0.0;
  double sum = 0.0;
  std::size_t n = 0;
  std::size_t worst = 0;
  bool nan = false;

  void add(double v, std::size_t i) {
    if (std::isnan(v)) {
      if (!nan) worst = i;
      nan = true;
    } else if (!nan && (n == 0 || v > max)) {
      max = v;
      worst = i;
    }
    sum += v;
    ++n;
  }
};

// The verdict is pass iff max <= tol; NaN never passes.
ojson stat_json(const Stat& s, double tol, const Chart& chart, const std::vector<ChartPoint>& pts, bool& all_pass) {
  const bool pass = !s.nan && s.max <= tol;
  all_pass = all_pass && pass;
  ojson j;
  j["max"] = s.nan ? std::numeric_limits<double>::quiet_NaN() : s.max;
  j["mean"] = s.n ? s.sum / static_cast<double>(s.n) : 0.0;
  j["worst_point"] = pts.empty() ? ojson(nullptr) : point_json(chart, pts[s.worst]);
  j["tol"] = tol;
  j["verdict"] = pass ? "pass" : "fail";
  return j;
}

// Evaluates named per-point checks and appends their statistics.
struct CheckSpec {
  std::string name;
  std::function<double(const ChartPoint&)> fn;
  double tol;
};

void run_checks(const std::vector<CheckSpec>& specs, const Chart& chart, const std::vector<ChartPoint>& pts,
                ojson& checks, bool& all_pass) {
  if (specs.empty()) return;
  const auto values = map_points(pts, [&](const ChartPoint& pt) {
    std::vector<double> v;
    v.reserve(specs.size());
    for (const auto& s : specs) v.push_back(s.fn(pt));
    return v;
  });
  for (std::size_t k = 0; k < specs.size(); ++k) {
    Stat st;
    for (std::size_t i = 0; i < pts.size(); ++i) st.add(values[i][k], i);
    checks[specs[k].name] = stat_json(st, specs[k].tol, chart, pts, all_pass);
  }
}

double structure_gap(const EWStructure& a, const EWStructure& b, const ChartPoint& pt) {
  const Eigen::Matrix3d ha = values(a.metric(pt, 0));
  const Eigen::Matrix3d hb = values(b.metric(pt, 0));
  double gap = (ha - hb).cwiseAbs().maxCoeff();
  gap = std::max(gap, max_abs(a.omega(pt, 0) - b.omega(pt, 0)));
  return std::max(gap, std::abs(a.V(pt, 0).value() - b.V(pt, 0).value()));
}

// A base structure with everything the checks may need.
struct BaseCase {
  std::string name;
  EWStructure s;
  SampleDomain domain;
  std::optional<GeneratorG> generator;
  std::optional<std::pair<ScalarField, ScalarField>> uw;
  std::optional<ScalarField> H;
};

std::vector<std::string> with_ell(const Chart& c) {
  std::vector<std::string> v = c.coords;
  v.push_back("ell");
  return v;
}

ScalarField chart_expr(const std::string& src, const Chart& chart, double ell) {
  return expr_field(parse(src, with_ell(chart)), {ell});
}

BaseCase make_base(const RunConfig& cfg, double ell) {
  BaseCase b;
  const std::string& c = cfg.case_name;
  if (c == "heisenberg") {
    const CatalogEntry e = heisenberg_entry(ell);
    b = {e.name, e.structure, e.domain, std::nullopt, std::nullopt, std::nullopt};
    b.uw = std::pair{expr_field(parse("4*x/ell", {"x", "y", "t", "ell"}), {ell}), constant_field(0.0)};
  } else if (c == "class-a") {
    // Lifts sample away from small beta, where curvature grows like 1/beta^2.
    const CatalogEntry e = class_a_entry(cfg.beta, cfg.command == "verify" ? 0.1 : 0.5);
    b = {e.name, e.structure, e.domain, e.generator, std::nullopt, std::nullopt};
  } else if (c == "class-b") {
    const CatalogEntry e = class_b_entry(cfg.F, ell);
    b = {e.name, e.structure, e.domain, e.generator, std::nullopt, std::nullopt};
  } else if (c == "class-c") {
    const CatalogEntry e = cfg.K.empty() ? class_c_entry(cfg.Phi) : class_c_entry_k(cfg.K, ell);
    b = {e.name, e.structure, e.domain, e.generator, std::nullopt, std::nullopt};
  } else if (c == "from-H") {
    const Chart xyt = Chart::xyt();
    const ScalarField H = chart_expr(cfg.H, xyt, ell);
    b.name = "from-H[" + cfg.H + "]";
    b.s = from_H(H, b.name);
    b.H = H;
    b.uw = std::pair{partial_field(H, 0), ScalarField([H](const ChartPoint& pt, int order) {
                       return -H(pt, order + 1).diff(1);
                     })};
    b.domain = {{{-1.0, 1.0}, {2.0, 3.0}, {-1.0, 1.0}}, {}, 0, 0};
    if (cfg.H == RunConfig{}.H)
      b.domain.guards.push_back(field_guard(expr_field(parse("y^2-4*x*t", xyt.coords)), 0.25, "y^2-4xt > 0.25"));
  } else if (c == "from-G") {
    const Chart pyt = Chart::pyt();
    b.name = "from-G[A=" + cfg.A + ",B=" + cfg.B + "]";
    b.generator = generator(chart_expr(cfg.A, pyt, ell), chart_expr(cfg.B, pyt, ell), b.name);
    b.s = from_generator(*b.generator);
    b.domain = {{{0.5, 2.0}, {-1.0, 1.0}, {0.5, 2.0}}, {}, 0, 0};
  } else {
    throw ConfigError("unknown case '" + c + "'");
  }
  for (const auto& g : cfg.guards)
    b.domain.guards.push_back(field_guard(chart_expr(g, b.s.chart, ell), 0.0, g + " > 0"));
  if (!cfg.gauge.empty()) {
    b.s = gauge_transform(b.s, chart_expr(cfg.gauge, b.s.chart, ell));
    b.s.provenance += " gauge f=" + cfg.gauge;
  }
  b.domain.seed = cfg.seed;
  b.domain.count = cfg.points;
  return b;
}

WeightedForm make_psi(const RunConfig& cfg, const EWStructure& s, double ell) {
  if (!cfg.psi_c.empty() || !cfg.psi_k.empty()) {
    const ScalarField cf = chart_expr(cfg.psi_c.empty() ? "0" : cfg.psi_c, s.chart, ell);
    const ScalarField kf = chart_expr(cfg.psi_k.empty() ? "0" : cfg.psi_k, s.chart, ell);
    return psi_gradient_family(s, cf, kf);
  }
  return psi_multiple(s, cfg.c);
}

std::vector<std::string> resolve_checks(const RunConfig& cfg, const std::vector<std::string>& allowed,
                                        std::vector<std::string> defaults) {
  std::vector<std::string> checks = cfg.checks.empty() ? std::move(defaults) : cfg.checks;
  for (const auto& c : checks)
    if (!contains(allowed, c)) throw ConfigError("check '" + c + "' is not available for " + cfg.command);
  return checks;
}

ojson conventions() {
  ojson j;
  j["ricci"] = "R_ab = d_c G^c_ab - d_a G^c_cb + G^c_cd G^d_ab - G^c_ad G^d_cb";
  j["f2"] = "|F|^2 = F_ab F^ab";
  j["em"] = "R_ab + 3/l^2 g_ab + 2 F_ac F_b^c - 1/2 |F|^2 g_ab";
  j["hodge3"] = "*e1 = e1^e2, *e2 = 2 e1^e3, *e3 = e2^e3";
  j["hodge4"] = "eps_0123 = +1 in chart order";
  j["weyl"] = "D = LC - 1/2 (delta^a_b w_c + delta^a_c w_b - h_bc w^a)";
  return j;
}

void run_verify(const RunConfig& cfg, ojson& rep, bool& pass) {
  const BaseCase b = make_base(cfg, cfg.ell);
  const auto checks = resolve_checks(cfg, kVerifyChecks, {"gt", "monopole", "weyl"});
  const std::vector<ChartPoint> pts = sample(b.domain);
  rep["structure"] = b.s.provenance;
  rep["chart"] = b.s.chart.coords;
  rep["n_points"] = pts.size();

  const EWStructure& s = b.s;
  std::optional<EWStructure> dual;
  std::vector<CheckSpec> specs;
  for (const auto& c : checks) {
    if (c == "gt") {
      specs.push_back({c, [&s](const ChartPoint& p) { return max_abs(gt_residual(s, p)); }, cfg.tol});
    } else if (c == "monopole") {
      specs.push_back({c, [&s](const ChartPoint& p) { return max_abs(monopole_residual(s, p)); }, cfg.tol});
    } else if (c == "weyl") {
      specs.push_back({c, [&s](const ChartPoint& p) {
                         const WeylResidual w = weyl_ricci_residual(s, p);
                         return std::max(w.compat, w.ew);
                       },
                       cfg.tol});
    } else if (c == "psi") {
      const WeightedForm psi = make_psi(cfg, s, cfg.ell);
      specs.push_back({c, [&s, psi](const ChartPoint& p) { return max_abs(psi_residual(psi, s, p)); }, cfg.tol});
    } else if (c == "hypercr") {
      if (!b.uw) throw ConfigError("hypercr needs a (u, w) case: heisenberg or from-H");
      const auto uw = *b.uw;
      specs.push_back({c, [uw](const ChartPoint& p) {
                         const auto [r1, r2] = hypercr_residual(uw.first, uw.second, p);
                         return std::max(std::abs(r1), std::abs(r2));
                       },
                       cfg.tol});
    } else if (c == "hcr" || c == "constraints") {
      if (!b.H) throw ConfigError(c + " needs the from-H case");
      const ScalarField H = *b.H;
      if (c == "hcr")
        specs.push_back({c, [H](const ChartPoint& p) { return std::abs(hcr_residual(H, p)); }, cfg.tol});
      else
        specs.push_back({c, [H](const ChartPoint& p) {
                           const auto [nl, lin] = constraints_residual(H, p);
                           return std::max(std::abs(nl), std::abs(lin));
                         },
                         cfg.tol});
    } else if (c == "generator") {
      if (!b.generator) throw ConfigError("generator needs a class or from-G case");
      const GeneratorG g = *b.generator;
      specs.push_back({c, [g](const ChartPoint& p) {
                         return std::max(std::abs(g_equation_residual(g, p)), std::abs(branch_residual(g, p)));
                       },
                       cfg.tol});
    } else if (c == "legendre") {
      if (!b.generator || cfg.case_name == "from-G") throw ConfigError("legendre needs class-a, class-b or class-c");
      if (!cfg.gauge.empty()) throw ConfigError("legendre compares ungauged structures; drop --gauge");
      if (!dual) dual = from_generator(*b.generator);
      const EWStructure& d = *dual;
      specs.push_back({c, [&s, &d](const ChartPoint& p) { return structure_gap(s, d, p); }, cfg.tol});
    }
  }
  ojson out = ojson::object();
  run_checks(specs, s.chart, pts, out, pass);
  rep["checks"] = out;
}

// Lift parameter and gauge: l = -2/V at the first point unless given; a sign
// mismatch flips l; a non-constant V is gauge-fixed.
struct LiftSetup {
  LiftConfig lift;
  double ell = 0.0;
  bool sign_flipped = false;
  bool gauge_fixed = false;
};

LiftSetup setup_lift(const RunConfig& cfg, const BaseCase& b, const std::vector<ChartPoint>& bp) {
  LiftSetup out;
  const double v0 = b.s.V(bp.front(), 0).value();
  double ell = cfg.ell;
  if (!cfg.ell_set && v0 != 0.0) ell = -2.0 / v0;
  if (v0 * ell > 0.0) {
    ell = -ell;
    out.sign_flipped = true;
  }
  double gauge_err = 0.0;
  for (const auto& p : bp) gauge_err = std::max(gauge_err, std::abs(b.s.V(p, 0).value() * ell + 2.0));
  out.gauge_fixed = gauge_err > kGaugeTol && v0 != 0.0;
  out.ell = ell;
  out.lift = make_lift(b.s, ell, 0.0, out.gauge_fixed);
  out.lift.psi = make_psi(cfg, out.lift.base, ell);
  return out;
}

void run_lift(const RunConfig& cfg, ojson& rep, bool& pass) {
  const BaseCase b = make_base(cfg, cfg.ell);
  const auto checks = resolve_checks(cfg, kLiftChecks, {"em", "maxwell"});
  if (cfg.chart != "alpha" && cfg.chart != "regular" && cfg.chart != "both")
    throw ConfigError("chart must be alpha, regular or both");
  const std::vector<ChartPoint> bp = sample(b.domain);
  const LiftSetup ls = setup_lift(cfg, b, bp);

  rep["structure"] = b.s.provenance;
  rep["chart"] = cfg.chart;
  rep["n_points"] = bp.size();
  rep["conventions"]["ell_sign_fix"] = ls.sign_flipped;
  rep["conventions"]["gauge_fix"] = ls.gauge_fixed;
  rep["ell"] = ls.ell;

  ojson out = ojson::object();
  {
    ojson h;
    try {
      check_lift_hypotheses(ls.lift, bp, kGaugeTol, kPsiTol);
      h["verdict"] = "pass";
    } catch (const GaugeViolation& e) {
      h["error"] = e.what();
      h["verdict"] = "fail";
      pass = false;
    } catch (const HypothesisViolation& e) {
      h["error"] = e.what();
      h["verdict"] = "fail";
      pass = false;
    }
    out["hypotheses"] = h;
  }

  const SpacetimeData alpha = build_alpha(ls.lift);
  const SpacetimeData regular = build_regular(ls.lift);
  const auto field_specs = [&](const SpacetimeData& st, const std::string& suffix) {
    std::vector<CheckSpec> specs;
    for (const auto& c : checks) {
      if (c == "em")
        specs.push_back({c + suffix,
                         [&st](const ChartPoint& p) { return em_residual(st, p).cwiseAbs().maxCoeff(); }, cfg.tol});
      else if (c == "maxwell")
        specs.push_back({c + suffix, [&st](const ChartPoint& p) { return max_abs(maxwell_residual(st, p)); }, cfg.tol});
      else if (c == "signature")
        specs.push_back({c + suffix,
                         [&st](const ChartPoint& p) {
                           const Signature s = signature(metric_values(st, p));
                           return s.positive == 3 && s.negative == 1 ? 0.0 : 1.0;
                         },
                         0.0});
    }
    return specs;
  };
  const bool both = cfg.chart == "both";
  if (cfg.chart != "regular") {
    const auto pts = lift_points(bp, true, cfg.seed + 1);
    run_checks(field_specs(alpha, both ? "@alpha" : ""), alpha.chart, pts, out, pass);
  }
  const auto rpts = lift_points(bp, false, cfg.seed + 2);
  if (cfg.chart != "alpha") run_checks(field_specs(regular, both ? "@r" : ""), regular.chart, rpts, out, pass);
  if (contains(checks, "invariants")) {
    const double ell = ls.ell;
    const auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); };
    run_checks({{"invariants",
                 [&, ell](const ChartPoint& p) {
                   const ChartPoint q = alpha_point(p, ell);
                   return std::max(rel(kretschmann(regular, p), kretschmann(alpha, q)),
                                   rel(field_norm(regular, p), field_norm(alpha, q)));
                 },
                 cfg.tol}},
               regular.chart, rpts, out, pass);
  }
  rep["checks"] = out;
}

void run_limit(const RunConfig& cfg, ojson& rep, bool& pass) {
  resolve_checks(cfg, kLimitChecks, {"limit"});
  if (cfg.ells.size() < 2) throw ConfigError("limit needs at least two values in --ells");
  const bool heis = cfg.case_name == "heisenberg";
  const BaseCase first = make_base(cfg, heis ? -cfg.ell : cfg.ell);
  const std::vector<ChartPoint> bp = sample(first.domain);
  const auto pts = lift_points(bp, false, cfg.seed + 2);

  const auto lift_at = [&](const EWStructure& base, double l) {
    double err = 0.0;
    for (const auto& p : bp) err = std::max(err, std::abs(base.V(p, 0).value() * l + 2.0));
    LiftConfig lc = make_lift(base, l, 0.0, err > kGaugeTol);
    lc.psi = make_psi(cfg, lc.base, l);
    return lc;
  };
  const std::function<LiftConfig(double)> family = [&](double l) {
    if (cfg.fixed_base) return lift_at(first.s, l);
    return lift_at(make_base(cfg, heis ? -l : l).s, l);
  };
  const LimitReport lr = flat_limit(family, cfg.ells, pts);

  rep["structure"] = first.s.provenance;
  rep["chart"] = "r";
  rep["n_points"] = pts.size();
  rep["conventions"]["ell_sign_fix"] = heis;
  rep["conventions"]["gauge_fix"] = false;
  rep["conventions"]["limit_metric"] = "(dr + r/2 omega - sqrt2 psi)^2 + h";

  ojson steps = ojson::array();
  for (const auto& s : lr.steps) {
    ojson j;
    j["ell"] = s.ell;
    j["metric_error"] = s.metric_error;
    j["field_max"] = s.field_max;
    j["field_limit"] = s.field_limit;
    j["limit_riemann"] = s.limit_riemann;
    steps.push_back(j);
  }
  rep["steps"] = steps;

  ojson out = ojson::object();
  // Pinned only for consecutive pairs with l_(k+1) = 2 l_k.
  ojson pairs = ojson::array();
  bool ratio_ok = true;
  for (std::size_t k = 0; k < lr.ratios.size(); ++k) {
    if (cfg.ells[k + 1] != 2.0 * cfg.ells[k]) continue;
    const bool ok = lr.ratios[k] >= 3.6 && lr.ratios[k] <= 4.4;
    ratio_ok = ratio_ok && ok;
    pairs.push_back({{"ell", cfg.ells[k]}, {"ratio", lr.ratios[k]}});
  }
  out["limit_ratio"] = {{"ratios", lr.ratios},
                        {"doubling_pairs", pairs},
                        {"range", {3.6, 4.4}},
                        {"verdict", pairs.empty() ? "n/a" : ratio_ok ? "pass" : "fail"}};
  out["limit_metric"] = {{"diverges", lr.metric_diverges}, {"verdict", lr.metric_diverges ? "fail" : "pass"}};
  out["limit_field"] = {{"diverges", lr.field_diverges}, {"verdict", lr.field_diverges ? "fail" : "pass"}};
  const double riem = lr.steps.back().limit_riemann;
  out["limit_riemann"] = {{"max", riem}, {"ell", lr.steps.back().ell}, {"tol", cfg.tol},
                          {"verdict", riem <= cfg.tol ? "pass" : "fail"}};
  for (const auto& [k, v] : out.items()) pass = pass && v["verdict"] != "fail";
  rep["checks"] = out;
}

std::string partial_name(const std::vector<std::string>& vars, const MultiIndex& a) {
  std::string s;
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (int k = 0; k < a[i]; ++k) s += (s.empty() ? "" : ",") + vars[i];
  return s;
}

void run_eval(const RunConfig& cfg, ojson& rep) {
  if (cfg.expr.empty()) throw ConfigError("eval needs --expr");
  const std::vector<std::string> vars = split(cfg.vars, ',');
  if (vars.size() > 4) throw ConfigError("eval supports at most 4 variables");
  if (cfg.at.size() != vars.size()) throw ConfigError("--at needs one value per variable");
  if (cfg.order < 0 || cfg.order > 4) throw ConfigError("--order must be in [0, 4]");
  const Expr e = parse(cfg.expr, vars);
  ChartPoint pt;
  pt.dim = static_cast<int>(vars.size());
  for (int i = 0; i < pt.dim; ++i) pt[i] = cfg.at[i];
  const Jet j = eval_jet(e, pt, cfg.order);
  rep["chart"] = vars;
  rep["point"] = cfg.at;
  rep["value"] = j.value();
  ojson partials = ojson::object();
  for (int k = 1; k < monomial_count(pt.dim, cfg.order); ++k) {
    const MultiIndex& a = monomial(pt.dim, k);
    partials[partial_name(vars, a)] = j.partial(a);
  }
  rep["partials"] = partials;
}

void fail_with(ojson& rep, RunStatus& status, RunStatus code, const std::string& kind, const char* what) {
  status = code;
  rep["error"] = {{"kind", kind}, {"message", what}};
}

}  // namespace

int thread_count() {
  const char* env = std::getenv("EWBENCH_THREADS");
  if (!env) return 1;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (end == env || n < 1) return 1;
  return static_cast<int>(std::min(n, 256L));
}

void apply_json_config(RunConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  const auto list = [](const nlohmann::json& v) {
    if (v.is_string()) return split(v.get<std::string>(), ',');
    return v.get<std::vector<std::string>>();
  };
  for (const auto& [key, v] : j.items()) {
    if (key == "command") cfg.command = v.get<std::string>();
    else if (key == "case") cfg.case_name = v.get<std::string>();
    else if (key == "ell") cfg.ell = v.get<double>(), cfg.ell_set = true;
    else if (key == "beta") cfg.beta = v.get<std::string>();
    else if (key == "F") cfg.F = v.get<std::string>();
    else if (key == "K") cfg.K = v.get<std::string>();
    else if (key == "Phi") cfg.Phi = v.get<std::string>();
    else if (key == "H") cfg.H = v.get<std::string>();
    else if (key == "A") cfg.A = v.get<std::string>();
    else if (key == "B") cfg.B = v.get<std::string>();
    else if (key == "f" || key == "gauge") cfg.gauge = v.get<std::string>();
    else if (key == "guards") cfg.guards = v.get<std::vector<std::string>>();
    else if (key == "c") cfg.c = v.get<double>();
    else if (key == "psi-c") cfg.psi_c = v.get<std::string>();
    else if (key == "psi-k") cfg.psi_k = v.get<std::string>();
    else if (key == "checks") cfg.checks = list(v);
    else if (key == "points" || key == "count") cfg.points = v.get<int>();
    else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
    else if (key == "tol") cfg.tol = v.get<double>();
    else if (key == "chart") cfg.chart = v.get<std::string>();
    else if (key == "ells") cfg.ells = v.get<std::vector<double>>();
    else if (key == "fixed-base") cfg.fixed_base = v.get<bool>();
    else if (key == "expr") cfg.expr = v.get<std::string>();
    else if (key == "vars") cfg.vars = v.get<std::string>();
    else if (key == "at") cfg.at = v.get<std::vector<double>>();
    else if (key == "order") cfg.order = v.get<int>();
    else if (key == "out") cfg.out = v.get<std::string>();
    else throw ConfigError("unknown config key '" + key + "'");
  }
}

nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
  ojson j;
  j["command"] = cfg.command;
  if (cfg.command == "eval") {
    j["expr"] = cfg.expr;
    j["vars"] = cfg.vars;
    j["at"] = cfg.at;
    j["order"] = cfg.order;
    return j;
  }
  j["case"] = cfg.case_name;
  j["ell"] = cfg.ell_set ? ojson(cfg.ell) : ojson(nullptr);
  const std::string& c = cfg.case_name;
  if (c == "class-a") j["beta"] = cfg.beta;
  if (c == "class-b") j["F"] = cfg.F;
  if (c == "class-c") cfg.K.empty() ? void(j["Phi"] = cfg.Phi) : void(j["K"] = cfg.K);
  if (c == "from-H") j["H"] = cfg.H;
  if (c == "from-G") {
    j["A"] = cfg.A;
    j["B"] = cfg.B;
  }
  j["f"] = cfg.gauge;
  j["guards"] = cfg.guards;
  j["c"] = cfg.c;
  j["psi-c"] = cfg.psi_c;
  j["psi-k"] = cfg.psi_k;
  j["checks"] = cfg.checks;
  j["points"] = cfg.points;
  j["seed"] = cfg.seed;
  j["tol"] = cfg.tol;
  if (cfg.command == "lift") j["chart"] = cfg.chart;
  if (cfg.command == "limit") {
    j["ells"] = cfg.ells;
    j["fixed-base"] = cfg.fixed_base;
  }
  return j;
}

RunResult run(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  RunResult res;
  ojson& rep = res.report;
  rep["schema"] = 1;
  rep["command"] = cfg.command;
  rep["config"] = config_to_json(cfg);
  rep["conventions"] = conventions();
  bool pass = true;
  try {
    if (cfg.command != "eval") {
      if (!(cfg.tol > 0.0)) throw ConfigError("tol must be positive");
      if (cfg.points < 1) throw ConfigError("points must be positive");
    }
    if (cfg.command == "verify") run_verify(cfg, rep, pass);
    else if (cfg.command == "lift") run_lift(cfg, rep, pass);
    else if (cfg.command == "limit") run_limit(cfg, rep, pass);
    else if (cfg.command == "eval") run_eval(cfg, rep);
    else throw ConfigError("unknown command '" + cfg.command + "'");
    res.status = pass ? RunStatus::Pass : RunStatus::CheckFailed;
  } catch (const ParseError& e) {
    fail_with(rep, res.status, RunStatus::ConfigError, "parse", e.what());
  } catch (const ConfigError& e) {
    fail_with(rep, res.status, RunStatus::ConfigError, "config", e.what());
  } catch (const SamplingExhausted& e) {
    fail_with(rep, res.status, RunStatus::SamplingError, "sampling", e.what());
  } catch (const GaugeViolation& e) {
    fail_with(rep, res.status, RunStatus::CheckFailed, "gauge", e.what());
  } catch (const HypothesisViolation& e) {
    fail_with(rep, res.status, RunStatus::CheckFailed, "hypothesis", e.what());
  } catch (const Error& e) {
    fail_with(rep, res.status, RunStatus::SamplingError, "domain", e.what());
  } catch (const std::exception& e) {
    fail_with(rep, res.status, RunStatus::ConfigError, "config", e.what());
  }
  rep["verdict"] = res.status == RunStatus::Pass ? "pass" : "fail";
  rep["status"] = static_cast<int>(res.status);
  rep["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

std::string serialize(const nlohmann::ordered_json& report) {
  ojson r = report;
  if (r.contains("wall_time_s")) {
    const ojson w = r["wall_time_s"];
    r.erase("wall_time_s");
    r["wall_time_s"] = w;
  }
  return r.dump(2) + "\n";
}

}  // namespace ewb
