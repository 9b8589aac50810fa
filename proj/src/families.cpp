#include "ewbench/families.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "ewbench/errors.hpp"

namespace ewb {

namespace {

const std::vector<std::string> kPYT = {"p", "y", "t"};
const std::vector<std::string> kPYTEll = {"p", "y", "t", "ell"};

Jet zero(const ChartPoint& pt, int order) { return Jet::constant(0.0, pt.dim, order); }
Jet one(const ChartPoint& pt, int order) { return Jet::constant(1.0, pt.dim, order); }
Jet coord(int i, const ChartPoint& pt, int order) { return Jet::variable(i, pt[i], pt.dim, order); }

Jet chart_jet(const Jet& j, const ChartPoint& pt, int order) {
  return j.is_constant() ? Jet::constant(j.value(), pt.dim, order) : j;
}

// Shared frame for the closed-form classes.
EWStructure closed_form(FormField Q, FormField omega, std::string provenance) {
  EWStructure s;
  s.chart = Chart::pyt();
  s.provenance = std::move(provenance);
  s.frame[0] = [Q](const ChartPoint& pt, int order) {
    const Form q = Q(pt, order);
    return one_form({-q[0], -q[1] - coord(0, pt, order), -q[2]});
  };
  s.frame[1] = [](const ChartPoint& pt, int order) {
    return one_form({zero(pt, order), one(pt, order), -coord(0, pt, order)});
  };
  s.frame[2] = [](const ChartPoint& pt, int order) {
    return one_form({zero(pt, order), zero(pt, order), one(pt, order)});
  };
  s.omega = omega;
  s.V = [omega](const ChartPoint& pt, int order) { return Jet(0.5) * omega(pt, order)[1]; };
  return s;
}

struct ClassAParts {
  FormField Q;
  FormField omega;
};

ClassAParts class_a_parts(ScalarField beta) {
  const auto ratios = [beta](const ChartPoint& pt, int order) {
    const Jet b = beta(pt, order + 1);
    if (std::abs(b.value()) < 1e-12) throw DomainError("class A: beta vanishes");
    const Jet inv = reciprocal(b.truncate(order));
    return std::pair{b.diff(1) * inv, b.diff(2) * inv};
  };
  ClassAParts parts;
  parts.Q = [ratios](const ChartPoint& pt, int order) {
    const auto [by, bt] = ratios(pt, order);
    const Jet p = coord(0, pt, order);
    return one_form({reciprocal(p), -by, -p * by - bt});
  };
  parts.omega = [ratios](const ChartPoint& pt, int order) {
    const auto [by, bt] = ratios(pt, order);
    const Jet p = coord(0, pt, order);
    return one_form({zero(pt, order), -p, -p * p + Jet(2.0) * p * by});
  };
  return parts;
}

Guard box_free_guard(ScalarField f, double threshold, std::string label) {
  return field_guard(std::move(f), threshold, std::move(label), false);
}

}  // namespace

UnivariateFn univariate(const Expr& e, std::vector<double> params) {
  return [e, params = std::move(params)](const Jet& s) {
    std::vector<Jet> slots;
    slots.reserve(1 + params.size());
    slots.push_back(s);
    for (double v : params) slots.emplace_back(v);
    return e.evaluate(slots);
  };
}

UnivariateFn k_from_phi(UnivariateFn phi) {
  return [phi = std::move(phi)](const Jet& s) { return s * apply_derivative(phi, s); };
}

EWStructure heisenberg(double ell) {
  if (ell == 0.0) throw DomainError("heisenberg: l must be nonzero");
  const ScalarField u = [ell](const ChartPoint& pt, int order) { return Jet(4.0 / ell) * coord(0, pt, order); };
  EWStructure s = from_uw(u, constant_field(0.0), "heisenberg");
  return s;
}

EWStructure class_a(ScalarField beta, std::string provenance) {
  ClassAParts parts = class_a_parts(std::move(beta));
  return closed_form(parts.Q, parts.omega, std::move(provenance));
}

EWStructure class_a_flipped(ScalarField beta) {
  ClassAParts parts = class_a_parts(std::move(beta));
  const FormField negQ = [Q = parts.Q](const ChartPoint& pt, int order) { return -Q(pt, order); };
  return closed_form(negQ, parts.omega, "class-a (flipped Q sign)");
}

EWStructure class_b(ScalarField F, std::string provenance) {
  const auto f = [F](const ChartPoint& pt, int order) {
    const Jet v = chart_jet(F(pt, order), pt, order);
    if (std::abs(v.value()) < 1e-12) throw DomainError("class B: F vanishes");
    return v;
  };
  const FormField Q = [f](const ChartPoint& pt, int order) {
    return one_form({f(pt, order), zero(pt, order), zero(pt, order)});
  };
  const FormField omega = [f](const ChartPoint& pt, int order) {
    const Jet inv = reciprocal(f(pt, order));
    return one_form({zero(pt, order), -inv, -inv * coord(0, pt, order)});
  };
  return closed_form(Q, omega, std::move(provenance));
}

EWStructure class_c(UnivariateFn K, std::string provenance) {
  const auto k = [K](const ChartPoint& pt, int order) {
    const Jet p = coord(0, pt, order);
    const Jet t = coord(2, pt, order);
    const Jet v = chart_jet(K(t * p * p), pt, order);
    if (std::abs(v.value()) < 1e-12) throw DomainError("class C: K vanishes");
    return v;
  };
  const FormField Q = [k](const ChartPoint& pt, int order) {
    if (pt[2] == 0.0) throw DomainError("class C: t vanishes");
    const Jet p = coord(0, pt, order);
    const Jet y = coord(1, pt, order);
    const Jet tinv = reciprocal(coord(2, pt, order));
    const Jet kk = k(pt, order);
    return one_form({Jet(2.0) * kk / p, Jet(-0.5) * y * tinv,
                     Jet(0.25) * y * y * tinv * tinv + kk * tinv - Jet(0.5) * p * y * tinv});
  };
  const FormField omega = [k](const ChartPoint& pt, int order) {
    if (pt[2] == 0.0) throw DomainError("class C: t vanishes");
    const Jet p = coord(0, pt, order);
    const Jet y = coord(1, pt, order);
    const Jet tinv = reciprocal(coord(2, pt, order));
    const Jet pre = Jet(-0.5) * p / k(pt, order);
    return one_form({zero(pt, order), pre, pre * (p - y * tinv)});
  };
  return closed_form(Q, omega, std::move(provenance));
}

double heat_residual(const ScalarField& beta, const ChartPoint& pt) {
  const Jet b = beta(pt, 2);
  return b.d(2) + b.d(1, 1);
}

GeneratorG generator(ScalarField A, ScalarField B, std::string provenance) {
  return {partial_field(std::move(A), 0), std::move(B), std::move(provenance)};
}

GeneratorG generator_a(ScalarField beta) {
  return {[](const ChartPoint& pt, int order) { return log(coord(0, pt, order)); },
          [beta](const ChartPoint& pt, int order) { return -log(beta(pt, order)); }, "G_A"};
}

GeneratorG generator_b(ScalarField F) {
  return {[F](const ChartPoint& pt, int order) {
            if (order == 0) return zero(pt, 0);
            return chart_jet(F(pt, order - 1), pt, order - 1).integrate(0);
          },
          constant_field(0.0), "G_B"};
}

GeneratorG generator_c(UnivariateFn phi) {
  return {[phi](const ChartPoint& pt, int order) {
            const Jet p = coord(0, pt, order);
            return chart_jet(phi(coord(2, pt, order) * p * p), pt, order);
          },
          [](const ChartPoint& pt, int order) {
            const Jet y = coord(1, pt, order);
            return Jet(-0.25) * y * y / coord(2, pt, order);
          },
          "G_C"};
}

EWStructure from_generator(const GeneratorG& g) {
  // Gp = A_p + B; every coframe entry needs one derivative of Gp.
  const ScalarField Gp = [g](const ChartPoint& pt, int order) {
    return chart_jet(g.Ap(pt, order) + g.B(pt, order), pt, order);
  };
  const auto second = [Gp](const ChartPoint& pt, int order) {
    const Jet gp = Gp(pt, order + 1);
    if (std::abs(gp.d(0)) < 1e-10) throw DegenerateLegendre("|G_pp| < 1e-10");
    return std::array<Jet, 3>{gp.diff(0), gp.diff(1), gp.diff(2)};
  };
  EWStructure s;
  s.chart = Chart::pyt();
  s.provenance = g.provenance + " (Legendre)";
  s.frame[0] = [second, B = g.B](const ChartPoint& pt, int order) {
    const auto [gpp, gpy, gpt] = second(pt, order);
    const Jet p = coord(0, pt, order);
    const Jet by = chart_jet(B(pt, order + 1), pt, order + 1).diff(1);
    return one_form({-gpp, -gpy - p, -gpt - p * by});
  };
  s.frame[1] = [](const ChartPoint& pt, int order) {
    return one_form({zero(pt, order), one(pt, order), -coord(0, pt, order)});
  };
  s.frame[2] = [](const ChartPoint& pt, int order) {
    return one_form({zero(pt, order), zero(pt, order), one(pt, order)});
  };
  s.omega = [second](const ChartPoint& pt, int order) {
    const auto [gpp, gpy, gpt] = second(pt, order);
    const Jet inv = reciprocal(gpp);
    const Jet p = coord(0, pt, order);
    return one_form({zero(pt, order), -inv, -(p + Jet(2.0) * gpy) * inv});
  };
  s.V = [second](const ChartPoint& pt, int order) { return Jet(-0.5) * reciprocal(second(pt, order)[0]); };
  return s;
}

double g_equation_residual(const GeneratorG& g, const ChartPoint& pt) {
  const Jet gp = chart_jet(g.Ap(pt, 1) + g.B(pt, 1), pt, 1);
  const Jet b = chart_jet(g.B(pt, 2), pt, 2);
  const double gyp = gp.d(1);
  const double gyy = pt[0] * b.d(1, 1);
  return gyp * gyp - gyy * gp.d(0) - gp.d(2);
}

double branch_residual(const GeneratorG& g, const ChartPoint& pt) {
  const Jet b = chart_jet(g.B(pt, 3), pt, 3);
  const Jet ap = chart_jet(g.Ap(pt, 1), pt, 1);
  return 2.0 * b.d(1) * b.d(1, 1) - pt[0] * b.d(1, 1, 1) * ap.d(0) - b.d(1, 2);
}

Jet fundamental_H(const ChartPoint& pt, int order) {
  const Jet y = coord(1, pt, order);
  const Jet r2 = y * y - Jet(4.0) * coord(0, pt, order) * coord(2, pt, order);
  if (!(r2.value() > 0.0)) throw DomainError("fundamental solution: y^2 - 4xt <= 0");
  return pow(r2, -0.5);
}

ScalarField fundamental_field() { return fundamental_H; }

Guard field_guard(ScalarField f, double threshold, std::string label, bool signed_) {
  return {[f = std::move(f), signed_](const ChartPoint& pt) {
            const double v = f(pt, 0).value();
            return signed_ ? v : std::abs(v);
          },
          threshold, std::move(label)};
}

CatalogEntry heisenberg_entry(double ell) {
  char name[64];
  std::snprintf(name, sizeof name, "heisenberg[l=%g]", ell);
  return {name, heisenberg(ell), std::nullopt, {{{-1, 1}, {-1, 1}, {-1, 1}}, {}, 0, 0}};
}

CatalogEntry class_a_entry(const std::string& beta, double beta_floor) {
  const ScalarField b = expr_field(parse(beta, kPYT));
  char label[48];
  std::snprintf(label, sizeof label, "beta > %g", beta_floor);
  SampleDomain d{{{0.5, 2.0}, {-2.0, 2.0}, {-1.0, 1.0}}, {field_guard(b, beta_floor, label)}, 0, 0};
  if (beta.find("sin") != std::string::npos) d.box[1] = {0.3, 2.8};
  return {"class-a[beta=" + beta + "]", class_a(b, "class-a[beta=" + beta + "]"), generator_a(b), d};
}

CatalogEntry class_b_entry(const std::string& F, double ell) {
  const ScalarField f = expr_field(parse(F, kPYTEll), {ell});
  SampleDomain d{{{-2.0, 2.0}, {-1.0, 1.0}, {-1.0, 1.0}}, {box_free_guard(f, 0.1, "|F| > 0.1")}, 0, 0};
  return {"class-b[F=" + F + "]", class_b(f, "class-b[F=" + F + "]"), generator_b(f), d};
}

CatalogEntry class_c_entry(const std::string& phi) {
  const UnivariateFn Phi = univariate(parse(phi, {"s"}));
  const UnivariateFn K = k_from_phi(Phi);
  const ScalarField kfield = [K](const ChartPoint& pt, int order) {
    const Jet p = coord(0, pt, order);
    return chart_jet(K(coord(2, pt, order) * p * p), pt, order);
  };
  SampleDomain d{{{0.5, 2.0}, {-1.0, 1.0}, {0.5, 2.0}}, {box_free_guard(kfield, 1e-3, "|K| > 1e-3")}, 0, 0};
  return {"class-c[Phi=" + phi + "]", class_c(K, "class-c[Phi=" + phi + "]"), generator_c(Phi), d};
}

CatalogEntry class_c_entry_k(const std::string& K, double ell) {
  const UnivariateFn k = univariate(parse(K, {"s", "ell"}), {ell});
  const ScalarField kfield = [k](const ChartPoint& pt, int order) {
    const Jet p = coord(0, pt, order);
    return chart_jet(k(coord(2, pt, order) * p * p), pt, order);
  };
  SampleDomain d{{{0.5, 2.0}, {-1.0, 1.0}, {0.5, 2.0}}, {box_free_guard(kfield, 1e-3, "|K| > 1e-3")}, 0, 0};
  return {"class-c[K=" + K + "]", class_c(k, "class-c[K=" + K + "]"), std::nullopt, d};
}

std::vector<CatalogEntry> default_catalog() {
  std::vector<CatalogEntry> out;
  out.push_back(heisenberg_entry(1.0));
  out.push_back(class_a_entry("y^2-2*t"));
  out.push_back(class_a_entry("exp(t)*sin(y)"));
  out.push_back(class_b_entry("-ell/4", 1.0));
  out.push_back(class_b_entry("1"));
  out.push_back(class_b_entry("1+p^2"));
  out.push_back(class_c_entry("2^(-4/3)*s^(-1/3)"));
  out.push_back(class_c_entry("s"));
  return out;
}

}  // namespace ewb
