#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ewbench/ew.hpp"
#include "ewbench/sample.hpp"

namespace ewb {

/// Function of one variable applied to a (possibly multivariate) jet.
using UnivariateFn = std::function<Jet(const Jet&)>;

/// Univariate function from an expression in `var` (plus bound parameters).
UnivariateFn univariate(const Expr& e, std::vector<double> params = {});

/// K(s) = s Phi'(s).
UnivariateFn k_from_phi(UnivariateFn phi);

/// u = 4x/l, w = 0 on (x, y, t).  V = 2/l.
EWStructure heisenberg(double ell);

/// Closed forms on (p, y, t) with h = (dy + p dt)^2 + 4 Q dt, e1 = -Q - p dy,
/// e2 = dy - p dt, e3 = dt and V half the dy-component of omega.
///   A: Q = dp/p - beta_y/beta (dy + p dt) - beta_t/beta dt,
///      omega = -p (dy + p dt) + 2 p beta_y/beta dt;  beta_t + beta_yy = 0.
///   B: Q = F dp,  omega = -(dy + p dt)/F.
///   C: Q = 2K/p dp - y/(2t) dy + (y^2/(4t^2) + K/t - p y/(2t)) dt,
///      omega = -p/(2K) (dy + p dt - y/t dt),  K evaluated at s = t p^2.
EWStructure class_a(ScalarField beta, std::string provenance = "class-a");
EWStructure class_b(ScalarField F, std::string provenance = "class-b");
EWStructure class_c(UnivariateFn K, std::string provenance = "class-c");

/// Class A with the opposite sign on the 4 Q dt term.  Not Einstein-Weyl.
EWStructure class_a_flipped(ScalarField beta);

/// beta_t + beta_yy on (p, y, t).
double heat_residual(const ScalarField& beta, const ChartPoint& pt);

/// G(p, y, t) = A(p, t) + p B(y, t), stored through A_p and B.
struct GeneratorG {
  ScalarField Ap;
  ScalarField B;
  std::string provenance;
};

/// A and B given as fields on (p, y, t); A_p is taken by differentiation.
GeneratorG generator(ScalarField A, ScalarField B, std::string provenance = "G");
/// A_p = ln p, B = -ln beta.
GeneratorG generator_a(ScalarField beta);
/// A_pp = F, B = 0.
GeneratorG generator_b(ScalarField F);
/// A_p = Phi(t p^2), B = -y^2/(4t).
GeneratorG generator_c(UnivariateFn phi);

/// Legendre dual: u = p, w = -p B_y, x = -G_p.  Throws DegenerateLegendre
/// when |G_pp| < 1e-10.
EWStructure from_generator(const GeneratorG& g);

/// G_yp^2 - G_yy G_pp - G_pt.
double g_equation_residual(const GeneratorG& g, const ChartPoint& pt);

/// 2 B_y B_yy - p B_yyy A_pp - B_yt.
double branch_residual(const GeneratorG& g, const ChartPoint& pt);

/// H = (y^2 - 4xt)^(-1/2); DomainError where y^2 - 4xt <= 0.
Jet fundamental_H(const ChartPoint& pt, int order);
ScalarField fundamental_field();

/// Guard rejecting points where |field| <= threshold (or field <= threshold
/// when `signed_` is set).
Guard field_guard(ScalarField f, double threshold, std::string label, bool signed_ = true);

/// A certified structure with its sampling domain.  `domain.seed` and
/// `domain.count` are left for the caller.
struct CatalogEntry {
  std::string name;
  EWStructure structure;
  std::optional<GeneratorG> generator;
  SampleDomain domain;
};

CatalogEntry heisenberg_entry(double ell);
/// Samples where beta > beta_floor; curvature of the lift grows like 1/beta^2.
CatalogEntry class_a_entry(const std::string& beta, double beta_floor = 0.1);
CatalogEntry class_b_entry(const std::string& F, double ell = 1.0);
CatalogEntry class_c_entry(const std::string& phi);
/// Class C from K given directly as an expression in s (and l).
CatalogEntry class_c_entry_k(const std::string& K, double ell = 1.0);

/// Default presets: Heisenberg (l = 1), beta in {y^2-2t, e^t sin y},
/// F in {-1/4, 1, 1+p^2}, Phi in {2^(-4/3) s^(-1/3), s}.
std::vector<CatalogEntry> default_catalog();

}  // namespace ewb
