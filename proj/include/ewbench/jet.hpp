#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "ewbench/errors.hpp"

namespace ewb {

inline constexpr int kMaxDim = 4;
inline constexpr int kMaxOrder = 4;
// C(kMaxDim + kMaxOrder, kMaxOrder)
inline constexpr int kMaxTerms = 70;

using MultiIndex = std::array<int, kMaxDim>;

/// Truncated multivariate Taylor polynomial of a scalar field at a point.
///
/// Coefficients are stored per monomial (graded order), so symmetric
/// derivatives are stored once.  A jet of order N carries every partial
/// derivative of total degree <= N; differentiation returns a jet of order
/// N - 1.  A default-constructed or double-constructed jet is a pure constant
/// (dim 0) that broadcasts against jets of any dimension and order.
class Jet {
 public:
  Jet() = default;
  Jet(double c) { c_[0] = c; }  // NOLINT(google-explicit-constructor)

  static Jet constant(double c, int dim, int order);
  static Jet variable(int index, double value, int dim, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }
  bool is_constant() const { return dim_ == 0; }
  int terms() const;

  double value() const { return c_[0]; }
  double d(int i) const;
  double d(int i, int j) const;
  double d(int i, int j, int k) const;
  /// Partial derivative with the given per-variable exponents.
  double partial(const MultiIndex& alpha) const;
  /// Raw Taylor coefficient (partial / alpha!).
  double coeff(const MultiIndex& alpha) const;

  Jet diff(int i) const;
  Jet truncate(int order) const;
  /// Antiderivative along variable i with zero constant term.  Exact only for
  /// jets of fields that depend on variable i alone.
  Jet integrate(int i) const;
  /// sum_k taylor[k] * (x - x0)^k, where x0 = value().
  Jet compose(std::span<const double> taylor) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  Jet operator-() const;

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);

  const double* data() const { return c_.data(); }

 private:
  friend Jet embed(const Jet& j, int dim, std::span<const int> var_map);

  std::array<double, kMaxTerms> c_{};
  std::int8_t dim_ = 0;
  std::int8_t order_ = kMaxOrder;
};

/// Re-express a jet in a larger chart; variable i of `j` becomes variable
/// var_map[i] of the result.
Jet embed(const Jet& j, int dim, std::span<const int> var_map);

Jet reciprocal(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
Jet tanh(const Jet& a);
Jet sqrt(const Jet& a);
Jet pow(const Jet& a, double r);
Jet pow(const Jet& a, int n);

/// Composes a univariate function, given as a jet-valued callable, with
/// `inner`.  The callable receives a one-dimensional variable jet.
Jet apply(const std::function<Jet(const Jet&)>& f, const Jet& inner);
/// Like apply(), but for the derivative f' of the callable.
Jet apply_derivative(const std::function<Jet(const Jet&)>& f, const Jet& inner);

/// Number of monomials of total degree <= order in dim variables.
int monomial_count(int dim, int order);
/// Exponent tuple of the k-th monomial in a dim-variable jet.
const MultiIndex& monomial(int dim, int k);

}  // namespace ewb

namespace Eigen {

template <>
struct NumTraits<ewb::Jet> : NumTraits<double> {
  using Real = ewb::Jet;
  using NonInteger = ewb::Jet;
  using Nested = ewb::Jet;
  using Literal = ewb::Jet;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 8,
    MulCost = 64
  };
};

}  // namespace Eigen
