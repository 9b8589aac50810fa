#include "ewbench/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ewb {
namespace {

struct Table {
  std::vector<MultiIndex> mono;
  std::array<int, kMaxOrder + 1> count{};
  // (i, j, k): monomial i times monomial j is monomial k; sorted by deg(k).
  std::vector<std::array<int, 3>> mul;
  std::array<std::size_t, kMaxOrder + 1> mul_end{};
  // next[k][v]: index of monomial k * x_v, or -1 past the top degree.
  std::vector<std::array<int, kMaxDim>> next;
  std::array<int, 625> lookup{};
};

int degree(const MultiIndex& a) { return a[0] + a[1] + a[2] + a[3]; }

int encode(const MultiIndex& a) {
  return ((a[0] * 5 + a[1]) * 5 + a[2]) * 5 + a[3];
}

Table build_table(int dim) {
  Table t;
  t.lookup.fill(-1);
  for (int deg = 0; deg <= kMaxOrder; ++deg) {
    // Enumerate exponents of total degree `deg`, lexicographically descending.
    MultiIndex a{};
    std::function<void(int, int)> rec = [&](int var, int left) {
      if (var == dim - 1) {
        a[var] = left;
        t.lookup[encode(a)] = static_cast<int>(t.mono.size());
        t.mono.push_back(a);
        return;
      }
      for (int e = left; e >= 0; --e) {
        a[var] = e;
        rec(var + 1, left - e);
      }
      a[var] = 0;
    };
    if (dim == 0) {
      if (deg == 0) t.mono.push_back(a);
    } else {
      rec(0, deg);
    }
    t.count[deg] = static_cast<int>(t.mono.size());
  }
  const int n = static_cast<int>(t.mono.size());
  t.next.assign(n, {-1, -1, -1, -1});
  for (int k = 0; k < n; ++k) {
    for (int v = 0; v < dim; ++v) {
      MultiIndex b = t.mono[k];
      ++b[v];
      if (degree(b) <= kMaxOrder) t.next[k][v] = t.lookup[encode(b)];
    }
  }
  for (int deg = 0; deg <= kMaxOrder; ++deg) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const int di = degree(t.mono[i]);
        const int dj = degree(t.mono[j]);
        if (di + dj != deg) continue;
        MultiIndex s{};
        for (int v = 0; v < kMaxDim; ++v) s[v] = t.mono[i][v] + t.mono[j][v];
        t.mul.push_back({i, j, t.lookup[encode(s)]});
      }
    }
    t.mul_end[deg] = t.mul.size();
  }
  return t;
}

const Table& table(int dim) {
  static const std::array<Table, kMaxDim + 1> tables = [] {
    std::array<Table, kMaxDim + 1> ts;
    for (int d = 0; d <= kMaxDim; ++d) ts[d] = build_table(d);
    return ts;
  }();
  return tables[dim];
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void check_compatible(const Jet& a, const Jet& b) {
  if (!a.is_constant() && !b.is_constant() && a.dim() != b.dim()) {
    throw ChartMismatch("jet dimension mismatch: " + std::to_string(a.dim()) +
                        " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

int monomial_count(int dim, int order) { return table(dim).count[order]; }

const MultiIndex& monomial(int dim, int k) { return table(dim).mono[k]; }

Jet Jet::constant(double c, int dim, int order) {
  if (order < 0 || order > kMaxOrder) {
    throw Error("jet order " + std::to_string(order) + " outside 0.." + std::to_string(kMaxOrder));
  }
  if (dim < 0 || dim > kMaxDim) throw Error("jet dimension " + std::to_string(dim) + " outside 0..4");
  Jet j;
  j.dim_ = static_cast<std::int8_t>(dim);
  j.order_ = static_cast<std::int8_t>(order);
  j.c_[0] = c;
  return j;
}

Jet Jet::variable(int index, double value, int dim, int order) {
  Jet j = constant(value, dim, order);
  if (order >= 1) j.c_[1 + index] = 1.0;
  return j;
}

int Jet::terms() const { return table(dim_).count[order_]; }

double Jet::coeff(const MultiIndex& alpha) const {
  if (degree(alpha) > order_) throw Error("jet order too low for requested partial");
  if (dim_ == 0) return degree(alpha) == 0 ? c_[0] : 0.0;
  for (int v = dim_; v < kMaxDim; ++v) {
    if (alpha[v] != 0) throw Error("partial index outside jet dimension");
  }
  return c_[table(dim_).lookup[encode(alpha)]];
}

double Jet::partial(const MultiIndex& alpha) const {
  double f = 1.0;
  for (int a : alpha) f *= factorial(a);
  return coeff(alpha) * f;
}

double Jet::d(int i) const {
  MultiIndex a{};
  ++a[i];
  return partial(a);
}

double Jet::d(int i, int j) const {
  MultiIndex a{};
  ++a[i];
  ++a[j];
  return partial(a);
}

double Jet::d(int i, int j, int k) const {
  MultiIndex a{};
  ++a[i];
  ++a[j];
  ++a[k];
  return partial(a);
}

Jet Jet::diff(int i) const {
  if (dim_ == 0) return Jet(0.0);
  if (order_ == 0) throw Error("cannot differentiate an order-0 jet");
  const Table& t = table(dim_);
  Jet r = constant(0.0, dim_, order_ - 1);
  const int n = t.count[order_ - 1];
  for (int k = 0; k < n; ++k) {
    const int up = t.next[k][i];
    r.c_[k] = (t.mono[k][i] + 1) * c_[up];
  }
  return r;
}

Jet Jet::truncate(int order) const {
  if (dim_ == 0 || order >= order_) return *this;
  Jet r = *this;
  r.order_ = static_cast<std::int8_t>(order);
  const int n = table(dim_).count[order];
  std::fill(r.c_.begin() + n, r.c_.end(), 0.0);
  return r;
}

Jet Jet::integrate(int i) const {
  if (dim_ == 0) throw Error("cannot integrate a constant jet without a chart");
  const Table& t = table(dim_);
  Jet r = constant(0.0, dim_, std::min<int>(order_ + 1, kMaxOrder));
  const int n = t.count[r.order_ - 1];
  for (int k = 0; k < n; ++k) {
    const int up = t.next[k][i];
    r.c_[up] = c_[k] / (t.mono[k][i] + 1);
  }
  return r;
}

Jet Jet::compose(std::span<const double> taylor) const {
  if (dim_ == 0) return Jet(taylor.empty() ? 0.0 : taylor[0]);
  Jet delta = *this;
  delta.c_[0] = 0.0;
  const int n = std::min<int>(order_, static_cast<int>(taylor.size()) - 1);
  Jet r = constant(taylor[n], dim_, order_);
  for (int k = n - 1; k >= 0; --k) {
    r = r * delta;
    r.c_[0] += taylor[k];
  }
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  check_compatible(*this, o);
  if (o.dim_ == 0) {
    c_[0] += o.c_[0];
    return *this;
  }
  if (dim_ == 0) {
    const double c = c_[0];
    *this = o;
    c_[0] += c;
    return *this;
  }
  if (o.order_ < order_) *this = truncate(o.order_);
  const int n = terms();
  for (int k = 0; k < n; ++k) c_[k] += o.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) { return *this += -o; }

Jet Jet::operator-() const {
  Jet r = *this;
  const int n = terms();
  for (int k = 0; k < n; ++k) r.c_[k] = -r.c_[k];
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  check_compatible(a, b);
  if (a.dim_ == 0 || b.dim_ == 0) {
    const Jet& j = a.dim_ == 0 ? b : a;
    const double s = a.dim_ == 0 ? a.c_[0] : b.c_[0];
    Jet r = j;
    const int n = r.terms();
    for (int k = 0; k < n; ++k) r.c_[k] *= s;
    return r;
  }
  const int order = std::min(a.order_, b.order_);
  const Table& t = table(a.dim_);
  Jet r = Jet::constant(0.0, a.dim_, order);
  const std::size_t end = t.mul_end[order];
  for (std::size_t m = 0; m < end; ++m) {
    const auto& [i, j, k] = t.mul[m];
    r.c_[k] += a.c_[i] * b.c_[j];
  }
  return r;
}

Jet& Jet::operator*=(const Jet& o) { return *this = *this * o; }

Jet operator/(const Jet& a, const Jet& b) {
  if (b.is_constant()) {
    if (b.value() == 0.0) throw DomainError("division by zero");
    return a * Jet(1.0 / b.value());
  }
  return a * reciprocal(b);
}

Jet& Jet::operator/=(const Jet& o) { return *this = *this / o; }

Jet embed(const Jet& j, int dim, std::span<const int> var_map) {
  if (j.dim_ == 0) return Jet::constant(j.value(), dim, j.order_);
  const Table& src = table(j.dim_);
  const Table& dst = table(dim);
  Jet r = Jet::constant(0.0, dim, j.order_);
  const int n = src.count[j.order_];
  for (int k = 0; k < n; ++k) {
    MultiIndex b{};
    for (int v = 0; v < j.dim_; ++v) b[var_map[v]] = src.mono[k][v];
    r.c_[dst.lookup[encode(b)]] = j.c_[k];
  }
  return r;
}

namespace {

// Taylor coefficients f^(k)(x0)/k! for k = 0..order.
using Coeffs = std::array<double, kMaxOrder + 1>;

Jet compose_coeffs(const Jet& a, const Coeffs& c) {
  return a.compose(std::span<const double>(c.data(), c.size()));
}

}  // namespace

Jet reciprocal(const Jet& a) {
  const double x0 = a.value();
  if (x0 == 0.0) throw DomainError("division by zero");
  Coeffs c{};
  double p = 1.0 / x0;
  for (int k = 0; k <= kMaxOrder; ++k) {
    c[k] = (k % 2 == 0 ? p : -p);
    p /= x0;
  }
  return compose_coeffs(a, c);
}

Jet exp(const Jet& a) {
  const double e = std::exp(a.value());
  Coeffs c{};
  for (int k = 0; k <= kMaxOrder; ++k) c[k] = e / factorial(k);
  return compose_coeffs(a, c);
}

Jet log(const Jet& a) {
  const double x0 = a.value();
  if (!(x0 > 0.0)) throw DomainError("log of non-positive value");
  Coeffs c{};
  c[0] = std::log(x0);
  double p = 1.0;
  for (int k = 1; k <= kMaxOrder; ++k) {
    p /= x0;
    c[k] = (k % 2 == 1 ? p : -p) / k;
  }
  return compose_coeffs(a, c);
}

namespace {

// Derivatives of sin/cos (period 4) or sinh/cosh (period 2).
Coeffs cyclic(double f0, double f1, bool hyperbolic) {
  const std::array<double, 4> cyc =
      hyperbolic ? std::array<double, 4>{f0, f1, f0, f1}
                 : std::array<double, 4>{f0, f1, -f0, -f1};
  Coeffs c{};
  for (int k = 0; k <= kMaxOrder; ++k) c[k] = cyc[k % 4] / factorial(k);
  return c;
}

}  // namespace

Jet sin(const Jet& a) {
  const double x0 = a.value();
  return compose_coeffs(a, cyclic(std::sin(x0), std::cos(x0), false));
}

Jet cos(const Jet& a) {
  const double x0 = a.value();
  return compose_coeffs(a, cyclic(std::cos(x0), -std::sin(x0), false));
}

Jet sinh(const Jet& a) {
  const double x0 = a.value();
  return compose_coeffs(a, cyclic(std::sinh(x0), std::cosh(x0), true));
}

Jet cosh(const Jet& a) {
  const double x0 = a.value();
  return compose_coeffs(a, cyclic(std::cosh(x0), std::sinh(x0), true));
}

Jet tanh(const Jet& a) {
  // d/dx P(T) = P'(T) (1 - T^2) generates the derivative polynomials in T.
  const double t = std::tanh(a.value());
  std::vector<double> poly{0.0, 1.0};
  Coeffs c{};
  for (int k = 0; k <= kMaxOrder; ++k) {
    double v = 0.0;
    for (std::size_t i = poly.size(); i-- > 0;) v = v * t + poly[i];
    c[k] = v / factorial(k);
    std::vector<double> dp(poly.size() + 1, 0.0);
    for (std::size_t i = 1; i < poly.size(); ++i) {
      dp[i - 1] += i * poly[i];
      dp[i + 1] -= i * poly[i];
    }
    poly = std::move(dp);
  }
  return compose_coeffs(a, c);
}

Jet pow(const Jet& a, double r) {
  const double rounded = std::round(r);
  if (rounded == r && std::abs(r) <= 64) return pow(a, static_cast<int>(rounded));
  const double x0 = a.value();
  if (!(x0 > 0.0)) throw DomainError("non-integer power of non-positive value");
  Coeffs c{};
  double binom = 1.0;
  for (int k = 0; k <= kMaxOrder; ++k) {
    c[k] = binom * std::pow(x0, r - k);
    binom *= (r - k) / (k + 1);
  }
  return compose_coeffs(a, c);
}

Jet sqrt(const Jet& a) {
  if (!(a.value() > 0.0)) throw DomainError("sqrt of non-positive value");
  return pow(a, 0.5);
}

Jet pow(const Jet& a, int n) {
  if (n < 0) return reciprocal(pow(a, -n));
  Jet result(1.0);
  Jet base = a;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

Jet apply(const std::function<Jet(const Jet&)>& f, const Jet& inner) {
  if (inner.is_constant()) return f(inner);
  const Jet var = Jet::variable(0, inner.value(), 1, inner.order());
  const Jet outer = f(var);
  Coeffs c{};
  for (int k = 0; k <= inner.order(); ++k) c[k] = outer.coeff({k, 0, 0, 0});
  return inner.compose(std::span<const double>(c.data(), inner.order() + 1));
}

Jet apply_derivative(const std::function<Jet(const Jet&)>& f, const Jet& inner) {
  const int order = inner.is_constant() ? 0 : inner.order();
  if (order + 1 > kMaxOrder) throw Error("derivative order exceeds jet capacity");
  const Jet var = Jet::variable(0, inner.value(), 1, order + 1);
  const Jet outer = f(var).diff(0);
  Coeffs c{};
  for (int k = 0; k <= order; ++k) c[k] = outer.coeff({k, 0, 0, 0});
  if (inner.is_constant()) return Jet(c[0]);
  return inner.compose(std::span<const double>(c.data(), order + 1));
}

}  // namespace ewb
