#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <string>

#include <Eigen/Core>

#include "ewbench/errors.hpp"
#include "ewbench/ew.hpp"
#include "ewbench/forms.hpp"
#include "ewbench/linalg.hpp"

namespace ewb {

template <int N>
using Mat = Eigen::Matrix<double, N, N>;

/// Metric components with first and second partials at a point.
/// dg[c](a, b) = d_c g_ab,  ddg[c][d](a, b) = d_c d_d g_ab.
template <int N>
struct MetricDerivs {
  Mat<N> g;
  std::array<Mat<N>, N> dg;
  std::array<std::array<Mat<N>, N>, N> ddg;
};

/// Connection coefficients gamma[a](b, c) = Gamma^a_bc and their partials
/// dgamma[e][a](b, c) = d_e Gamma^a_bc.
template <int N>
struct Connection {
  std::array<Mat<N>, N> gamma;
  std::array<std::array<Mat<N>, N>, N> dgamma;
};

/// R[a][b](c, d) = R^a_bcd.
template <int N>
using RiemannTensor = std::array<std::array<Mat<N>, N>, N>;

template <int N>
void check_symmetric(const Eigen::Matrix<Jet, N, N>& g) {
  for (int a = 0; a < N; ++a) {
    for (int b = a + 1; b < N; ++b) {
      const Jet diff = g(a, b) - g(b, a);
      for (int k = 0; k < diff.terms(); ++k) {
        if (diff.data()[k] != 0.0) throw SingularMetric("metric components are not symmetric");
      }
    }
  }
}

/// Needs jet order >= 2 for the second partials.
template <int N>
MetricDerivs<N> derivs_from_jets(const Eigen::Matrix<Jet, N, N>& g) {
  check_symmetric<N>(g);
  MetricDerivs<N> m;
  m.g = values(g);
  for (int c = 0; c < N; ++c) {
    for (int a = 0; a < N; ++a) {
      for (int b = 0; b < N; ++b) {
        const Jet& j = g(a, b);
        m.dg[c](a, b) = j.is_constant() ? 0.0 : j.d(c);
        for (int d = 0; d < N; ++d) m.ddg[c][d](a, b) = j.is_constant() ? 0.0 : j.d(c, d);
      }
    }
  }
  return m;
}

/// Independent oracle: metric partials by central finite differences.
template <int N>
MetricDerivs<N> derivs_from_fd(const std::function<Mat<N>(const ChartPoint&)>& g, const ChartPoint& pt) {
  MetricDerivs<N> m;
  m.g = g(pt);
  for (int a = 0; a < N; ++a) {
    for (int b = a; b < N; ++b) {
      const ValueField f = [&g, a, b](const ChartPoint& q) { return g(q)(a, b); };
      for (int c = 0; c < N; ++c) {
        std::array<int, 4> ic{};
        ic[c] = 1;
        m.dg[c](a, b) = m.dg[c](b, a) = fd_oracle(f, pt, ic);
        for (int d = 0; d < N; ++d) {
          std::array<int, 4> icd = ic;
          ++icd[d];
          m.ddg[c][d](a, b) = m.ddg[c][d](b, a) = fd_oracle(f, pt, icd);
        }
      }
    }
  }
  return m;
}

template <int N>
Mat<N> checked_inverse(const Mat<N>& g) {
  const auto [inv, det] = inverse_and_det<double, N>(g);
  if (!(std::abs(det) > 1e-12)) throw SingularMetric("|det g| <= 1e-12");
  return inv;
}

/// Levi-Civita: Gamma^a_bc = 1/2 g^ad (d_b g_dc + d_c g_bd - d_d g_bc).
template <int N>
Connection<N> christoffel(const MetricDerivs<N>& m) {
  const Mat<N> gi = checked_inverse<N>(m.g);
  // Lowered symbols L_d(b, c) = 1/2 (d_b g_dc + d_c g_bd - d_d g_bc) and their partials.
  std::array<Mat<N>, N> low;
  std::array<std::array<Mat<N>, N>, N> dlow;  // dlow[e][d]
  for (int d = 0; d < N; ++d) {
    for (int b = 0; b < N; ++b) {
      for (int c = 0; c < N; ++c) {
        low[d](b, c) = 0.5 * (m.dg[b](d, c) + m.dg[c](b, d) - m.dg[d](b, c));
        for (int e = 0; e < N; ++e) {
          dlow[e][d](b, c) = 0.5 * (m.ddg[e][b](d, c) + m.ddg[e][c](b, d) - m.ddg[e][d](b, c));
        }
      }
    }
  }
  // d_e g^ad = -g^am (d_e g_mn) g^nd.
  std::array<Mat<N>, N> dgi;
  for (int e = 0; e < N; ++e) dgi[e] = -gi * m.dg[e] * gi;

  Connection<N> conn;
  for (int a = 0; a < N; ++a) {
    conn.gamma[a].setZero();
    for (int e = 0; e < N; ++e) conn.dgamma[e][a].setZero();
    for (int d = 0; d < N; ++d) {
      conn.gamma[a] += gi(a, d) * low[d];
      for (int e = 0; e < N; ++e) conn.dgamma[e][a] += dgi[e](a, d) * low[d] + gi(a, d) * dlow[e][d];
    }
  }
  return conn;
}

/// Connection from jet-valued coefficients (order >= 1).
template <int N>
Connection<N> connection_from_jets(const std::array<Eigen::Matrix<Jet, N, N>, N>& gamma) {
  Connection<N> conn;
  for (int a = 0; a < N; ++a) {
    conn.gamma[a] = values(gamma[a]);
    for (int e = 0; e < N; ++e) {
      for (int b = 0; b < N; ++b) {
        for (int c = 0; c < N; ++c) {
          const Jet& j = gamma[a](b, c);
          conn.dgamma[e][a](b, c) = j.is_constant() ? 0.0 : j.d(e);
        }
      }
    }
  }
  return conn;
}

template <int N>
Connection<N> operator+(Connection<N> x, const Connection<N>& y) {
  for (int a = 0; a < N; ++a) {
    x.gamma[a] += y.gamma[a];
    for (int e = 0; e < N; ++e) x.dgamma[e][a] += y.dgamma[e][a];
  }
  return x;
}

/// R^a_bcd = d_c Gamma^a_db - d_d Gamma^a_cb + Gamma^a_ce Gamma^e_db - Gamma^a_de Gamma^e_cb.
template <int N>
RiemannTensor<N> riemann(const Connection<N>& k) {
  RiemannTensor<N> R;
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) {
      for (int c = 0; c < N; ++c) {
        for (int d = 0; d < N; ++d) {
          double r = k.dgamma[c][a](d, b) - k.dgamma[d][a](c, b);
          for (int e = 0; e < N; ++e) {
            r += k.gamma[a](c, e) * k.gamma[e](d, b) - k.gamma[a](d, e) * k.gamma[e](c, b);
          }
          R[a][b](c, d) = r;
        }
      }
    }
  }
  return R;
}

/// R_ab = d_c Gamma^c_ab - d_a Gamma^c_cb + Gamma^c_cd Gamma^d_ab - Gamma^c_ad Gamma^d_cb.
template <int N>
Mat<N> ricci(const Connection<N>& k) {
  Mat<N> R = Mat<N>::Zero();
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) {
      double r = 0.0;
      for (int c = 0; c < N; ++c) {
        r += k.dgamma[c][c](a, b) - k.dgamma[a][c](c, b);
        for (int d = 0; d < N; ++d) r += k.gamma[c](c, d) * k.gamma[d](a, b) - k.gamma[c](a, d) * k.gamma[d](c, b);
      }
      R(a, b) = r;
    }
  }
  return R;
}

/// R_abcd R^abcd.
template <int N>
double kretschmann(const RiemannTensor<N>& R, const Mat<N>& g) {
  const Mat<N> gi = checked_inverse<N>(g);
  // Fully lowered and fully raised copies.
  RiemannTensor<N> low, up;
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) {
      low[a][b].setZero();
      for (int m = 0; m < N; ++m) low[a][b] += g(a, m) * R[m][b];
    }
  }
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) {
      Mat<N> t = Mat<N>::Zero();
      for (int n = 0; n < N; ++n) t += gi(b, n) * R[a][n];
      up[a][b] = gi * t * gi;
    }
  }
  double k = 0.0;
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) k += (low[a][b].array() * up[a][b].array()).sum();
  }
  return k;
}

struct CurvatureReport4 {
  Connection<4> christoffel;
  Mat<4> ricci;
  double kretschmann = 0.0;
};

CurvatureReport4 curvature(const MetricDerivs<4>& m);

/// 4D metric field and Maxwell potential on a 4-chart.
using MetricField4 = std::function<Metric4(const ChartPoint&, int order)>;

struct SpacetimeData {
  Chart chart;
  MetricField4 g;
  FormField A;
  double ell = 1.0;
  std::string description;
};

/// (*F)_ab = 1/2 sqrt|det g| eps_abcd F^cd, eps_0123 = +1 in chart order.
Form hodge4(const Form& F, const Metric4& g);

/// d(* dA); four 3-form components.
Form maxwell_residual(const SpacetimeData& st, const ChartPoint& pt);

/// R_ab + cosmological 3/l^2 g_ab + coupling F_ac F_b^c - (scale/2) F_cd F^cd g_ab.
struct EMConventions {
  double coupling = 2.0;
  double f2_scale = 1.0;
  bool cosmological = true;
};

Mat<4> em_residual(const SpacetimeData& st, const ChartPoint& pt, const EMConventions& conv = {});

double kretschmann(const SpacetimeData& st, const ChartPoint& pt);
/// F_ab F^ab.
double field_norm(const SpacetimeData& st, const ChartPoint& pt);
Mat<4> metric_values(const SpacetimeData& st, const ChartPoint& pt);

/// g = (l/z)^2 (dz^2 + dx^2 + dy^2 - dt^2) on (z, x, y, t), A = 0.
SpacetimeData poincare_ads(double ell);
/// dx^2 + dy^2 + dz^2 - dt^2 on (x, y, z, t), A = 0.
SpacetimeData minkowski();

struct WeylResidual {
  double compat = 0.0;
  double ew = 0.0;
};

/// D = Levi-Civita(h) - 1/2 (delta^a_b w_c + delta^a_c w_b - h_bc w^a).
/// compat: max |D h - w (x) h|;  ew: max |trace-free part of Sym Ric(D)|.
WeylResidual weyl_ricci_residual(const EWStructure& s, const ChartPoint& pt);

}  // namespace ewb
