#include "ewbench/curv.hpp"

#include <algorithm>

namespace ewb {

namespace {

int perm_sign(std::array<int, 4> p) {
  int sign = 1;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) sign = -sign;
    }
  }
  return sign;
}

template <int N>
Eigen::Matrix<Jet, N, N> form_matrix(const Form& F) {
  Eigen::Matrix<Jet, N, N> m;
  for (int a = 0; a < N; ++a) {
    m(a, a) = Jet(0.0);
    for (int b = a + 1; b < N; ++b) {
      m(a, b) = F.at({a, b});
      m(b, a) = -m(a, b);
    }
  }
  return m;
}

template <int N>
std::pair<Eigen::Matrix<Jet, N, N>, Jet> checked_inverse_jet(const Eigen::Matrix<Jet, N, N>& g) {
  auto [inv, det] = inverse_and_det<Jet, N>(g);
  if (!(std::abs(det.value()) > 1e-12)) throw SingularMetric("|det g| <= 1e-12");
  return {inv, det};
}

Form zero_one_form4(const ChartPoint& pt, int order) {
  const Jet z = Jet::constant(0.0, pt.dim, order);
  return one_form({z, z, z, z});
}

}  // namespace

CurvatureReport4 curvature(const MetricDerivs<4>& m) {
  CurvatureReport4 r;
  r.christoffel = christoffel<4>(m);
  r.ricci = ricci<4>(r.christoffel);
  r.kretschmann = kretschmann<4>(riemann<4>(r.christoffel), m.g);
  return r;
}

Form hodge4(const Form& F, const Metric4& g) {
  if (F.degree() != 2 || F.dim() != 4) throw ChartMismatch("hodge4 takes a 2-form on a 4-chart");
  check_symmetric<4>(g);
  const auto [gi, det] = checked_inverse_jet<4>(g);
  const Eigen::Matrix<Jet, 4, 4> Flow = form_matrix<4>(F);
  const Eigen::Matrix<Jet, 4, 4> Fup = gi * Flow * gi;
  const Jet vol = sqrt(det.value() < 0.0 ? -det : det);
  Form r(2, 4);
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      Jet acc(0.0);
      for (int c = 0; c < 4; ++c) {
        for (int d = c + 1; d < 4; ++d) {
          const int s = perm_sign({a, b, c, d});
          if (s > 0) acc += Fup(c, d);
          if (s < 0) acc -= Fup(c, d);
        }
      }
      r.at({a, b}) = vol * acc;
    }
  }
  return r;
}

Form maxwell_residual(const SpacetimeData& st, const ChartPoint& pt) {
  const Form F = ext_d(st.A(pt, 2));
  return ext_d(hodge4(F, st.g(pt, 1)));
}

Mat<4> metric_values(const SpacetimeData& st, const ChartPoint& pt) { return values(st.g(pt, 0)); }

namespace {

struct FieldAtPoint {
  Mat<4> g, gi, F;
};

FieldAtPoint field_at(const SpacetimeData& st, const ChartPoint& pt, const Mat<4>& g) {
  FieldAtPoint f;
  f.g = g;
  f.gi = checked_inverse<4>(g);
  f.F = values(form_matrix<4>(ext_d(st.A(pt, 1))));
  return f;
}

double norm2(const FieldAtPoint& f) { return (f.F.array() * (f.gi * f.F * f.gi).array()).sum(); }

}  // namespace

Mat<4> em_residual(const SpacetimeData& st, const ChartPoint& pt, const EMConventions& conv) {
  const MetricDerivs<4> m = derivs_from_jets<4>(st.g(pt, 2));
  const Mat<4> R = ricci<4>(christoffel<4>(m));
  const FieldAtPoint f = field_at(st, pt, m.g);
  // F_ac F_b^c = F_ac g^cd F_bd.
  const Mat<4> FF = f.F * f.gi * f.F.transpose();
  Mat<4> E = R + conv.coupling * FF - 0.5 * conv.f2_scale * norm2(f) * m.g;
  if (conv.cosmological) E += 3.0 / (st.ell * st.ell) * m.g;
  return E;
}

double kretschmann(const SpacetimeData& st, const ChartPoint& pt) {
  const MetricDerivs<4> m = derivs_from_jets<4>(st.g(pt, 2));
  return kretschmann<4>(riemann<4>(christoffel<4>(m)), m.g);
}

double field_norm(const SpacetimeData& st, const ChartPoint& pt) {
  return norm2(field_at(st, pt, metric_values(st, pt)));
}

SpacetimeData poincare_ads(double ell) {
  SpacetimeData st;
  st.chart = {{"z", "x", "y", "t"}};
  st.ell = ell;
  st.description = "poincare-ads";
  st.g = [ell](const ChartPoint& pt, int order) {
    if (pt[0] == 0.0) throw DomainError("poincare patch: z = 0");
    const Jet z = Jet::variable(0, pt[0], pt.dim, order);
    const Jet f = Jet(ell * ell) / (z * z);
    Metric4 g;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) g(a, b) = Jet::constant(0.0, pt.dim, order);
    }
    g(0, 0) = f;
    g(1, 1) = f;
    g(2, 2) = f;
    g(3, 3) = -f;
    return g;
  };
  st.A = zero_one_form4;
  return st;
}

SpacetimeData minkowski() {
  SpacetimeData st;
  st.chart = {{"x", "y", "z", "t"}};
  st.description = "minkowski";
  st.g = [](const ChartPoint& pt, int order) {
    Metric4 g;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) g(a, b) = Jet::constant(a == b ? (a == 3 ? -1.0 : 1.0) : 0.0, pt.dim, order);
    }
    return g;
  };
  st.A = zero_one_form4;
  return st;
}

WeylResidual weyl_ricci_residual(const EWStructure& s, const ChartPoint& pt) {
  const Metric3 h2 = s.metric(pt, 2);
  const MetricDerivs<3> m = derivs_from_jets<3>(h2);
  const Connection<3> lc = christoffel<3>(m);

  Metric3 h1;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) h1(a, b) = h2(a, b).truncate(1);
  }
  const auto [hi, det] = checked_inverse_jet<3>(h1);
  const Form w = s.omega(pt, 1);
  std::array<Jet, 3> wup;
  for (int a = 0; a < 3; ++a) {
    wup[a] = Jet(0.0);
    for (int b = 0; b < 3; ++b) wup[a] += hi(a, b) * w[b];
  }
  // Correction C^a_bc, subtracted from Levi-Civita.
  std::array<Eigen::Matrix<Jet, 3, 3>, 3> C;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        Jet v = Jet(-0.5) * h1(b, c) * wup[a];
        if (a == b) v += Jet(0.5) * w[c];
        if (a == c) v += Jet(0.5) * w[b];
        C[a](b, c) = -v;
      }
    }
  }
  const Connection<3> D = lc + connection_from_jets<3>(C);

  WeylResidual r;
  const Mat<3>& h = m.g;
  for (int c = 0; c < 3; ++c) {
    const double wc = w[c].value();
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        double v = m.dg[c](a, b) - wc * h(a, b);
        for (int d = 0; d < 3; ++d) v -= D.gamma[d](c, a) * h(d, b) + D.gamma[d](c, b) * h(a, d);
        r.compat = std::max(r.compat, std::abs(v));
      }
    }
  }
  const Mat<3> Ric = ricci<3>(D);
  const Mat<3> S = 0.5 * (Ric + Ric.transpose());
  const Mat<3> hiv = values(hi);
  const double trace = (hiv.array() * S.array()).sum();
  r.ew = (S - trace / 3.0 * h).cwiseAbs().maxCoeff();
  return r;
}

}  // namespace ewb
