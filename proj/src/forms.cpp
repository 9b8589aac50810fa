#include "ewbench/forms.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "ewbench/errors.hpp"
#include "ewbench/linalg.hpp"

namespace ewb {
namespace {

std::vector<FormIndex> build_basis(int degree, int dim) {
  std::vector<FormIndex> out;
  FormIndex cur{};
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == degree) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < dim; ++i) {
      cur[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return out;
}

int find_index(int degree, int dim, const FormIndex& idx) {
  const auto& b = form_basis(degree, dim);
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (std::equal(idx.begin(), idx.begin() + degree, b[k].begin())) return static_cast<int>(k);
  }
  return -1;
}

// Sorts idx[0..n) in place; returns the permutation sign, or 0 on a repeat.
int sort_with_sign(FormIndex& idx, int n) {
  int sign = 1;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j + 1 < n - i; ++j) {
      if (idx[j] == idx[j + 1]) return 0;
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
    }
  }
  for (int j = 0; j + 1 < n; ++j) {
    if (idx[j] == idx[j + 1]) return 0;
  }
  return sign;
}

}  // namespace

const std::vector<FormIndex>& form_basis(int degree, int dim) {
  static const auto tables = [] {
    std::array<std::array<std::vector<FormIndex>, 5>, 5> t;
    for (int d = 0; d <= 4; ++d) {
      for (int p = 0; p <= d; ++p) t[p][d] = build_basis(p, d);
    }
    return t;
  }();
  if (degree < 0 || dim < 0 || dim > 4 || degree > dim) {
    throw ChartMismatch("form degree " + std::to_string(degree) + " invalid on a " +
                        std::to_string(dim) + "-chart");
  }
  return tables[degree][dim];
}

Form::Form(int degree, int dim)
    : degree_(degree), dim_(dim), comps_(form_basis(degree, dim).size(), Jet(0.0)) {}

int Form::order() const {
  int o = kMaxOrder;
  for (const Jet& j : comps_) {
    if (!j.is_constant()) o = std::min(o, j.order());
  }
  return o;
}

Jet& Form::at(std::initializer_list<int> idx) {
  FormIndex f{};
  std::copy(idx.begin(), idx.end(), f.begin());
  const int k = find_index(degree_, dim_, f);
  if (k < 0 || static_cast<int>(idx.size()) != degree_) throw Error("bad form index");
  return comps_[k];
}

const Jet& Form::at(std::initializer_list<int> idx) const {
  return const_cast<Form*>(this)->at(idx);
}

Form Form::truncate(int order) const {
  Form r = *this;
  for (Jet& j : r.comps_) j = j.truncate(order);
  return r;
}

Form& Form::operator+=(const Form& o) {
  if (o.degree_ != degree_ || o.dim_ != dim_) throw ChartMismatch("adding incompatible forms");
  for (std::size_t k = 0; k < comps_.size(); ++k) comps_[k] += o.comps_[k];
  return *this;
}

Form& Form::operator-=(const Form& o) { return *this += -o; }

Form Form::operator-() const {
  Form r = *this;
  for (Jet& j : r.comps_) j = -j;
  return r;
}

Form operator*(const Jet& s, const Form& a) {
  Form r = a;
  for (Jet& j : r.comps_) j = s * j;
  return r;
}

Form one_form(std::initializer_list<Jet> comps) {
  Form f(1, static_cast<int>(comps.size()));
  std::size_t k = 0;
  for (const Jet& j : comps) f[k++] = j;
  return f;
}

Form scalar_form(const Jet& f, int dim) {
  Form r(0, dim);
  r[0] = f;
  return r;
}

Form wedge(const Form& a, const Form& b) {
  if (a.dim() != b.dim()) throw ChartMismatch("wedge of forms on different charts");
  const int p = a.degree();
  const int q = b.degree();
  if (p + q > a.dim()) throw ChartMismatch("wedge degree exceeds chart dimension");
  Form r(p + q, a.dim());
  const auto& ba = form_basis(p, a.dim());
  const auto& bb = form_basis(q, a.dim());
  for (std::size_t i = 0; i < ba.size(); ++i) {
    for (std::size_t j = 0; j < bb.size(); ++j) {
      FormIndex idx{};
      std::copy(ba[i].begin(), ba[i].begin() + p, idx.begin());
      std::copy(bb[j].begin(), bb[j].begin() + q, idx.begin() + p);
      const int sign = sort_with_sign(idx, p + q);
      if (sign == 0) continue;
      const int k = find_index(p + q, a.dim(), idx);
      const Jet prod = a[i] * b[j];
      if (sign > 0) {
        r[k] += prod;
      } else {
        r[k] -= prod;
      }
    }
  }
  return r;
}

Form ext_d(const Form& a) {
  const int p = a.degree();
  const int n = a.dim();
  if (p + 1 > n) throw ChartMismatch("exterior derivative of a top-degree form");
  Form r(p + 1, n);
  const auto& basis = form_basis(p, n);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (a[k].is_constant()) continue;
    for (int i = 0; i < n; ++i) {
      FormIndex idx{};
      idx[0] = i;
      std::copy(basis[k].begin(), basis[k].begin() + p, idx.begin() + 1);
      const int sign = sort_with_sign(idx, p + 1);
      if (sign == 0) continue;
      const int target = find_index(p + 1, n, idx);
      const Jet di = a[k].diff(i);
      if (sign > 0) {
        r[target] += di;
      } else {
        r[target] -= di;
      }
    }
  }
  return r;
}

double max_abs(const Form& a) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k].value()));
  return m;
}

ScalarField constant_field(double c) {
  return [c](const ChartPoint& pt, int order) { return Jet::constant(c, pt.dim, order); };
}

ScalarField coordinate_field(int index) {
  return [index](const ChartPoint& pt, int order) {
    return Jet::variable(index, pt[index], pt.dim, order);
  };
}

ScalarField expr_field(const Expr& e, std::vector<double> params) {
  return [e, params = std::move(params)](const ChartPoint& pt, int order) {
    return eval_jet(e, pt, order, params);
  };
}

ScalarField partial_field(ScalarField f, int index) {
  return [f = std::move(f), index](const ChartPoint& pt, int order) {
    return f(pt, order + 1).diff(index);
  };
}

FormField differential(ScalarField f) {
  return [f = std::move(f)](const ChartPoint& pt, int order) {
    return ext_d(scalar_form(f(pt, order + 1), pt.dim));
  };
}

FormField ext_d(FormField a) {
  return [a = std::move(a)](const ChartPoint& pt, int order) { return ext_d(a(pt, order + 1)); };
}

FormField one_form_field(std::vector<ScalarField> comps) {
  return [comps = std::move(comps)](const ChartPoint& pt, int order) {
    Form f(1, pt.dim);
    for (std::size_t k = 0; k < comps.size(); ++k) f[k] = comps[k](pt, order);
    return f;
  };
}

Eigen::Matrix<Jet, 3, 3> Coframe3::matrix() const {
  Eigen::Matrix<Jet, 3, 3> m;
  for (int i = 0; i < 3; ++i) {
    if (e[i].degree() != 1 || e[i].dim() != 3) throw ChartMismatch("coframe needs 1-forms on a 3-chart");
    for (int j = 0; j < 3; ++j) m(i, j) = e[i][j];
  }
  return m;
}

void Coframe3::check_invertible() const {
  const Eigen::Matrix3d m = values(matrix());
  const double det = m.determinant();
  if (!(std::abs(det) > 1e-12)) {
    throw SingularFrame("coframe is singular (|det| = " + std::to_string(std::abs(det)) + ")");
  }
}

std::array<Jet, 3> frame_expand(const Form& a, const Coframe3& frame) {
  frame.check_invertible();
  Eigen::Matrix<Jet, 3, 3> m;
  if (a.degree() == 1) {
    m = frame.matrix().transpose();
  } else if (a.degree() == 2) {
    const std::array<Form, 3> b = {wedge(frame.e[0], frame.e[1]), wedge(frame.e[0], frame.e[2]),
                                   wedge(frame.e[1], frame.e[2])};
    for (int k = 0; k < 3; ++k) {
      for (int r = 0; r < 3; ++r) m(r, k) = b[k][r];
    }
  } else {
    throw ChartMismatch("frame_expand handles 1- and 2-forms only");
  }
  const auto [inv, det] = inverse_and_det<Jet, 3>(m);
  if (!(std::abs(det.value()) > 1e-12)) throw SingularFrame("frame basis is singular");
  std::array<Jet, 3> c;
  for (int i = 0; i < 3; ++i) {
    c[i] = Jet(0.0);
    for (int j = 0; j < 3; ++j) c[i] += inv(i, j) * a[j];
  }
  return c;
}

Form hodge3(const Form& a, const Coframe3& frame) {
  if (a.degree() != 1) throw ChartMismatch("hodge3 is defined on 1-forms");
  const auto c = frame_expand(a, frame);
  return c[0] * wedge(frame.e[0], frame.e[1]) + (Jet(2.0) * c[1]) * wedge(frame.e[0], frame.e[2]) +
         c[2] * wedge(frame.e[1], frame.e[2]);
}

Metric3 metric_from_coframe(const Coframe3& frame) {
  const auto e = frame.matrix();
  Metric3 h;
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      h(a, b) = e(1, a) * e(1, b) - Jet(2.0) * (e(0, a) * e(2, b) + e(2, a) * e(0, b));
      h(b, a) = h(a, b);
    }
  }
  return h;
}

Signature signature(const Eigen::MatrixXd& m, double eps) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  Signature s;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = es.eigenvalues()(i);
    if (v > eps) {
      ++s.positive;
    } else if (v < -eps) {
      ++s.negative;
    } else {
      ++s.zero;
    }
  }
  return s;
}

}  // namespace ewb
