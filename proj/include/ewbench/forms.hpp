#pragma once

#include <array>
#include <functional>
#include <initializer_list>
#include <vector>

#include <Eigen/Core>

#include "ewbench/expr.hpp"
#include "ewbench/jet.hpp"
#include "ewbench/sample.hpp"

namespace ewb {

/// Sorted coordinate index tuple of a basis p-form dx^{i1} ^ ... ^ dx^{ip}.
using FormIndex = std::array<int, 4>;

/// Basis tuples of degree-p forms on a dim-chart, lexicographic order.
const std::vector<FormIndex>& form_basis(int degree, int dim);

/// A differential form at a point: one jet per sorted basis tuple.
class Form {
 public:
  Form() = default;
  Form(int degree, int dim);

  int degree() const { return degree_; }
  int dim() const { return dim_; }
  /// Lowest jet order among non-constant components.
  int order() const;
  std::size_t size() const { return comps_.size(); }

  Jet& operator[](std::size_t k) { return comps_[k]; }
  const Jet& operator[](std::size_t k) const { return comps_[k]; }
  /// Component for the given increasing coordinate indices.
  Jet& at(std::initializer_list<int> idx);
  const Jet& at(std::initializer_list<int> idx) const;

  Form truncate(int order) const;

  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const Jet& s, const Form& a);
  Form operator-() const;

 private:
  int degree_ = 0;
  int dim_ = 0;
  std::vector<Jet> comps_;
};

Form one_form(std::initializer_list<Jet> comps);
Form scalar_form(const Jet& f, int dim);

/// Graded-antisymmetric product.
Form wedge(const Form& a, const Form& b);
/// Exterior derivative; the result has one jet order less.
Form ext_d(const Form& a);
/// Largest absolute component value.
double max_abs(const Form& a);

/// Jet-evaluable fields.  `order` is the jet order requested of the result.
using ScalarField = std::function<Jet(const ChartPoint&, int order)>;
using FormField = std::function<Form(const ChartPoint&, int order)>;

ScalarField constant_field(double c);
ScalarField coordinate_field(int index);
ScalarField expr_field(const Expr& e, std::vector<double> params = {});
/// Partial derivative field d f / d x^i.
ScalarField partial_field(ScalarField f, int index);
/// df as a 1-form field.
FormField differential(ScalarField f);
/// Exterior derivative of a form field.
FormField ext_d(FormField a);
FormField one_form_field(std::vector<ScalarField> comps);

/// Coframe (e^1, e^2, e^3) of a 3-chart at a point.
struct Coframe3 {
  std::array<Form, 3> e;

  /// Row i holds the coordinate components of e^i.
  Eigen::Matrix<Jet, 3, 3> matrix() const;
  /// Throws SingularFrame when |det| <= 1e-12.
  void check_invertible() const;
};

/// Coefficients of a in the frame basis: {e^i} for 1-forms, or
/// {e^1^e^2, e^1^e^3, e^2^e^3} for 2-forms.
std::array<Jet, 3> frame_expand(const Form& a, const Coframe3& frame);

/// Frame Hodge star on 1-forms: *e^1 = e^1^e^2, *e^2 = 2 e^1^e^3,
/// *e^3 = e^2^e^3, extended linearly.
Form hodge3(const Form& a, const Coframe3& frame);

using Metric3 = Eigen::Matrix<Jet, 3, 3>;
using Metric4 = Eigen::Matrix<Jet, 4, 4>;

/// h = e^2 (.) e^2 - 4 e^1 (.) e^3 with (.) the symmetrized product.
Metric3 metric_from_coframe(const Coframe3& frame);

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

Signature signature(const Eigen::MatrixXd& m, double eps = 1e-12);

}  // namespace ewb
