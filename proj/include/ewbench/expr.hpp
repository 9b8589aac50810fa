#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ewbench/jet.hpp"
#include "ewbench/sample.hpp"

namespace ewb {

/// Immutable arithmetic expression over a fixed list of named slots.
///
/// Grammar (loosest to tightest): `+ -`, `* /`, unary minus, `^` (right
/// associative).  Functions: ln exp sin cos sqrt tanh cosh sinh.  Every
/// identifier must be one of the slot names given to parse(); slots are bound
/// positionally at evaluation time, usually chart coordinates followed by
/// parameters such as `ell`.
class Expr {
 public:
  struct Node;

  Expr() = default;

  static Expr parse(std::string_view source, std::vector<std::string> vars);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::string& source() const { return source_; }

  /// Fully parenthesized rendering that re-parses to the same tree.
  std::string to_string() const;

  /// Structural equality of the trees (slot names included).
  bool operator==(const Expr& other) const;

  bool depends_on(std::size_t slot) const;

  Jet evaluate(std::span<const Jet> slots) const;
  double value(std::span<const double> slots) const;

 private:
  std::shared_ptr<const Node> root_;
  std::vector<std::string> vars_;
  std::string source_;
};

inline Expr parse(std::string_view source, std::vector<std::string> vars) {
  return Expr::parse(source, std::move(vars));
}

/// Jet of `e` at `point` through `order`.  The first point.dim slots of `e`
/// are the chart coordinates; any remaining slots take `params` in order.
Jet eval_jet(const Expr& e, const ChartPoint& point, int order,
             std::span<const double> params = {});

}  // namespace ewb
