#include "ewbench/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "ewbench/errors.hpp"

namespace ewb {

struct Expr::Node {
  enum class Kind { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Call };
  enum class Fn { Ln, Exp, Sin, Cos, Sqrt, Tanh, Cosh, Sinh };

  Kind kind = Kind::Const;
  double value = 0.0;
  int slot = -1;
  Fn fn = Fn::Ln;
  std::string name;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

const std::unordered_map<std::string, Node::Fn>& functions() {
  static const std::unordered_map<std::string, Node::Fn> fns = {
      {"ln", Node::Fn::Ln},     {"exp", Node::Fn::Exp},   {"sin", Node::Fn::Sin},
      {"cos", Node::Fn::Cos},   {"sqrt", Node::Fn::Sqrt}, {"tanh", Node::Fn::Tanh},
      {"cosh", Node::Fn::Cosh}, {"sinh", Node::Fn::Sinh},
  };
  return fns;
}

NodePtr make_binary(Node::Kind kind, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

class Parser {
 public:
  Parser(std::string_view src, const std::vector<std::string>& vars) : src_(src), vars_(vars) {}

  NodePtr parse() {
    skip();
    if (pos_ == src_.size()) throw ParseError("empty expression", pos_);
    NodePtr n = additive();
    skip();
    if (pos_ != src_.size()) throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    return n;
  }

 private:
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ == src_.size()) {
        throw ParseError(std::string("expected '") + c + "' before end of input", pos_);
      }
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  NodePtr additive() {
    NodePtr n = multiplicative();
    for (;;) {
      if (accept('+')) {
        n = make_binary(Node::Kind::Add, n, multiplicative());
      } else if (accept('-')) {
        n = make_binary(Node::Kind::Sub, n, multiplicative());
      } else {
        return n;
      }
    }
  }

  NodePtr multiplicative() {
    NodePtr n = unary();
    for (;;) {
      if (accept('*')) {
        n = make_binary(Node::Kind::Mul, n, unary());
      } else if (accept('/')) {
        n = make_binary(Node::Kind::Div, n, unary());
      } else {
        return n;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) {
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::Neg;
      n->lhs = unary();
      return n;
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make_binary(Node::Kind::Pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ == src_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = additive();
      expect(')');
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        digits();
      } else {
        pos_ = save;
      }
    }
    double v = 0.0;
    const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (res.ec != std::errc() || res.ptr != src_.data() + pos_) {
      throw ParseError("malformed number", start);
    }
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Const;
    n->value = v;
    return n;
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    std::string name(src_.substr(start, pos_ - start));
    skip();
    const bool call = pos_ < src_.size() && src_[pos_] == '(';
    const auto& fns = functions();
    if (call) {
      const auto it = fns.find(name);
      if (it == fns.end()) throw UnknownIdentifier(name, start);
      ++pos_;
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::Call;
      n->fn = it->second;
      n->name = name;
      n->lhs = additive();
      expect(')');
      return n;
    }
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Var;
        n->slot = static_cast<int>(i);
        n->name = name;
        return n;
      }
    }
    if (fns.count(name) != 0) throw ParseError("function '" + name + "' needs an argument", pos_);
    throw UnknownIdentifier(name, start);
  }

  std::string_view src_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Const: return format_number(n.value);
    case Node::Kind::Var: return n.name;
    case Node::Kind::Neg: return "(-" + render(*n.lhs) + ")";
    case Node::Kind::Call: return n.name + "(" + render(*n.lhs) + ")";
    default: break;
  }
  const char* op = "+";
  switch (n.kind) {
    case Node::Kind::Sub: op = "-"; break;
    case Node::Kind::Mul: op = "*"; break;
    case Node::Kind::Div: op = "/"; break;
    case Node::Kind::Pow: op = "^"; break;
    default: break;
  }
  return "(" + render(*n.lhs) + " " + op + " " + render(*n.rhs) + ")";
}

bool same(const Node* a, const Node* b) {
  if (a == b) return true;
  if (a == nullptr || b == nullptr) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Node::Kind::Const: return a->value == b->value;
    case Node::Kind::Var: return a->slot == b->slot && a->name == b->name;
    case Node::Kind::Call: return a->fn == b->fn && same(a->lhs.get(), b->lhs.get());
    default: return same(a->lhs.get(), b->lhs.get()) && same(a->rhs.get(), b->rhs.get());
  }
}

bool uses_slot(const Node* n, int slot) {
  if (n == nullptr) return false;
  if (n->kind == Node::Kind::Var) return n->slot == slot;
  return uses_slot(n->lhs.get(), slot) || uses_slot(n->rhs.get(), slot);
}

bool has_vars(const Node* n) {
  if (n == nullptr) return false;
  if (n->kind == Node::Kind::Var) return true;
  return has_vars(n->lhs.get()) || has_vars(n->rhs.get());
}

[[noreturn]] void domain_fail(const std::string& what, const Node& n) {
  throw DomainError(what + " in '" + render(n) + "'");
}

Jet eval(const Node& n, std::span<const Jet> slots) {
  switch (n.kind) {
    case Node::Kind::Const: return Jet(n.value);
    case Node::Kind::Var:
      if (n.slot >= static_cast<int>(slots.size())) {
        throw Error("no value bound for '" + n.name + "'");
      }
      return slots[n.slot];
    case Node::Kind::Neg: return -eval(*n.lhs, slots);
    case Node::Kind::Add: return eval(*n.lhs, slots) + eval(*n.rhs, slots);
    case Node::Kind::Sub: return eval(*n.lhs, slots) - eval(*n.rhs, slots);
    case Node::Kind::Mul: return eval(*n.lhs, slots) * eval(*n.rhs, slots);
    case Node::Kind::Div: {
      const Jet den = eval(*n.rhs, slots);
      if (den.value() == 0.0) domain_fail("division by zero", n);
      return eval(*n.lhs, slots) / den;
    }
    case Node::Kind::Pow: {
      const Jet base = eval(*n.lhs, slots);
      const Jet ex = eval(*n.rhs, slots);
      if (!has_vars(n.rhs.get())) {
        const double r = ex.value();
        if (r == std::round(r) && std::abs(r) <= 64) {
          if (r < 0 && base.value() == 0.0) domain_fail("division by zero", n);
          return pow(base, static_cast<int>(r));
        }
        if (!(base.value() > 0.0)) domain_fail("non-integer power of non-positive base", n);
        return pow(base, r);
      }
      if (!(base.value() > 0.0)) domain_fail("variable power of non-positive base", n);
      return exp(ex * log(base));
    }
    case Node::Kind::Call: {
      const Jet a = eval(*n.lhs, slots);
      switch (n.fn) {
        case Node::Fn::Ln:
          if (!(a.value() > 0.0)) domain_fail("ln of non-positive value", n);
          return log(a);
        case Node::Fn::Sqrt:
          if (!(a.value() > 0.0)) domain_fail("sqrt of non-positive value", n);
          return sqrt(a);
        case Node::Fn::Exp: return exp(a);
        case Node::Fn::Sin: return sin(a);
        case Node::Fn::Cos: return cos(a);
        case Node::Fn::Tanh: return tanh(a);
        case Node::Fn::Cosh: return cosh(a);
        case Node::Fn::Sinh: return sinh(a);
      }
    }
  }
  throw Error("corrupt expression node");
}

}  // namespace

Expr Expr::parse(std::string_view source, std::vector<std::string> vars) {
  Expr e;
  e.vars_ = std::move(vars);
  e.source_ = std::string(source);
  e.root_ = Parser(source, e.vars_).parse();
  return e;
}

std::string Expr::to_string() const { return root_ ? render(*root_) : std::string(); }

bool Expr::operator==(const Expr& other) const {
  return vars_ == other.vars_ && same(root_.get(), other.root_.get());
}

bool Expr::depends_on(std::size_t slot) const {
  return uses_slot(root_.get(), static_cast<int>(slot));
}

Jet Expr::evaluate(std::span<const Jet> slots) const {
  if (!root_) throw Error("evaluating an empty expression");
  return eval(*root_, slots);
}

double Expr::value(std::span<const double> slots) const {
  std::vector<Jet> js(slots.begin(), slots.end());
  return evaluate(js).value();
}

Jet eval_jet(const Expr& e, const ChartPoint& point, int order, std::span<const double> params) {
  if (order < 0 || order > kMaxOrder) throw Error("jet order out of range");
  std::vector<Jet> slots;
  slots.reserve(point.dim + params.size());
  for (int i = 0; i < point.dim; ++i) slots.push_back(Jet::variable(i, point[i], point.dim, order));
  for (double p : params) slots.push_back(Jet(p));
  Jet r = e.evaluate(slots);
  if (r.is_constant()) r = Jet::constant(r.value(), point.dim, order);
  return r;
}

}  // namespace ewb
