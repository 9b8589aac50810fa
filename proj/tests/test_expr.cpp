#include <cmath>
#include <random>
#include <string>

#include "doctest.h"
#include "ewbench/errors.hpp"
#include "ewbench/expr.hpp"

using namespace ewb;

namespace {

const std::vector<std::string> kXYT = {"x", "y", "t"};

double eval_at(const std::string& src, std::vector<std::string> vars, std::vector<double> at) {
  return parse(src, std::move(vars)).value(at);
}

// Random expressions from the full grammar.
class Fuzzer {
 public:
  explicit Fuzzer(std::uint64_t seed) : rng_(seed) {}

  std::string gen(int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
    switch (pick(rng_)) {
      case 0: return var();
      case 1: return number();
      case 2: return "(" + gen(depth - 1) + " + " + gen(depth - 1) + ")";
      case 3: return "(" + gen(depth - 1) + " - " + gen(depth - 1) + ")";
      case 4: return gen(depth - 1) + "*" + gen(depth - 1);
      case 5: return "(" + gen(depth - 1) + ")/(2 + " + var() + "^2)";
      case 6: return "-" + gen(depth - 1);
      case 7: return "(" + gen(depth - 1) + ")^" + std::to_string(1 + pick(rng_) % 3);
      case 8: return "(1.5 + " + var() + "^2)^(-1/3)";
      default: {
        static const char* fns[] = {"exp", "sin", "cos", "tanh", "cosh", "sinh"};
        std::uniform_int_distribution<int> f(0, 5);
        return std::string(fns[f(rng_)]) + "(" + gen(depth - 1) + ")";
      }
    }
  }

 private:
  std::string var() {
    std::uniform_int_distribution<int> v(0, 2);
    return kXYT[v(rng_)];
  }
  std::string number() {
    std::uniform_real_distribution<double> u(0.1, 2.0);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", u(rng_));
    return buf;
  }
  std::mt19937_64 rng_;
};

}  // namespace

TEST_CASE("parse and evaluate") {
  CHECK(eval_at("p*ln(p)-p", {"p"}, {1.0}) == doctest::Approx(-1.0));
  CHECK(eval_at("y^2-4*x*t", kXYT, {1, 3, 2}) == doctest::Approx(1.0));
  CHECK(eval_at("2^3^2", {}, {}) == doctest::Approx(512.0));
  CHECK(eval_at("-2^2", {}, {}) == doctest::Approx(-4.0));
  CHECK(eval_at("x^-1", {"x"}, {4.0}) == doctest::Approx(0.25));
  CHECK(eval_at(" 1.5e1 /  3 ", {}, {}) == doctest::Approx(5.0));
  CHECK(eval_at("-ell/4", {"p", "ell"}, {0.0, 2.0}) == doctest::Approx(-0.5));
}

TEST_CASE("syntax errors carry byte offsets") {
  try {
    parse("2*(p", {"p"});
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
  try {
    parse("1 + * 2", {});
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(parse("", {}), ParseError);
  CHECK_THROWS_AS(parse("x y", kXYT), ParseError);
}

TEST_CASE("unknown identifiers are rejected at parse time") {
  try {
    parse("x + q", kXYT);
    FAIL("expected an unknown identifier");
  } catch (const UnknownIdentifier& e) {
    CHECK(e.name() == "q");
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(parse("foo(x)", kXYT), UnknownIdentifier);
  CHECK_THROWS_AS(parse("sin + 1", kXYT), ParseError);
}

TEST_CASE("precedence and associativity") {
  const std::vector<std::string> abc = {"a", "b", "c"};
  CHECK(parse("a-b-c", abc) == parse("(a-b)-c", abc));
  CHECK_FALSE(parse("a-b-c", abc) == parse("a-(b-c)", abc));
  CHECK(parse("a^b^c", abc) == parse("a^(b^c)", abc));
  CHECK(parse("-a^b", abc) == parse("-(a^b)", abc));
  CHECK(parse("a+b*c", abc) == parse("a+(b*c)", abc));
  CHECK(parse("a/b*c", abc) == parse("(a/b)*c", abc));
}

TEST_CASE("jets of expressions") {
  SUBCASE("exp(t)*sin(y) is an eigenfunction of d/dt") {
    const Expr e = parse("exp(t)*sin(y)", kXYT);
    for (const ChartPoint& pt : {ChartPoint{0.1, 0.2, 0.3}, ChartPoint{-1.0, 2.0, -0.5}}) {
      const Jet j = eval_jet(e, pt, 3);
      CHECK(j.d(2) == doctest::Approx(j.value()));
      CHECK(j.d(2, 2) == doctest::Approx(j.value()));
      CHECK(j.d(1, 2) == doctest::Approx(j.d(1)));
    }
  }
  SUBCASE("x*y*t") {
    const Jet j = eval_jet(parse("x*y*t", kXYT), {0.4, 1.1, -2.0}, 3);
    CHECK(j.d(0, 1, 2) == 1.0);
    CHECK(j.d(0, 0, 0) == 0.0);
    CHECK(j.d(1, 1, 1) == 0.0);
    CHECK(j.d(2, 2, 2) == 0.0);
  }
  SUBCASE("fundamental solution at (1,3,2)") {
    // H = r^-1, r^2 = y^2 - 4xt;  H_x = 2t r^-3.
    const Jet j = eval_jet(parse("1/sqrt(y^2-4*x*t)", kXYT), {1, 3, 2}, 3);
    CHECK(j.value() == doctest::Approx(1.0));
    CHECK(j.d(0) == doctest::Approx(4.0));
  }
  SUBCASE("non-integer power needs a positive base") {
    const Expr e = parse("x^(1/3)", kXYT);
    CHECK(eval_jet(e, {8, 0, 0}, 1).value() == doctest::Approx(2.0));
    CHECK_THROWS_AS(eval_jet(e, {-8, 0, 0}, 1), DomainError);
    CHECK(eval_jet(parse("x^3", kXYT), {-2, 0, 0}, 1).value() == doctest::Approx(-8.0));
  }
  SUBCASE("domain errors name the offending subexpression") {
    try {
      eval_jet(parse("1 + ln(x - 2)", kXYT), {1, 0, 0}, 1);
      FAIL("expected a domain error");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("ln((x - 2))") != std::string::npos);
    }
    CHECK_THROWS_AS(eval_jet(parse("1/(x-1)", kXYT), {1, 0, 0}, 1), DomainError);
    CHECK_THROWS_AS(eval_jet(parse("sqrt(-x)", kXYT), {1, 0, 0}, 1), DomainError);
  }
}

TEST_CASE("fuzzed expressions: print/parse round trip and jets vs central differences") {
  Fuzzer fuzz(2024);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  for (int n = 0; n < 200; ++n) {
    const std::string src = fuzz.gen(4);
    const Expr e = parse(src, kXYT);
    const Expr again = parse(e.to_string(), kXYT);
    CHECK_MESSAGE(e == again, src);

    const ChartPoint pt{u(rng), u(rng), u(rng)};
    Jet j;
    try {
      j = eval_jet(e, pt, 1);
    } catch (const DomainError&) {
      continue;
    }
    const double scale = std::max(1.0, std::abs(j.value()));
    if (scale > 1e6) continue;
    for (int a = 0; a < 3; ++a) {
      constexpr double h = 1e-5;
      std::vector<double> lo(pt.coords.begin(), pt.coords.begin() + 3), hi = lo;
      lo[a] -= h;
      hi[a] += h;
      const double fd = (e.value(hi) - e.value(lo)) / (2 * h);
      const double tol = 1e-6 * std::max(scale, std::abs(j.d(a)));
      CHECK_MESSAGE(std::abs(fd - j.d(a)) <= tol, src);
    }
    ++checked;
  }
  CHECK(checked > 150);
}
