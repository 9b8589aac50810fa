#include <cmath>

#include "doctest.h"
#include "ewbench/errors.hpp"
#include "ewbench/families.hpp"
#include "ewbench/linalg.hpp"

using namespace ewb;

namespace {

const std::vector<std::string> kPYT = {"p", "y", "t"};

ScalarField pyt(const std::string& src) { return expr_field(parse(src, kPYT)); }

std::vector<ChartPoint> points(const CatalogEntry& e, int n, std::uint64_t seed) {
  SampleDomain d = e.domain;
  d.count = n;
  d.seed = seed;
  return sample(d);
}

double structure_gap(const EWStructure& a, const EWStructure& b, const ChartPoint& pt) {
  const Eigen::Matrix3d ha = values(a.metric(pt, 0));
  const Eigen::Matrix3d hb = values(b.metric(pt, 0));
  double gap = (ha - hb).cwiseAbs().maxCoeff();
  gap = std::max(gap, max_abs(a.omega(pt, 0) - b.omega(pt, 0)));
  gap = std::max(gap, std::abs(a.V(pt, 0).value() - b.V(pt, 0).value()));
  return gap;
}

}  // namespace

TEST_CASE("Heisenberg example") {
  const auto pts = sample({{{-1, 1}, {-1, 1}, {-1, 1}}, {}, 1, 50});
  for (double l : {1.0, 3.0, -2.0}) {
    const EWStructure s = heisenberg(l);
    for (const auto& pt : pts) CHECK(max_abs(gt_residual(s, pt)) <= 1e-10);
    CHECK(s.V(pts[0], 0).value() == doctest::Approx(2.0 / l));
  }
  SUBCASE("x = 0 slice is dy^2 - 4 dx dt") {
    Eigen::Matrix3d flat;
    flat << 0, 0, -2, 0, 1, 0, -2, 0, 0;
    CHECK((values(heisenberg(1.0).metric({0.0, 0.4, -0.3}, 0)) - flat).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("l = 0 is rejected") { CHECK_THROWS_AS(heisenberg(0.0), DomainError); }
}

TEST_CASE("Class B with F = -l/4 is Heisenberg under p = 4x/l") {
  for (double l : {1.0, 2.5, -1.5}) {
    const EWStructure b = class_b(constant_field(-l / 4.0));
    const EWStructure h = heisenberg(l);
    Eigen::Matrix3d J = Eigen::Matrix3d::Identity();
    J(0, 0) = 4.0 / l;
    for (const auto& pt : sample({{{-1, 1}, {-1, 1}, {-1, 1}}, {}, 2, 50})) {
      const ChartPoint q{4.0 * pt[0] / l, pt[1], pt[2]};
      const Eigen::Matrix3d pulled = J.transpose() * values(b.metric(q, 0)) * J;
      CHECK((pulled - values(h.metric(pt, 0))).cwiseAbs().maxCoeff() <= 1e-10);
      const Form wb = b.omega(q, 0);
      const Eigen::Vector3d wpulled = J.transpose() * Eigen::Vector3d(wb[0].value(), wb[1].value(), wb[2].value());
      const Form wh = h.omega(pt, 0);
      CHECK((wpulled - Eigen::Vector3d(wh[0].value(), wh[1].value(), wh[2].value())).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK(b.V(q, 0).value() == doctest::Approx(h.V(pt, 0).value()));
    }
  }
}

TEST_CASE("Class A") {
  const CatalogEntry e = class_a_entry("y^2-2*t");
  const ScalarField beta = pyt("y^2-2*t");
  for (const auto& pt : points(e, 50, 3)) {
    CHECK(heat_residual(beta, pt) == 0.0);
    CHECK(max_abs(gt_residual(e.structure, pt)) <= 1e-8);
    CHECK(max_abs(monopole_residual(e.structure, pt)) <= 1e-8);
  }
  SUBCASE("the flipped Q sign is not a solution") {
    double worst = 0.0;
    const EWStructure bad = class_a_flipped(beta);
    for (const auto& pt : points(e, 20, 4)) worst = std::max(worst, max_abs(gt_residual(bad, pt)));
    CHECK(worst > 1e-2);
  }
}

TEST_CASE("Class C fundamental member") {
  // K = s Phi'(s) for Phi = 2^(-4/3) s^(-1/3).
  const UnivariateFn K = k_from_phi(univariate(parse("2^(-4/3)*s^(-1/3)", {"s"})));
  const UnivariateFn Kclosed = univariate(parse("-(1/3)*2^(-4/3)*s^(-1/3)", {"s"}));
  for (double s : {0.3, 1.0, 4.2}) {
    CHECK(K(Jet(s)).value() == doctest::Approx(Kclosed(Jet(s)).value()).epsilon(1e-14));
  }
  const CatalogEntry e = class_c_entry("2^(-4/3)*s^(-1/3)");
  const EWStructure direct = class_c(Kclosed);
  for (const auto& pt : points(e, 30, 5)) {
    CHECK(structure_gap(e.structure, direct, pt) <= 1e-12);
    CHECK(max_abs(gt_residual(e.structure, pt)) <= 1e-8);
    // V = -p/(4K) = -1/(2 G_pp).
    const double p = pt[0], s = pt[2] * p * p;
    CHECK(e.structure.V(pt, 0).value() == doctest::Approx(-p / (4.0 * Kclosed(Jet(s)).value())));
  }
}

TEST_CASE("Legendre generator") {
  SUBCASE("G = p^2/2") {
    const GeneratorG g = generator(pyt("p^2/2"), constant_field(0.0));
    const EWStructure s = from_generator(g);
    const ChartPoint pt{0.7, -0.2, 0.4};
    CHECK(s.V(pt, 0).value() == doctest::Approx(-0.5));
    const Form w = s.omega(pt, 0);
    CHECK(w[0].value() == 0.0);
    CHECK(w[1].value() == doctest::Approx(-1.0));
    CHECK(w[2].value() == doctest::Approx(-0.7));
    CHECK(g_equation_residual(g, pt) == 0.0);
  }
  SUBCASE("G_A matches class A") {
    const CatalogEntry e = class_a_entry("y^2-2*t");
    const EWStructure dual = from_generator(*e.generator);
    for (const auto& pt : points(e, 50, 6)) CHECK(structure_gap(e.structure, dual, pt) <= 1e-9);
  }
  SUBCASE("degenerate Legendre transform") {
    const EWStructure s = from_generator(generator(pyt("y*t + p"), constant_field(0.0)));
    CHECK_THROWS_AS(s.V({0.1, 0.2, 0.3}, 0), DegenerateLegendre);
  }
  SUBCASE("G equation") {
    const ChartPoint pt{0.9, 1.1, -0.3};
    CHECK(std::abs(g_equation_residual(generator_a(pyt("exp(t)*sin(y)")), pt)) <= 1e-12);
    const GeneratorG cubic = generator(pyt("p^2/2"), pyt("y^3"));
    CHECK(std::abs(g_equation_residual(cubic, pt)) > 1e-3);
  }
  SUBCASE("branch relation") {
    const ChartPoint pt{0.9, 1.1, -0.3};
    CHECK(std::abs(branch_residual(generator_a(pyt("y^2-2*t")), pt)) <= 1e-12);
    CHECK(std::abs(branch_residual(generator_a(pyt("exp(t)*sin(y)")), pt)) <= 1e-12);
    CHECK(branch_residual(generator(pyt("p^2/2"), constant_field(2.0)), pt) == 0.0);
    const double y = pt[1], p = pt[0];
    CHECK(branch_residual(generator(pyt("p^2/2"), pyt("y^3")), pt) == doctest::Approx(36 * y * y * y - 6 * p));
  }
}

TEST_CASE("fundamental solution") {
  CHECK(fundamental_H({1, 3, 2}, 0).value() == doctest::Approx(1.0));
  CHECK_THROWS_AS(fundamental_H({1, 2, 1}, 2), DomainError);
}

TEST_CASE("catalog properties") {
  for (const CatalogEntry& e : default_catalog()) {
    CAPTURE(e.name);
    const auto pts = points(e, 200, 7);
    double gt = 0.0, mono = 0.0, gap = 0.0;
    for (const auto& pt : pts) {
      gt = std::max(gt, max_abs(gt_residual(e.structure, pt)));
      mono = std::max(mono, max_abs(monopole_residual(e.structure, pt)));
      const Signature sig = signature(values(e.structure.metric(pt, 0)));
      CHECK(sig.positive == 2);
      CHECK(sig.negative == 1);
      if (e.generator) {
        gap = std::max(gap, structure_gap(e.structure, from_generator(*e.generator), pt));
        CHECK(std::abs(g_equation_residual(*e.generator, pt)) <= 1e-9);
        CHECK(std::abs(branch_residual(*e.generator, pt)) <= 1e-9);
      }
    }
    CHECK(gt <= 1e-7);
    CHECK(mono <= 1e-7);
    CHECK(gap <= 1e-9);
  }
}

TEST_CASE("catalog fields: jets agree with finite differences") {
  for (const CatalogEntry& e : default_catalog()) {
    CAPTURE(e.name);
    const EWStructure& s = e.structure;
    std::vector<ScalarField> fields = {s.V};
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < 3; ++k) {
        fields.push_back([f = s.frame[i], k](const ChartPoint& pt, int order) { return f(pt, order)[k]; });
      }
      fields.push_back([f = s.omega, i](const ChartPoint& pt, int order) { return f(pt, order)[i]; });
    }
    for (const auto& pt : points(e, 100, 8)) {
      for (const ScalarField& f : fields) {
        const Jet j = f(pt, 2);
        const ValueField v = [&f](const ChartPoint& q) { return f(q, 0).value(); };
        for (int a = 0; a < 3; ++a) {
          std::array<int, 4> ia{};
          ia[a] = 1;
          const double da = j.is_constant() ? 0.0 : j.d(a);
          CHECK(std::abs(fd_oracle(v, pt, ia) - da) <= 1e-5 * std::max(1.0, std::abs(da)));
          for (int b = a; b < 3; ++b) {
            std::array<int, 4> ib = ia;
            ++ib[b];
            const double dab = j.is_constant() ? 0.0 : j.d(a, b);
            CHECK(std::abs(fd_oracle(v, pt, ib) - dab) <= 1e-5 * std::max(1.0, std::abs(dab)));
          }
        }
      }
    }
  }
}
