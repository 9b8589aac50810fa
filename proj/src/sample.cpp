#include "ewbench/sample.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ewbench/errors.hpp"

namespace ewb {

int Chart::index(const std::string& name) const {
  const auto it = std::find(coords.begin(), coords.end(), name);
  return it == coords.end() ? -1 : static_cast<int>(it - coords.begin());
}

ChartPoint::ChartPoint(std::initializer_list<double> xs) {
  if (xs.size() > coords.size()) throw ChartMismatch("chart point has more than 4 coordinates");
  std::copy(xs.begin(), xs.end(), coords.begin());
  dim = static_cast<int>(xs.size());
}

bool admits(const SampleDomain& domain, const ChartPoint& point) {
  for (const Guard& g : domain.guards) {
    try {
      const double v = g.fn(point);
      if (!(v > g.threshold)) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

std::vector<ChartPoint> sample(const SampleDomain& domain) {
  const int dim = static_cast<int>(domain.box.size());
  if (dim == 0 || dim > 4) throw ChartMismatch("sample box must have 1..4 coordinates");
  for (const auto& [lo, hi] : domain.box) {
    if (!(hi > lo)) throw Error("degenerate sample box");
  }
  std::mt19937_64 rng(domain.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  constexpr long kProbe = 1'000'000;
  constexpr long kHardCap = 100'000'000;
  std::vector<ChartPoint> out;
  out.reserve(domain.count);
  long draws = 0;
  while (static_cast<int>(out.size()) < domain.count) {
    ChartPoint p;
    p.dim = dim;
    for (int i = 0; i < dim; ++i) {
      const auto [lo, hi] = domain.box[i];
      p[i] = lo + (hi - lo) * unit(rng);
    }
    ++draws;
    if (admits(domain, p)) out.push_back(p);
    if ((draws >= kProbe && static_cast<double>(out.size()) < 0.01 * draws) || draws >= kHardCap) {
      throw SamplingExhausted("sampling exhausted: " + std::to_string(out.size()) + " of " +
                              std::to_string(draws) + " draws accepted");
    }
  }
  return out;
}

namespace {

struct Stencil {
  std::array<int, 5> offsets;
  std::array<double, 5> weights;
  int size;
};

const Stencil& stencil(int order) {
  static const std::array<Stencil, 4> s = {{
      {{0, 0, 0, 0, 0}, {1, 0, 0, 0, 0}, 1},
      {{-2, -1, 1, 2, 0}, {1.0 / 12, -8.0 / 12, 8.0 / 12, -1.0 / 12, 0}, 4},
      {{-2, -1, 0, 1, 2}, {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12}, 5},
      {{-2, -1, 1, 2, 0}, {-0.5, 1.0, -1.0, 0.5, 0}, 4},
  }};
  return s[order];
}

double fd_recurse(const ValueField& field, ChartPoint& p, const std::array<int, 4>& alpha,
                  const std::array<double, 4>& h, int var) {
  if (var == p.dim) return field(p);
  if (alpha[var] == 0) return fd_recurse(field, p, alpha, h, var + 1);
  const Stencil& s = stencil(alpha[var]);
  const double x0 = p[var];
  double acc = 0.0;
  for (int k = 0; k < s.size; ++k) {
    p[var] = x0 + s.offsets[k] * h[var];
    acc += s.weights[k] * fd_recurse(field, p, alpha, h, var + 1);
  }
  p[var] = x0;
  return acc / std::pow(h[var], alpha[var]);
}

}  // namespace

double fd_oracle(const ValueField& field, const ChartPoint& point,
                 const std::array<int, 4>& alpha) {
  std::array<double, 4> h{};
  for (int i = 0; i < point.dim; ++i) {
    if (alpha[i] < 0 || alpha[i] > 3) throw Error("finite-difference order must be 0..3");
    h[i] = 1e-4 * std::max(1.0, std::abs(point[i]));
  }
  ChartPoint p = point;
  return fd_recurse(field, p, alpha, h, 0);
}

}  // namespace ewb
