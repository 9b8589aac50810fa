#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace ewb {

/// Ordered coordinate names of a chart, e.g. (x, y, t) or (alpha, p, y, t).
struct Chart {
  std::vector<std::string> coords;

  int dim() const { return static_cast<int>(coords.size()); }
  /// Index of a coordinate name, or -1.
  int index(const std::string& name) const;

  static Chart xyt() { return {{"x", "y", "t"}}; }
  static Chart pyt() { return {{"p", "y", "t"}}; }
};

struct ChartPoint {
  std::array<double, 4> coords{};
  int dim = 0;

  ChartPoint() = default;
  ChartPoint(std::initializer_list<double> xs);

  double operator[](int i) const { return coords[i]; }
  double& operator[](int i) { return coords[i]; }
};

/// Rejects points where fn(point) <= threshold.  Evaluation errors reject too.
struct Guard {
  std::function<double(const ChartPoint&)> fn;
  double threshold = 0.0;
  std::string label;
};

struct SampleDomain {
  std::vector<std::pair<double, double>> box;
  std::vector<Guard> guards;
  std::uint64_t seed = 0;
  int count = 0;
};

bool admits(const SampleDomain& domain, const ChartPoint& point);

/// Uniform rejection sampling; deterministic in (box, guards, seed, count).
/// Throws SamplingExhausted when fewer than 1% of 10^6 draws pass the guards.
std::vector<ChartPoint> sample(const SampleDomain& domain);

/// Value-only field used by the finite-difference oracle.
using ValueField = std::function<double(const ChartPoint&)>;

/// Central finite-difference estimate of the partial derivative with
/// per-coordinate orders `alpha` (each 0..3).  Step is 1e-4 * max(1, |x_i|);
/// fourth-order stencils for first and second derivatives, second-order for
/// third derivatives, applied as a tensor product across coordinates.
double fd_oracle(const ValueField& field, const ChartPoint& point,
                 const std::array<int, 4>& alpha);

}  // namespace ewb
