#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace iflux {

// 1D points live in [0,1] and weights sum to 1. Triangle points are
// barycentric coordinates on the reference triangle (0,0),(1,0),(0,1) and
// weights sum to its area 1/2.
struct QuadratureRule {
  int dim = 1;
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  double x(std::size_t k) const { return points[k][0]; }
  const std::array<double, 3>& bary(std::size_t k) const { return points[k]; }
};

QuadratureRule gauss_interval(int order);
QuadratureRule triangle_rule(int order);

}  // namespace iflux
