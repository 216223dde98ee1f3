#include "iflux/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "iflux/error.hpp"

namespace iflux {

QuadratureRule gauss_interval(int order) {
  if (order < 1 || order > 10) {
    throw ParameterError("Gauss-Legendre order must be in [1, 10], got " + std::to_string(order));
  }
  QuadratureRule rule;
  rule.dim = 1;
  rule.points.resize(order);
  rule.weights.resize(order);
  const int n = order;
  // Newton iteration on P_n from the Chebyshev-like initial guess; the roots
  // are symmetric so only half are computed.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    // Map from [-1,1] to [0,1], halving the weights.
    rule.points[i] = {0.5 * (1.0 - z), 0.0, 0.0};
    rule.points[n - 1 - i] = {0.5 * (1.0 + z), 0.0, 0.0};
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

QuadratureRule triangle_rule(int order) {
  QuadratureRule rule;
  rule.dim = 2;
  switch (order) {
    case 1:
      rule.points = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
      rule.weights = {0.5};
      break;
    case 2:
      rule.points = {{2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0}, {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0}, {1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0}};
      rule.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
      break;
    case 3:
    case 4: {
      // Six-point symmetric rule, exact through degree 4.
      const double a1 = 0.445948490915964886318329253883;
      const double b1 = 1.0 - 2.0 * a1;
      const double a2 = 0.091576213509770743459571463402;
      const double b2 = 1.0 - 2.0 * a2;
      const double w1 = 0.223381589678011465944780439;
      const double w2 = 1.0 / 3.0 - w1;
      rule.points = {{b1, a1, a1}, {a1, b1, a1}, {a1, a1, b1}, {b2, a2, a2}, {a2, b2, a2}, {a2, a2, b2}};
      rule.weights = {0.5 * w1, 0.5 * w1, 0.5 * w1, 0.5 * w2, 0.5 * w2, 0.5 * w2};
      break;
    }
    default:
      throw ParameterError("triangle rule order must be 1, 2, 3 or 4, got " + std::to_string(order));
  }
  return rule;
}

}  // namespace iflux
