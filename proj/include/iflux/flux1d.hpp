#pragma once

#include <concepts>
#include <tuple>
#include <utility>
#include <vector>

#include "iflux/error.hpp"
#include "iflux/ifem1d.hpp"
#include "iflux/problems.hpp"
#include "iflux/quadrature.hpp"

namespace iflux {

// Anything that can be evaluated on either side of the interface. Solution1d
// and the exact solution both qualify, which is what lets the consistency
// identity be checked with the same functionals.
template <class F>
concept PiecewiseField1d = requires(const F& f, double x, Side s) {
  { f.value(x, s) } -> std::convertible_to<double>;
  { f.derivative(x, s) } -> std::convertible_to<double>;
};

struct ExactSolution1d {
  const Problem1d* problem;
  double value(double x, Side s) const { return problem->u(x, s); }
  double derivative(double x, Side s) const { return problem->du(x, s); }
};

struct FluxReport1d {
  double gamma_minus = 0.0;  // approximates beta- u'(alpha-)
  double gamma_plus = 0.0;   // approximates -beta+ u'(alpha+)
  double gamma_0 = 0.0;      // approximates -beta- u'(0)
  double gamma_1 = 0.0;      // approximates beta+ u'(1)
  double ux_minus = 0.0;
  double ux_plus = 0.0;
};

namespace detail {

// Breakpoints of (lo, hi): the grid nodes strictly inside plus both ends.
std::vector<double> breakpoints(const Grid1d& grid, double lo, double hi);

// Integral over (lo, hi), all on one side, of beta u' * s + (q u - f) * weight(x)
// where s is +1 or -1.
template <PiecewiseField1d F, class W>
double weighted_residual(const F& field, const Problem1d& problem, const Grid1d& grid, double lo, double hi,
                         Side side, double sign, W weight) {
  const QuadratureRule gq = gauss_interval(4);
  const double beta = problem.coeff.beta(side);
  const std::vector<double> pts = breakpoints(grid, lo, hi);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double a = pts[k];
    const double len = pts[k + 1] - a;
    for (std::size_t g = 0; g < gq.size(); ++g) {
      const double x = a + gq.x(g) * len;
      const double w = gq.weights[g] * len;
      total += w * (sign * beta * field.derivative(x, side) +
                    (problem.q * field.value(x, side) - problem.f(x, side)) * weight(x));
    }
  }
  return total;
}

}  // namespace detail

template <PiecewiseField1d F>
double flux_left(const F& field, const Problem1d& problem, const Grid1d& grid) {
  const double a = problem.alpha;
  if (!(a > 0.0)) throw ParameterError("flux_left needs alpha > 0");
  return detail::weighted_residual(field, problem, grid, 0.0, a, Side::Minus, 1.0, [](double x) { return x; }) / a;
}

template <PiecewiseField1d F>
double flux_right(const F& field, const Problem1d& problem, const Grid1d& grid) {
  const double a = problem.alpha;
  if (!(a < 1.0)) throw ParameterError("flux_right needs alpha < 1");
  return detail::weighted_residual(field, problem, grid, a, 1.0, Side::Plus, -1.0,
                                   [](double x) { return 1.0 - x; }) /
         (1.0 - a);
}

// Returns (gamma_0, gamma_1) from integrals over the whole of (0, 1).
template <PiecewiseField1d F>
std::pair<double, double> flux_boundaries(const F& field, const Problem1d& problem, const Grid1d& grid) {
  const double a = problem.alpha;
  auto one_minus_x = [](double x) { return 1.0 - x; };
  auto x_weight = [](double x) { return x; };
  const double g0 = detail::weighted_residual(field, problem, grid, 0.0, a, Side::Minus, -1.0, one_minus_x) +
                    detail::weighted_residual(field, problem, grid, a, 1.0, Side::Plus, -1.0, one_minus_x);
  const double g1 = detail::weighted_residual(field, problem, grid, 0.0, a, Side::Minus, 1.0, x_weight) +
                    detail::weighted_residual(field, problem, grid, a, 1.0, Side::Plus, 1.0, x_weight);
  return {g0, g1};
}

template <PiecewiseField1d F>
FluxReport1d flux_report(const F& field, const Problem1d& problem, const Grid1d& grid) {
  FluxReport1d r;
  r.gamma_minus = flux_left(field, problem, grid);
  r.gamma_plus = flux_right(field, problem, grid);
  std::tie(r.gamma_0, r.gamma_1) = flux_boundaries(field, problem, grid);
  r.ux_minus = r.gamma_minus / problem.coeff.beta_minus;
  r.ux_plus = -r.gamma_plus / problem.coeff.beta_plus;
  return r;
}

inline FluxReport1d flux_report(const Solution1d& sol, const Problem1d& problem) {
  return flux_report(sol, problem, sol.grid());
}

}  // namespace iflux
