#include "iflux/ifem1d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "iflux/error.hpp"
#include "iflux/quadrature.hpp"
#include "iflux/solvers.hpp"

namespace iflux {

Grid1d Grid1d::uniform(int n, double alpha) {
  if (n < 2) throw ParameterError("1D grid needs at least 2 elements, got " + std::to_string(n));
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ParameterError("interface point alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
  Grid1d g;
  g.n = n;
  g.h = 1.0 / n;
  g.alpha = alpha;
  int j = std::clamp(static_cast<int>(std::floor(alpha / g.h)), 0, n - 1);
  // Floating-point floor can land one cell off when alpha sits on a node.
  while (j + 1 < n && g.node(j + 1) <= alpha) ++j;
  while (j > 0 && g.node(j) > alpha) --j;
  g.j = j;
  return g;
}

IfemBasis build_basis(const Grid1d& grid, const PiecewiseCoefficient& coeff) {
  IfemBasis basis;
  basis.grid = grid;
  basis.rho = coeff.rho();
  const double xj1 = grid.node(grid.j + 1);
  basis.D = grid.h - (1.0 - basis.rho) * (xj1 - grid.alpha);
  if (!(basis.D > 0.0)) {
    std::ostringstream msg;
    msg << "degenerate immersed basis: D = " << basis.D << " (h = " << grid.h << ", alpha = " << grid.alpha << ")";
    throw DegenerateError(msg.str());
  }
  return basis;
}

namespace {

bool left_of_alpha(double x, double alpha, Side side) { return x < alpha || (x == alpha && side == Side::Minus); }

}  // namespace

double IfemBasis::phi(int which, double x, Side side) const {
  const int j = grid.j;
  const double h = grid.h;
  const double xj = grid.node(j);
  const double xj1 = grid.node(j + 1);
  const double a = grid.alpha;
  // On the cut element each piece is the chord between its node value and
  // the shared value at alpha, so nodes and both one-sided limits are exact.
  const double phi_j_alpha = rho * (xj1 - a) / D;
  const bool left = left_of_alpha(x, a, side);
  const double t = left ? (a > xj ? (x - xj) / (a - xj) : 1.0) : (xj1 - x) / (xj1 - a);
  if (which == 0) {
    if (x < grid.node(j - 1) || x > xj1) return 0.0;
    if (x < xj) return (x - grid.node(j - 1)) / h;
    return left ? 1.0 + (phi_j_alpha - 1.0) * t : phi_j_alpha * t;
  }
  if (which == 1) {
    if (x < xj || x > grid.node(j + 2)) return 0.0;
    if (x > xj1) return (grid.node(j + 2) - x) / h;
    return left ? (1.0 - phi_j_alpha) * t : 1.0 - phi_j_alpha * t;
  }
  throw ParameterError("basis selector must be 0 (phi_j) or 1 (phi_j+1)");
}

double IfemBasis::dphi(int which, double x, Side side) const {
  const int j = grid.j;
  const double h = grid.h;
  const double xj = grid.node(j);
  const double xj1 = grid.node(j + 1);
  if (which == 0) {
    if (x < grid.node(j - 1) || x > xj1) return 0.0;
    if (x < xj) return 1.0 / h;
    if (left_of_alpha(x, grid.alpha, side)) return -1.0 / D;
    return -rho / D;
  }
  if (which == 1) {
    if (x < xj || x > grid.node(j + 2)) return 0.0;
    if (x > xj1) return -1.0 / h;
    if (left_of_alpha(x, grid.alpha, side)) return 1.0 / D;
    return rho / D;
  }
  throw ParameterError("basis selector must be 0 (phi_j) or 1 (phi_j+1)");
}

std::vector<Piece1d> ifem_pieces(const IfemBasis& basis) {
  const Grid1d& g = basis.grid;
  std::vector<Piece1d> pieces;
  pieces.reserve(g.n + 1);
  for (int i = 0; i < g.n; ++i) {
    if (i != g.j) {
      Piece1d p;
      p.a = g.node(i);
      p.b = g.node(i + 1);
      p.side = i < g.j ? Side::Minus : Side::Plus;
      p.dof = {i, i + 1};
      p.value_a = {1.0, 0.0};
      p.value_b = {0.0, 1.0};
      pieces.push_back(p);
      continue;
    }
    const double a = g.alpha;
    if (a > g.node(i)) {
      Piece1d left;
      left.a = g.node(i);
      left.b = a;
      left.side = Side::Minus;
      left.dof = {i, i + 1};
      left.value_a = {1.0, 0.0};
      left.value_b = {basis.phi(0, a, Side::Minus), basis.phi(1, a, Side::Minus)};
      pieces.push_back(left);
    }
    Piece1d right;
    right.a = a;
    right.b = g.node(i + 1);
    right.side = Side::Plus;
    right.dof = {i, i + 1};
    right.value_a = {basis.phi(0, a, Side::Plus), basis.phi(1, a, Side::Plus)};
    right.value_b = {0.0, 1.0};
    pieces.push_back(right);
  }
  return pieces;
}

Solution1d::Solution1d(IfemBasis basis, Vector nodal)
    : basis_(std::move(basis)), nodal_(std::move(nodal)), pieces_(ifem_pieces(basis_)) {
  if (nodal_.size() != basis_.grid.n + 1) {
    throw DimensionError("nodal vector must have n + 1 = " + std::to_string(basis_.grid.n + 1) + " entries");
  }
}

const Piece1d& Solution1d::locate(double x, SideSelector side) const {
  if (!(x >= 0.0 && x <= 1.0)) throw ParameterError("evaluation point outside [0, 1]: " + std::to_string(x));
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x, [](double v, const Piece1d& p) { return v < p.a; });
  std::size_t k = static_cast<std::size_t>(std::distance(pieces_.begin(), it));
  k = k == 0 ? 0 : k - 1;
  const bool at_breakpoint = k > 0 && x == pieces_[k].a;
  if (!at_breakpoint) return pieces_[k];
  if (x == basis_.grid.alpha && side == SideSelector::Auto) {
    throw ParameterError("evaluation exactly at the interface is ambiguous; select the left or right side");
  }
  return side == SideSelector::Left ? pieces_[k - 1] : pieces_[k];
}

const Piece1d& Solution1d::locate_on_side(double x, Side side) const {
  const Piece1d& p = locate(x, side == Side::Minus ? SideSelector::Left : SideSelector::Right);
  if (p.side == side) return p;
  std::ostringstream msg;
  msg << "point " << x << " is not on the " << to_string(side) << " side of the interface";
  throw ParameterError(msg.str());
}

namespace {

double piece_value(const Piece1d& p, const Vector& c, double x) {
  return c(p.dof[0]) * p.shape(0, x) + c(p.dof[1]) * p.shape(1, x);
}

double piece_slope(const Piece1d& p, const Vector& c) { return c(p.dof[0]) * p.slope(0) + c(p.dof[1]) * p.slope(1); }

}  // namespace

double Solution1d::evaluate(double x, SideSelector side) const {
  const Grid1d& g = basis_.grid;
  // Nodes return the stored coefficient exactly rather than a rounded
  // reconstruction.
  const double t = x / g.h;
  const int i = static_cast<int>(std::lround(t));
  if (i >= 0 && i <= g.n && g.node(i) == x && !(x == g.alpha && side == SideSelector::Auto)) return nodal_(i);
  return piece_value(locate(x, side), nodal_, x);
}

double Solution1d::evaluate_derivative(double x, SideSelector side) const { return piece_slope(locate(x, side), nodal_); }

double Solution1d::value(double x, Side side) const { return piece_value(locate_on_side(x, side), nodal_, x); }

double Solution1d::derivative(double x, Side side) const { return piece_slope(locate_on_side(x, side), nodal_); }

double interpolation_kappa(const Grid1d& grid, const PiecewiseCoefficient& coeff, double u_j, double u_j1) {
  const double a = grid.alpha;
  const double denom = coeff.beta_plus * (a - grid.node(grid.j)) - coeff.beta_minus * (a - grid.node(grid.j + 1));
  if (!(denom > 0.0)) throw DegenerateError("interpolation slope denominator is not positive");
  return coeff.beta_plus * (u_j1 - u_j) / denom;
}

Solution1d interpolate(const Vector& u_node_values, const Grid1d& grid, const PiecewiseCoefficient& coeff) {
  if (u_node_values.size() != grid.n + 1) throw DimensionError("interpolation needs n + 1 nodal values");
  // The nodal representation already encodes kappa; this call only guards
  // the denominator the closed form divides by.
  interpolation_kappa(grid, coeff, u_node_values(grid.j), u_node_values(grid.j + 1));
  return Solution1d(build_basis(grid, coeff), u_node_values);
}

Solution1d interpolate(const Problem1d& problem, const Grid1d& grid) {
  Vector values(grid.n + 1);
  for (int i = 0; i <= grid.n; ++i) values(i) = problem.exact(grid.node(i));
  return interpolate(values, grid, problem.coeff);
}

Ifem1dSystem assemble(const Problem1d& problem, const Grid1d& grid) {
  if (grid.alpha != problem.alpha) throw ParameterError("grid and problem disagree on the interface point");
  Ifem1dSystem sys;
  sys.grid = grid;
  sys.basis = build_basis(grid, problem.coeff);
  sys.u_left = problem.u(0.0, Side::Minus);
  sys.u_right = problem.u(1.0, Side::Plus);
  const int n = grid.n;
  const long m = n - 1;
  TripletBuilder tb(m, m);
  sys.rhs = Vector::Zero(m);
  const QuadratureRule gq = gauss_interval(4);
  auto boundary_value = [&](int dof) { return dof == 0 ? sys.u_left : sys.u_right; };
  for (const Piece1d& p : ifem_pieces(sys.basis)) {
    const double beta = problem.coeff.beta(p.side);
    const double len = p.length();
    double k[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    double load[2] = {0.0, 0.0};
    for (std::size_t g = 0; g < gq.size(); ++g) {
      const double x = p.a + gq.x(g) * len;
      const double w = gq.weights[g] * len;
      const double fx = problem.f(x, p.side);
      for (int r = 0; r < 2; ++r) {
        load[r] += w * fx * p.shape(r, x);
        for (int c = 0; c < 2; ++c) {
          k[r][c] += w * (beta * p.slope(r) * p.slope(c) + problem.q * p.shape(r, x) * p.shape(c, x));
        }
      }
    }
    for (int r = 0; r < 2; ++r) {
      const int row = p.dof[r];
      if (row == 0 || row == n) continue;
      sys.rhs(row - 1) += load[r];
      for (int c = 0; c < 2; ++c) {
        const int col = p.dof[c];
        if (col == 0 || col == n) {
          sys.rhs(row - 1) -= k[r][c] * boundary_value(col);
        } else {
          tb.add(row - 1, col - 1, k[r][c]);
        }
      }
    }
  }
  sys.matrix = tb.finalize();
  return sys;
}

Solution1d solve(const Ifem1dSystem& system) {
  const Vector interior = solve_spd(system.matrix, system.rhs);
  Vector nodal(system.grid.n + 1);
  nodal(0) = system.u_left;
  nodal(system.grid.n) = system.u_right;
  nodal.segment(1, system.grid.n - 1) = interior;
  return Solution1d(system.basis, nodal);
}

Solution1d solve(const Problem1d& problem, const Grid1d& grid) { return solve(assemble(problem, grid)); }

}  // namespace iflux
