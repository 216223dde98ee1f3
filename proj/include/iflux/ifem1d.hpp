#pragma once

#include <array>
#include <vector>

#include "iflux/problems.hpp"
#include "iflux/sparse.hpp"

namespace iflux {

// Uniform grid on [0,1] with the interface element j chosen so that
// x_j <= alpha < x_{j+1}.
struct Grid1d {
  int n = 0;
  double h = 0.0;
  double alpha = 0.5;
  int j = 0;

  static Grid1d uniform(int n, double alpha);
  double node(int i) const { return i * h; }
  bool alpha_on_node() const { return node(j) == alpha; }
};

// Interface-modified hats on the cut element. phi_j spans [x_{j-1}, x_{j+1}]
// and phi_{j+1} spans [x_j, x_{j+2}]; both are standard hats outside the cut
// element.
struct IfemBasis {
  Grid1d grid;
  double rho = 1.0;
  double D = 0.0;

  // which = 0 selects phi_j, which = 1 selects phi_{j+1}. At x == alpha the
  // side picks the one-sided limit (the values agree, the slopes do not).
  double phi(int which, double x, Side side) const;
  double dphi(int which, double x, Side side) const;
};

IfemBasis build_basis(const Grid1d& grid, const PiecewiseCoefficient& coeff);

// A maximal interval on which every active basis function is linear. Each
// piece carries the two nonzero shape functions by their endpoint values.
struct Piece1d {
  double a = 0.0;
  double b = 0.0;
  Side side = Side::Minus;
  std::array<int, 2> dof{};
  std::array<double, 2> value_a{};
  std::array<double, 2> value_b{};

  double length() const { return b - a; }
  double slope(int k) const { return (value_b[k] - value_a[k]) / (b - a); }
  double shape(int k, double x) const { return value_a[k] + (x - a) * slope(k); }
};

std::vector<Piece1d> ifem_pieces(const IfemBasis& basis);

enum class SideSelector { Left, Right, Auto };

// Member of the immersed space given by its nodal values c_0..c_n.
class Solution1d {
 public:
  Solution1d() = default;
  Solution1d(IfemBasis basis, Vector nodal);

  const Grid1d& grid() const { return basis_.grid; }
  const IfemBasis& basis() const { return basis_; }
  const Vector& nodal() const { return nodal_; }
  const std::vector<Piece1d>& pieces() const { return pieces_; }

  double evaluate(double x, SideSelector side = SideSelector::Auto) const;
  double evaluate_derivative(double x, SideSelector side = SideSelector::Auto) const;

  // Evaluation restricted to one side of the interface; x must lie in the
  // closure of that side. Used by the flux functionals and error norms.
  double value(double x, Side side) const;
  double derivative(double x, Side side) const;

 private:
  const Piece1d& locate(double x, SideSelector side) const;
  const Piece1d& locate_on_side(double x, Side side) const;

  IfemBasis basis_;
  Vector nodal_;
  std::vector<Piece1d> pieces_;
};

// Slope of the interpolant left of alpha. The right slope is kappa * rho.
double interpolation_kappa(const Grid1d& grid, const PiecewiseCoefficient& coeff, double u_j, double u_j1);

// pi_h u: the unique member of the immersed space matching u at every node.
Solution1d interpolate(const Vector& u_node_values, const Grid1d& grid, const PiecewiseCoefficient& coeff);
Solution1d interpolate(const Problem1d& problem, const Grid1d& grid);

struct Ifem1dSystem {
  Grid1d grid;
  IfemBasis basis;
  SparseMatrix matrix;  // interior nodes 1..n-1
  Vector rhs;
  double u_left = 0.0;
  double u_right = 0.0;
};

Ifem1dSystem assemble(const Problem1d& problem, const Grid1d& grid);
Solution1d solve(const Problem1d& problem, const Grid1d& grid);
Solution1d solve(const Ifem1dSystem& system);

}  // namespace iflux
