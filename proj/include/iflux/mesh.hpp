#pragma once

#include <array>
#include <vector>

#include "iflux/problems.hpp"

namespace iflux {

// Uniform triangulation of a square: (N+1)^2 nodes numbered row by row from
// the lower-left corner, each cell split along its lower-left to upper-right
// diagonal into (p00, p10, p11) and (p00, p11, p01).
struct TriMesh {
  int N = 0;
  SquareDomain domain;
  double h = 0.0;
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<bool> boundary;

  int n_nodes() const { return static_cast<int>(nodes.size()); }
  int n_triangles() const { return static_cast<int>(triangles.size()); }
  Vec2 centroid(int e) const;
  double area(int e) const;
  // Containing triangle of p, or -1 when p is outside the square.
  int locate(const Vec2& p) const;
};

TriMesh build_mesh(const SquareDomain& domain, int N);

// Linear shape functions of one triangle: phi_k(x) = c0[k] + grad[k] . x.
struct P1Element {
  std::array<double, 3> c0{};
  std::array<Vec2, 3> grad{};

  static P1Element of(const TriMesh& mesh, int e);
  double phi(int k, const Vec2& x) const { return c0[k] + grad[k].dot(x); }
  std::array<double, 3> phis(const Vec2& x) const { return {phi(0, x), phi(1, x), phi(2, x)}; }
};

}  // namespace iflux
