#include "iflux/mesh.hpp"

#include <algorithm>
#include <cmath>

#include "iflux/error.hpp"

namespace iflux {

TriMesh build_mesh(const SquareDomain& domain, int N) {
  if (N < 4) throw ParameterError("mesh needs N >= 4 lines per direction, got " + std::to_string(N));
  if (!(domain.hi > domain.lo)) throw ParameterError("square domain must have positive side length");
  TriMesh m;
  m.N = N;
  m.domain = domain;
  m.h = domain.side_length() / N;
  const int n1 = N + 1;
  m.nodes.reserve(static_cast<std::size_t>(n1) * n1);
  m.boundary.reserve(static_cast<std::size_t>(n1) * n1);
  for (int j = 0; j < n1; ++j) {
    for (int i = 0; i < n1; ++i) {
      m.nodes.emplace_back(domain.lo + i * m.h, domain.lo + j * m.h);
      m.boundary.push_back(i == 0 || j == 0 || i == N || j == N);
    }
  }
  m.triangles.reserve(2 * static_cast<std::size_t>(N) * N);
  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < N; ++i) {
      const int p00 = j * n1 + i;
      const int p10 = p00 + 1;
      const int p01 = p00 + n1;
      const int p11 = p01 + 1;
      m.triangles.push_back({p00, p10, p11});
      m.triangles.push_back({p00, p11, p01});
    }
  }
  return m;
}

Vec2 TriMesh::centroid(int e) const {
  const auto& t = triangles[e];
  return (nodes[t[0]] + nodes[t[1]] + nodes[t[2]]) / 3.0;
}

double TriMesh::area(int e) const {
  const auto& t = triangles[e];
  const Vec2 a = nodes[t[1]] - nodes[t[0]];
  const Vec2 b = nodes[t[2]] - nodes[t[0]];
  return 0.5 * std::abs(a.x() * b.y() - a.y() * b.x());
}

int TriMesh::locate(const Vec2& p) const {
  const double sx = (p.x() - domain.lo) / h;
  const double sy = (p.y() - domain.lo) / h;
  if (!(sx >= 0.0 && sy >= 0.0 && sx <= N && sy <= N)) return -1;
  const int i = std::min(static_cast<int>(sx), N - 1);
  const int j = std::min(static_cast<int>(sy), N - 1);
  const double xi = sx - i;
  const double eta = sy - j;
  const int cell = j * N + i;
  return 2 * cell + (xi >= eta ? 0 : 1);
}

P1Element P1Element::of(const TriMesh& mesh, int e) {
  const auto& t = mesh.triangles[e];
  Eigen::Matrix3d m;
  for (int k = 0; k < 3; ++k) m.row(k) << 1.0, mesh.nodes[t[k]].x(), mesh.nodes[t[k]].y();
  const Eigen::Matrix3d inv = m.inverse();
  P1Element el;
  for (int k = 0; k < 3; ++k) {
    el.c0[k] = inv(0, k);
    el.grad[k] = Vec2(inv(1, k), inv(2, k));
  }
  return el;
}

}  // namespace iflux
