#include "iflux/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "iflux/error.hpp"
#include "iflux/quadrature.hpp"

namespace iflux {

double SubTriangle::area() const {
  const Vec2 a = v[1] - v[0];
  const Vec2 b = v[2] - v[0];
  return 0.5 * std::abs(a.x() * b.y() - a.y() * b.x());
}

bool ElementGeometry::has_side(Side s) const {
  return std::any_of(pieces.begin(), pieces.end(), [s](const SubTriangle& p) { return p.side == s; });
}

double ElementGeometry::side_area(Side s) const {
  double a = 0.0;
  for (const auto& p : pieces) {
    if (p.side == s) a += p.area();
  }
  for (const auto& q : lens) a += s == Side::Minus ? q.w : -q.w;
  return a;
}

std::vector<QuadPoint> ElementGeometry::side_quadrature(Side s) const {
  std::vector<QuadPoint> out;
  for (const auto& p : pieces) {
    if (p.side != s) continue;
    const auto pts = piece_quadrature(p);
    out.insert(out.end(), pts.begin(), pts.end());
  }
  if (has_side(s)) {
    for (const auto& q : lens) out.push_back({q.x, s == Side::Minus ? q.w : -q.w});
  }
  return out;
}

namespace {

Vec2 edge_crossing(const Vec2& a, const Vec2& b, const CircleInterface& circle) {
  const Vec2 d = b - a;
  const Vec2 r = a - circle.center;
  const double qa = d.squaredNorm();
  const double qb = 2.0 * r.dot(d);
  const double qc = r.squaredNorm() - circle.radius * circle.radius;
  const double disc = std::sqrt(std::max(qb * qb - 4.0 * qa * qc, 0.0));
  // The numerically stable pair of roots.
  const double qq = -0.5 * (qb + std::copysign(disc, qb));
  double roots[2] = {qq / qa, qq != 0.0 ? qc / qq : qq / qa};
  constexpr double tol = 1e-12;
  for (double t : roots) {
    if (t >= -tol && t <= 1.0 + tol) return a + std::clamp(t, 0.0, 1.0) * d;
  }
  throw GeometryError("edge with opposite level-set signs has no circle crossing");
}

}  // namespace

std::vector<ElementGeometry> classify_elements(const TriMesh& mesh, const CircleInterface& circle,
                                               GeometryMode mode) {
  std::vector<ElementGeometry> out(mesh.triangles.size());
  const double min_area = 1e-14 * mesh.h * mesh.h;
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const auto& t = mesh.triangles[e];
    const std::array<Vec2, 3> p = {mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]};
    std::array<Side, 3> s{};
    for (int k = 0; k < 3; ++k) s[k] = circle.side_of(p[k]);
    ElementGeometry& g = out[e];
    if (s[0] == s[1] && s[1] == s[2]) {
      g.kind = s[0] == Side::Minus ? CellKind::Minus : CellKind::Plus;
      g.pieces.push_back({p, s[0]});
      continue;
    }
    int lone = 0;
    for (int k = 0; k < 3; ++k) {
      if (s[k] != s[(k + 1) % 3] && s[k] != s[(k + 2) % 3]) lone = k;
    }
    const int o1 = (lone + 1) % 3;
    const int o2 = (lone + 2) % 3;
    const Vec2 q1 = edge_crossing(p[lone], p[o1], circle);
    const Vec2 q2 = edge_crossing(p[lone], p[o2], circle);
    g.kind = CellKind::Cut;
    g.chord = Chord{q1, q2};
    const SubTriangle candidates[3] = {
        {{p[lone], q1, q2}, s[lone]},
        {{q1, p[o1], p[o2]}, s[o1]},
        {{q1, p[o2], q2}, s[o1]},
    };
    for (const auto& c : candidates) {
      if (c.area() >= min_area) g.pieces.push_back(c);
    }
    if (mode == GeometryMode::Exact) {
      g.interface_points = arc_quadrature(*g.chord, circle);
      // A lens is only moved when both sides keep a piece to carry it.
      if (g.has_side(Side::Minus) && g.has_side(Side::Plus)) g.lens = lens_quadrature(*g.chord, circle);
    } else {
      g.interface_points = chord_quadrature(*g.chord, circle);
    }
  }
  return out;
}

std::vector<QuadPoint> piece_quadrature(const SubTriangle& piece) {
  static const QuadratureRule rule = triangle_rule(4);
  const double scale = 2.0 * piece.area();
  std::vector<QuadPoint> pts(rule.size());
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const auto& l = rule.bary(k);
    pts[k].x = l[0] * piece.v[0] + l[1] * piece.v[1] + l[2] * piece.v[2];
    pts[k].w = rule.weights[k] * scale;
  }
  return pts;
}

std::vector<LinePoint> chord_quadrature(const Chord& chord, const CircleInterface& circle) {
  static const QuadratureRule rule = gauss_interval(2);
  const double len = chord.length();
  std::vector<LinePoint> pts;
  if (len == 0.0) return pts;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    LinePoint lp;
    lp.x = chord.a + rule.x(k) * (chord.b - chord.a);
    lp.w = rule.weights[k] * len;
    lp.normal = circle.normal_at(lp.x);
    pts.push_back(lp);
  }
  return pts;
}

namespace {

struct ArcSpan {
  double t0 = 0.0;
  double dt = 0.0;
};

ArcSpan minor_arc(const Chord& chord, const CircleInterface& circle) {
  const Vec2 a = chord.a - circle.center;
  const Vec2 b = chord.b - circle.center;
  const double t0 = std::atan2(a.y(), a.x());
  double dt = std::atan2(b.y(), b.x()) - t0;
  dt = std::remainder(dt, 2.0 * std::numbers::pi);
  return {t0, dt};
}

}  // namespace

std::vector<LinePoint> arc_quadrature(const Chord& chord, const CircleInterface& circle) {
  static const QuadratureRule rule = gauss_interval(2);
  const ArcSpan span = minor_arc(chord, circle);
  std::vector<LinePoint> pts;
  if (span.dt == 0.0) return pts;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double t = span.t0 + rule.x(k) * span.dt;
    LinePoint lp;
    lp.normal = Vec2(std::cos(t), std::sin(t));
    lp.x = circle.center + circle.radius * lp.normal;
    lp.w = rule.weights[k] * std::abs(span.dt) * circle.radius;
    pts.push_back(lp);
  }
  return pts;
}

std::vector<QuadPoint> lens_quadrature(const Chord& chord, const CircleInterface& circle) {
  static const QuadratureRule rule = gauss_interval(3);
  const ArcSpan span = minor_arc(chord, circle);
  std::vector<QuadPoint> pts;
  if (span.dt == 0.0) return pts;
  const Vec2 mid = 0.5 * (chord.a + chord.b) - circle.center;
  const double dist = mid.norm();
  const double tm = std::atan2(mid.y(), mid.x());
  const double R = circle.radius;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double t = span.t0 + rule.x(i) * span.dt;
    const double wt = rule.weights[i] * std::abs(span.dt);
    const double rc = dist / std::cos(t - tm);
    const Vec2 dir(std::cos(t), std::sin(t));
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const double r = rc + rule.x(k) * (R - rc);
      pts.push_back({circle.center + r * dir, wt * rule.weights[k] * (R - rc) * r});
    }
  }
  return pts;
}

}  // namespace iflux
