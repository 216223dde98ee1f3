#pragma once

#include <array>
#include <optional>
#include <vector>

#include "iflux/mesh.hpp"
#include "iflux/problems.hpp"

namespace iflux {

struct SubTriangle {
  std::array<Vec2, 3> v;
  Side side = Side::Plus;
  double area() const;
};

// Straight segment between the two edge-circle intersections of a cut
// element. Its union over all cut elements is the inscribed polyline used
// for every interface integral.
struct Chord {
  Vec2 a;
  Vec2 b;
  double length() const { return (b - a).norm(); }
};

enum class CellKind { Minus, Plus, Cut };

struct QuadPoint {
  Vec2 x;
  double w = 0.0;
};

struct LinePoint {
  Vec2 x;
  double w = 0.0;
  Vec2 normal;  // outward from the Minus side
};

// Polyline treats the chord as the interface. Exact integrates over the true
// circular regions: the lens between chord and arc moves from the Plus
// pieces to the Minus side, and interface integrals run along the arc.
enum class GeometryMode { Polyline, Exact };

struct ElementGeometry {
  CellKind kind = CellKind::Plus;
  std::vector<SubTriangle> pieces;
  std::optional<Chord> chord;
  // Cut elements only. Lens points carry positive weights and belong to the
  // Minus side.
  std::vector<QuadPoint> lens;
  std::vector<LinePoint> interface_points;

  bool has_side(Side s) const;
  double side_area(Side s) const;
  // Quadrature for integrals over the part of the element on side s. Plus
  // side rules of cut elements carry negative lens weights in Exact mode.
  std::vector<QuadPoint> side_quadrature(Side s) const;
};

// Splits each element by the level-set sign at its vertices (negative is
// Minus). A cut element becomes the lone-vertex sub-triangle plus the
// remaining quadrilateral as two sub-triangles; slivers below 1e-14 h^2 are
// dropped.
std::vector<ElementGeometry> classify_elements(const TriMesh& mesh, const CircleInterface& circle,
                                               GeometryMode mode = GeometryMode::Polyline);

// Order-4 rule mapped onto a sub-triangle.
std::vector<QuadPoint> piece_quadrature(const SubTriangle& piece);

// Two-point Gauss rule on a chord with radial normals.
std::vector<LinePoint> chord_quadrature(const Chord& chord, const CircleInterface& circle);

// Two-point Gauss rule in angle on the minor arc between the chord ends.
std::vector<LinePoint> arc_quadrature(const Chord& chord, const CircleInterface& circle);

// Tensor Gauss rule in polar coordinates on the region between the chord and
// the minor arc.
std::vector<QuadPoint> lens_quadrature(const Chord& chord, const CircleInterface& circle);

}  // namespace iflux
