#include "iflux/tube.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "iflux/error.hpp"

namespace iflux {

namespace {

TubeRegion select(const TriMesh& mesh, const CircleInterface& circle, double epsilon,
                  const std::vector<ElementGeometry>* geometry) {
  const bool whole = circle.empty() || std::isinf(epsilon);
  if (!whole && !(epsilon > 0.0)) throw ParameterError("tube half-width must be positive");
  TubeRegion tube;
  tube.epsilon = epsilon;
  tube.whole_domain = whole;
  tube.contains.assign(mesh.triangles.size(), false);
  std::vector<bool> node_in(mesh.nodes.size(), false);
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const Vec2 c = mesh.centroid(e);
    if (!whole && !(std::abs(circle.level_set(c)) <= epsilon)) continue;
    tube.contains[e] = true;
    tube.elements.push_back(e);
    for (int k : mesh.triangles[e]) node_in[k] = true;
    if (geometry != nullptr) {
      tube.side_tag.push_back((*geometry)[e].kind);
    } else {
      tube.side_tag.push_back(circle.side_of(c) == Side::Minus ? CellKind::Minus : CellKind::Plus);
    }
  }
  if (tube.elements.empty()) {
    std::ostringstream msg;
    msg << "tube of half-width " << epsilon << " contains no element centroid (h = " << mesh.h
        << "); widen the tube";
    throw EmptyTubeError(msg.str());
  }
  for (int k = 0; k < mesh.n_nodes(); ++k) {
    if (node_in[k]) tube.nodes.push_back(k);
  }
  return tube;
}

}  // namespace

TubeRegion extract_tube(const TriMesh& mesh, const CircleInterface& circle, double epsilon) {
  return select(mesh, circle, epsilon, nullptr);
}

TubeRegion extract_tube(const TriMesh& mesh, const CircleInterface& circle, double epsilon,
                        const std::vector<ElementGeometry>& geometry) {
  return select(mesh, circle, epsilon, &geometry);
}

}  // namespace iflux
