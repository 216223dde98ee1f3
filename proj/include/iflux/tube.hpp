#pragma once

#include <vector>

#include "iflux/geometry.hpp"
#include "iflux/mesh.hpp"

namespace iflux {

struct TubeRegion {
  double epsilon = 0.0;
  bool whole_domain = false;
  std::vector<int> elements;  // ascending
  std::vector<bool> contains;  // per mesh element
  std::vector<int> nodes;  // ascending
  std::vector<CellKind> side_tag;  // per tube element, by level-set sign

  int size() const { return static_cast<int>(elements.size()); }
  bool empty() const { return elements.empty(); }
};

// Elements whose centroid lies within epsilon of the circle. A radius 0
// interface selects every element, and so does an infinite epsilon.
TubeRegion extract_tube(const TriMesh& mesh, const CircleInterface& circle, double epsilon);

// Cut tags need the classified geometry; without it tags come from the
// centroid sign alone.
TubeRegion extract_tube(const TriMesh& mesh, const CircleInterface& circle, double epsilon,
                        const std::vector<ElementGeometry>& geometry);

}  // namespace iflux
