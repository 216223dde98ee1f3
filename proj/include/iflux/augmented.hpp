#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "iflux/geometry.hpp"
#include "iflux/mesh.hpp"
#include "iflux/problems.hpp"
#include "iflux/solvers.hpp"
#include "iflux/sparse.hpp"
#include "iflux/tube.hpp"

namespace iflux {

// Everything about the discrete spaces that does not depend on the solve:
// mesh, cut geometry, tube and the column layout. u columns number the
// interior nodes in ascending order. Flux columns follow, two per
// (node, side) pair, ordered by node, then Minus before Plus, then x before y.
// The flux field is one P1 extension per side, so a cut element carries a
// separate vector field for each of its sides.
struct Discretization2d {
  TriMesh mesh;
  CircleInterface circle;
  std::vector<ElementGeometry> geometry;
  std::optional<TubeRegion> tube;
  Vector boundary_values;  // exact u at every node; only boundary entries are used
  std::vector<int> u_index;
  int n_u = 0;
  std::vector<std::array<int, 2>> v_index;
  int n_v = 0;

  long u_col(int node) const { return u_index[node]; }
  long v_col(int node, Side s, int comp) const {
    return n_u + 2L * v_index[node][static_cast<int>(s)] + comp;
  }
  long n_cols() const { return n_u + 2L * n_v; }
  bool has_flux(int e, Side s) const;
};

std::shared_ptr<const Discretization2d> discretize(const Problem2d& problem, const TriMesh& mesh,
                                                   const TubeRegion* tube,
                                                   GeometryMode mode = GeometryMode::Polyline);

// Rows of one equation family: local row indices, global column indices.
struct RowBlock {
  long n_rows = 0;
  std::vector<Eigen::Triplet<double>> entries;
  Vector rhs;
};

// (beta grad u, grad phi) + (q u, phi) = (f, phi) - int_Gamma [beta du/dn] phi
RowBlock assemble_galerkin_rows(const Problem2d& problem, const Discretization2d& disc);
// -(beta_i grad u, g) - (v_i, g) = 0 for every P1 test g on the side's pieces
RowBlock assemble_flux_identity_rows(const Problem2d& problem, const Discretization2d& disc);
// (div v_i, 1)_T_i + (q u, 1)_T_i = (f, 1)_T_i per tube element and side
RowBlock assemble_divergence_rows(const Problem2d& problem, const Discretization2d& disc);
// Couples the two side fields at the chord Gauss points of each cut tube
// element: normal jump of v equals minus the flux jump and the tangential
// derivative of u agrees across the interface.
RowBlock assemble_jump_rows(const Problem2d& problem, const Discretization2d& disc);

struct AugmentedSystem2d {
  std::shared_ptr<const Discretization2d> disc;
  SparseMatrix matrix;
  Vector rhs;
  long galerkin_rows = 0;
  long flux_rows = 0;
  long divergence_rows = 0;
  long jump_rows = 0;
};

AugmentedSystem2d assemble_augmented(const Problem2d& problem, const TriMesh& mesh, const TubeRegion& tube);
// Assembles the augmented blocks over an already built discretization. An
// empty tube gives back the Galerkin block alone.
AugmentedSystem2d assemble_augmented(const Problem2d& problem, std::shared_ptr<const Discretization2d> disc);

struct StandardSystem2d {
  std::shared_ptr<const Discretization2d> disc;
  SparseMatrix matrix;
  Vector rhs;
};

StandardSystem2d assemble_standard(const Problem2d& problem, const TriMesh& mesh,
                                   GeometryMode mode = GeometryMode::Polyline);

class Solution2d {
 public:
  Solution2d() = default;
  Solution2d(std::shared_ptr<const Discretization2d> disc, Vector u, Vector v, bool augmented);

  const Discretization2d& disc() const { return *disc_; }
  const TriMesh& mesh() const { return disc_->mesh; }
  const Vector& u() const { return u_; }
  const Vector& v() const { return v_; }
  bool augmented() const { return augmented_; }

  double u_at(int e, const Vec2& p) const;
  Vec2 grad_u(int e) const;
  Vec2 v_node(int node, Side s) const;
  // Side-s flux field of element e evaluated at p (extrapolated if p is
  // outside e). Throws GeometryError if e carries no flux dofs for s.
  Vec2 flux_at(int e, Side s, const Vec2& p) const;
  // e itself when it carries side-s dofs, otherwise the tube element with
  // side-s dofs whose centroid is nearest to p.
  int flux_element(int e, Side s, const Vec2& p) const;

 private:
  std::shared_ptr<const Discretization2d> disc_;
  Vector u_;
  Vector v_;
  bool augmented_ = false;
};

Solution2d solve_augmented(const AugmentedSystem2d& system, LsqMethod method);
Solution2d solve_augmented(const Problem2d& problem, const TriMesh& mesh, const TubeRegion& tube, LsqMethod method);
Solution2d solve_standard_fem(const StandardSystem2d& system);
Solution2d solve_standard_fem(const Problem2d& problem, const TriMesh& mesh);

}  // namespace iflux
