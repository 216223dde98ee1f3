#include "iflux/augmented.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "iflux/error.hpp"

namespace iflux {

namespace {

constexpr Side kSides[2] = {Side::Minus, Side::Plus};

int side_slot(Side s) { return static_cast<int>(s); }

// Adds value * u_node to row, either as a matrix entry or, for a boundary
// node, as a lifted right-hand side term.
void add_u_term(const Discretization2d& d, RowBlock& block, long row, int node, double value) {
  if (d.u_index[node] < 0) {
    block.rhs(row) -= value * d.boundary_values(node);
  } else {
    block.entries.emplace_back(row, d.u_index[node], value);
  }
}

}  // namespace

bool Discretization2d::has_flux(int e, Side s) const {
  for (int k : mesh.triangles[e]) {
    if (v_index[k][side_slot(s)] < 0) return false;
  }
  return true;
}

std::shared_ptr<const Discretization2d> discretize(const Problem2d& problem, const TriMesh& mesh,
                                                   const TubeRegion* tube, GeometryMode mode) {
  auto d = std::make_shared<Discretization2d>();
  d->mesh = mesh;
  d->circle = problem.circle;
  d->geometry = classify_elements(mesh, problem.circle, mode);
  d->boundary_values = Vector::Zero(mesh.n_nodes());
  d->u_index.assign(mesh.nodes.size(), -1);
  for (int k = 0; k < mesh.n_nodes(); ++k) {
    if (mesh.boundary[k]) {
      d->boundary_values(k) = problem.exact(mesh.nodes[k]);
    } else {
      d->u_index[k] = d->n_u++;
    }
  }
  d->v_index.assign(mesh.nodes.size(), {-1, -1});
  if (tube != nullptr) {
    if (tube->contains.size() != mesh.triangles.size()) throw DimensionError("tube was built for another mesh");
    d->tube = *tube;
    std::vector<std::array<bool, 2>> present(mesh.nodes.size(), {false, false});
    for (int e : tube->elements) {
      for (Side s : kSides) {
        if (!d->geometry[e].has_side(s)) continue;
        for (int k : mesh.triangles[e]) present[k][side_slot(s)] = true;
      }
    }
    for (int k = 0; k < mesh.n_nodes(); ++k) {
      for (int s = 0; s < 2; ++s) {
        if (present[k][s]) d->v_index[k][s] = d->n_v++;
      }
    }
  }
  return d;
}

RowBlock assemble_galerkin_rows(const Problem2d& problem, const Discretization2d& d) {
  const TriMesh& mesh = d.mesh;
  RowBlock block;
  block.n_rows = d.n_u;
  block.rhs = Vector::Zero(d.n_u);
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const auto& t = mesh.triangles[e];
    const P1Element el = P1Element::of(mesh, e);
    double k[3][3] = {};
    double load[3] = {};
    for (Side s : kSides) {
      if (!d.geometry[e].has_side(s)) continue;
      const double beta = problem.coeff.beta(s);
      const double area = d.geometry[e].side_area(s);
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) k[a][b] += beta * area * el.grad[a].dot(el.grad[b]);
      }
      for (const QuadPoint& qp : d.geometry[e].side_quadrature(s)) {
        const auto phi = el.phis(qp.x);
        const double fx = problem.f(qp.x, s);
        for (int a = 0; a < 3; ++a) {
          load[a] += qp.w * fx * phi[a];
          if (problem.q != 0.0) {
            for (int b = 0; b < 3; ++b) k[a][b] += qp.w * problem.q * phi[a] * phi[b];
          }
        }
      }
    }
    for (const LinePoint& lp : d.geometry[e].interface_points) {
      const double jump = problem.flux_jump(lp.x);
      if (jump == 0.0) continue;
      const auto phi = el.phis(lp.x);
      for (int a = 0; a < 3; ++a) load[a] -= lp.w * jump * phi[a];
    }
    for (int a = 0; a < 3; ++a) {
      const long row = d.u_index[t[a]];
      if (row < 0) continue;
      block.rhs(row) += load[a];
      for (int b = 0; b < 3; ++b) add_u_term(d, block, row, t[b], k[a][b]);
    }
  }
  return block;
}

RowBlock assemble_flux_identity_rows(const Problem2d& problem, const Discretization2d& d) {
  RowBlock block;
  block.n_rows = 2L * d.n_v;
  block.rhs = Vector::Zero(block.n_rows);
  if (!d.tube) return block;
  const TriMesh& mesh = d.mesh;
  for (int e : d.tube->elements) {
    const auto& t = mesh.triangles[e];
    const P1Element el = P1Element::of(mesh, e);
    for (Side side : kSides) {
      if (!d.geometry[e].has_side(side)) continue;
      const double beta = problem.coeff.beta(side);
      double integral[3] = {};
      double mass[3][3] = {};
      for (const QuadPoint& qp : d.geometry[e].side_quadrature(side)) {
        const auto phi = el.phis(qp.x);
        for (int a = 0; a < 3; ++a) {
          integral[a] += qp.w * phi[a];
          for (int b = 0; b < 3; ++b) mass[a][b] += qp.w * phi[a] * phi[b];
        }
      }
      for (int a = 0; a < 3; ++a) {
        for (int comp = 0; comp < 2; ++comp) {
          const long row = d.v_col(t[a], side, comp) - d.n_u;
          for (int b = 0; b < 3; ++b) {
            add_u_term(d, block, row, t[b], -beta * el.grad[b](comp) * integral[a]);
            block.entries.emplace_back(row, d.v_col(t[b], side, comp), -mass[a][b]);
          }
        }
      }
    }
  }
  return block;
}

RowBlock assemble_divergence_rows(const Problem2d& problem, const Discretization2d& d) {
  RowBlock block;
  if (!d.tube) {
    block.rhs = Vector::Zero(0);
    return block;
  }
  const TriMesh& mesh = d.mesh;
  std::vector<double> rhs;
  for (int e : d.tube->elements) {
    const auto& t = mesh.triangles[e];
    const P1Element el = P1Element::of(mesh, e);
    for (Side s : kSides) {
      if (!d.geometry[e].has_side(s)) continue;
      const double area = d.geometry[e].side_area(s);
      double source = 0.0;
      double reaction[3] = {};
      for (const QuadPoint& qp : d.geometry[e].side_quadrature(s)) {
        source += qp.w * problem.f(qp.x, s);
        if (problem.q != 0.0) {
          const auto phi = el.phis(qp.x);
          for (int k = 0; k < 3; ++k) reaction[k] += qp.w * problem.q * phi[k];
        }
      }
      const long row = block.n_rows++;
      rhs.push_back(source);
      for (int k = 0; k < 3; ++k) {
        for (int comp = 0; comp < 2; ++comp) block.entries.emplace_back(row, d.v_col(t[k], s, comp), area * el.grad[k](comp));
      }
      if (problem.q != 0.0) {
        for (int k = 0; k < 3; ++k) {
          if (d.u_index[t[k]] < 0) {
            rhs.back() -= reaction[k] * d.boundary_values(t[k]);
          } else {
            block.entries.emplace_back(row, d.u_index[t[k]], reaction[k]);
          }
        }
      }
    }
  }
  block.rhs = Eigen::Map<Vector>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  return block;
}

RowBlock assemble_jump_rows(const Problem2d& problem, const Discretization2d& d) {
  RowBlock block;
  if (!d.tube) {
    block.rhs = Vector::Zero(0);
    return block;
  }
  const TriMesh& mesh = d.mesh;
  const double bm = problem.coeff.beta_minus;
  const double bp = problem.coeff.beta_plus;
  const double bmax = std::max(bm, bp);
  std::vector<double> rhs;
  for (int e : d.tube->elements) {
    const ElementGeometry& g = d.geometry[e];
    if (!g.chord || !d.has_flux(e, Side::Minus) || !d.has_flux(e, Side::Plus)) continue;
    const auto& t = mesh.triangles[e];
    const P1Element el = P1Element::of(mesh, e);
    for (const LinePoint& lp : g.interface_points) {
      const Vec2 n = lp.normal;
      const Vec2 tau(-n.y(), n.x());
      const auto phi = el.phis(lp.x);
      // Normal component: v+ . n - v- . n = -[beta du/dn].
      {
        const long row = block.n_rows++;
        rhs.push_back(-problem.flux_jump(lp.x));
        for (int k = 0; k < 3; ++k) {
          for (int comp = 0; comp < 2; ++comp) {
            block.entries.emplace_back(row, d.v_col(t[k], Side::Minus, comp), -phi[k] * n(comp));
            block.entries.emplace_back(row, d.v_col(t[k], Side::Plus, comp), phi[k] * n(comp));
          }
        }
      }
      // Tangential derivative continuity, v- . tau / beta- = v+ . tau / beta+,
      // scaled by the larger coefficient so entries stay O(1).
      {
        const long row = block.n_rows++;
        rhs.push_back(0.0);
        for (int k = 0; k < 3; ++k) {
          for (int comp = 0; comp < 2; ++comp) {
            block.entries.emplace_back(row, d.v_col(t[k], Side::Minus, comp), (bp / bmax) * phi[k] * tau(comp));
            block.entries.emplace_back(row, d.v_col(t[k], Side::Plus, comp), -(bm / bmax) * phi[k] * tau(comp));
          }
        }
      }
    }
  }
  block.rhs = Eigen::Map<Vector>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  return block;
}

AugmentedSystem2d assemble_augmented(const Problem2d& problem, std::shared_ptr<const Discretization2d> disc) {
  const Discretization2d& d = *disc;
  AugmentedSystem2d sys;
  const RowBlock blocks[4] = {
      assemble_galerkin_rows(problem, d),
      assemble_flux_identity_rows(problem, d),
      assemble_divergence_rows(problem, d),
      assemble_jump_rows(problem, d),
  };
  sys.galerkin_rows = blocks[0].n_rows;
  sys.flux_rows = blocks[1].n_rows;
  sys.divergence_rows = blocks[2].n_rows;
  sys.jump_rows = blocks[3].n_rows;
  long total = 0;
  std::size_t nnz = 0;
  for (const auto& b : blocks) {
    total += b.n_rows;
    nnz += b.entries.size();
  }
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(nnz);
  sys.rhs = Vector::Zero(total);
  long offset = 0;
  for (const auto& b : blocks) {
    for (const auto& t : b.entries) entries.emplace_back(offset + t.row(), t.col(), t.value());
    sys.rhs.segment(offset, b.n_rows) = b.rhs;
    offset += b.n_rows;
  }
  sys.matrix = SparseMatrix(total, d.n_cols(), entries);
  sys.disc = std::move(disc);
  return sys;
}

AugmentedSystem2d assemble_augmented(const Problem2d& problem, const TriMesh& mesh, const TubeRegion& tube) {
  return assemble_augmented(problem, discretize(problem, mesh, &tube));
}

StandardSystem2d assemble_standard(const Problem2d& problem, const TriMesh& mesh, GeometryMode mode) {
  StandardSystem2d sys;
  sys.disc = discretize(problem, mesh, nullptr, mode);
  RowBlock g = assemble_galerkin_rows(problem, *sys.disc);
  sys.matrix = SparseMatrix(g.n_rows, sys.disc->n_u, g.entries);
  sys.rhs = std::move(g.rhs);
  return sys;
}

Solution2d::Solution2d(std::shared_ptr<const Discretization2d> disc, Vector u, Vector v, bool augmented)
    : disc_(std::move(disc)), u_(std::move(u)), v_(std::move(v)), augmented_(augmented) {
  if (u_.size() != disc_->mesh.n_nodes()) throw DimensionError("u must have one value per mesh node");
  if (v_.size() != (augmented_ ? 2L * disc_->n_v : 0L)) throw DimensionError("v length does not match the layout");
}

double Solution2d::u_at(int e, const Vec2& p) const {
  const auto& t = mesh().triangles[e];
  const P1Element el = P1Element::of(mesh(), e);
  double s = 0.0;
  for (int k = 0; k < 3; ++k) s += u_(t[k]) * el.phi(k, p);
  return s;
}

Vec2 Solution2d::grad_u(int e) const {
  const auto& t = mesh().triangles[e];
  const P1Element el = P1Element::of(mesh(), e);
  Vec2 g = Vec2::Zero();
  for (int k = 0; k < 3; ++k) g += u_(t[k]) * el.grad[k];
  return g;
}

Vec2 Solution2d::v_node(int node, Side s) const {
  const int idx = disc_->v_index[node][side_slot(s)];
  if (!augmented_ || idx < 0) throw GeometryError("node carries no flux unknowns on this side");
  return Vec2(v_(2 * idx), v_(2 * idx + 1));
}

Vec2 Solution2d::flux_at(int e, Side s, const Vec2& p) const {
  if (!augmented_ || !disc_->has_flux(e, s)) throw GeometryError("element carries no flux unknowns on this side");
  const auto& t = mesh().triangles[e];
  const P1Element el = P1Element::of(mesh(), e);
  Vec2 v = Vec2::Zero();
  for (int k = 0; k < 3; ++k) v += el.phi(k, p) * v_node(t[k], s);
  return v;
}

int Solution2d::flux_element(int e, Side s, const Vec2& p) const {
  if (!augmented_) throw GeometryError("standard solution has no flux unknowns");
  if (e >= 0 && disc_->has_flux(e, s)) return e;
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (int cand : disc_->tube->elements) {
    if (!disc_->has_flux(cand, s)) continue;
    const double dist = (mesh().centroid(cand) - p).squaredNorm();
    if (dist < best_d) {
      best_d = dist;
      best = cand;
    }
  }
  if (best < 0) throw GeometryError(std::string("no tube element carries flux unknowns on the ") + to_string(s) + " side");
  return best;
}

Solution2d solve_augmented(const AugmentedSystem2d& system, LsqMethod method) {
  const Discretization2d& d = *system.disc;
  Vector x;
  try {
    x = solve_least_squares(system.matrix, system.rhs, method);
  } catch (const RankDeficientError& err) {
    std::ostringstream msg;
    msg << err.what() << "; tube has " << (d.tube ? d.tube->size() : 0) << " elements, " << d.n_v
        << " flux nodes, epsilon " << (d.tube ? d.tube->epsilon : 0.0) << ", h " << d.mesh.h;
    throw RankDeficientError(msg.str(), err.rank(), err.n_cols());
  }
  Vector u = d.boundary_values;
  for (int k = 0; k < d.mesh.n_nodes(); ++k) {
    if (d.u_index[k] >= 0) u(k) = x(d.u_index[k]);
  }
  return Solution2d(system.disc, std::move(u), x.tail(2L * d.n_v), true);
}

Solution2d solve_augmented(const Problem2d& problem, const TriMesh& mesh, const TubeRegion& tube, LsqMethod method) {
  return solve_augmented(assemble_augmented(problem, mesh, tube), method);
}

Solution2d solve_standard_fem(const StandardSystem2d& system) {
  const Discretization2d& d = *system.disc;
  const Vector x = solve_spd(system.matrix, system.rhs);
  Vector u = d.boundary_values;
  for (int k = 0; k < d.mesh.n_nodes(); ++k) {
    if (d.u_index[k] >= 0) u(k) = x(d.u_index[k]);
  }
  return Solution2d(system.disc, std::move(u), Vector(), false);
}

Solution2d solve_standard_fem(const Problem2d& problem, const TriMesh& mesh) {
  return solve_standard_fem(assemble_standard(problem, mesh));
}

}  // namespace iflux
