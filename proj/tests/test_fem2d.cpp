#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <numbers>
#include <vector>

#include "iflux/augmented.hpp"
#include "iflux/error.hpp"
#include "iflux/geometry.hpp"
#include "iflux/interface_flux.hpp"
#include "iflux/mesh.hpp"
#include "iflux/norms.hpp"
#include "iflux/problems.hpp"
#include "iflux/tube.hpp"

using iflux::CellKind;
using iflux::GeometryMode;
using iflux::LsqMethod;
using iflux::Side;
using iflux::Vec2;
using iflux::Vector;

namespace {

// u = a + b x + c y on both sides with a single coefficient, so the exact
// solution lies in the P1 space and every row is satisfied exactly.
iflux::Problem2d linear_problem(double beta, double radius) {
  iflux::Problem2d p;
  p.id = "linear";
  p.coeff = iflux::PiecewiseCoefficient(beta, beta);
  p.circle = {Vec2(0.05, -0.02), radius};
  p.domain = {-1.1, 1.1};
  p.u = [](const Vec2& x, Side) { return 0.4 + 1.5 * x.x() - 0.7 * x.y(); };
  p.grad = [](const Vec2&, Side) { return Vec2(1.5, -0.7); };
  p.f = [](const Vec2&, Side) { return 0.0; };
  return p;
}

// Column vector of the augmented unknowns filled from exact fields:
// interior u values and v = -beta grad u at every flux node.
Vector exact_unknowns(const iflux::Problem2d& p, const iflux::Discretization2d& d) {
  Vector x = Vector::Zero(d.n_cols());
  for (int k = 0; k < d.mesh.n_nodes(); ++k) {
    const Vec2& xk = d.mesh.nodes[k];
    if (d.u_index[k] >= 0) x(d.u_index[k]) = p.exact(xk);
    for (Side s : {Side::Minus, Side::Plus}) {
      if (d.v_index[k][static_cast<int>(s)] < 0) continue;
      const Vec2 v = -p.coeff.beta(s) * p.grad(xk, s);
      x(d.v_col(k, s, 0)) = v.x();
      x(d.v_col(k, s, 1)) = v.y();
    }
  }
  return x;
}

Vector block_residual(const iflux::RowBlock& b, long n_cols, const Vector& x) {
  const iflux::SparseMatrix m(b.n_rows, n_cols, b.entries);
  return m.multiply(x) - b.rhs;
}

double polygon_area_inside(const iflux::TriMesh& mesh, const std::vector<iflux::ElementGeometry>& geo) {
  double a = 0.0;
  for (int e = 0; e < mesh.n_triangles(); ++e) a += geo[e].side_area(Side::Minus);
  return a;
}

}  // namespace

TEST(Mesh, CountsAndAreas) {
  const auto mesh = iflux::build_mesh({-1.1, 1.1}, 4);
  EXPECT_EQ(mesh.n_nodes(), 25);
  EXPECT_EQ(mesh.n_triangles(), 32);
  EXPECT_DOUBLE_EQ(mesh.h, 0.55);
  for (int e = 0; e < mesh.n_triangles(); ++e) EXPECT_NEAR(mesh.area(e), 0.5 * mesh.h * mesh.h, 1e-15);
  int n_boundary = 0;
  for (bool b : mesh.boundary) n_boundary += b;
  EXPECT_EQ(n_boundary, 16);
  EXPECT_THROW(iflux::build_mesh({-1.1, 1.1}, 3), iflux::ParameterError);
}

TEST(Mesh, ConformingEdges) {
  const auto mesh = iflux::build_mesh({0.0, 1.0}, 6);
  std::map<std::pair<int, int>, int> count;
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      ++count[{std::min(a, b), std::max(a, b)}];
    }
  }
  auto on_wall = [](const Vec2& x, int axis, double wall) { return std::abs(x(axis) - wall) < 1e-12; };
  for (const auto& [edge, c] : count) {
    const Vec2& p = mesh.nodes[edge.first];
    const Vec2& q = mesh.nodes[edge.second];
    bool boundary_edge = false;
    for (int axis = 0; axis < 2; ++axis)
      for (double wall : {0.0, 1.0}) boundary_edge |= on_wall(p, axis, wall) && on_wall(q, axis, wall);
    EXPECT_EQ(c, boundary_edge ? 1 : 2);
  }
}

TEST(Mesh, LocateFindsContainingTriangle) {
  const auto mesh = iflux::build_mesh({-1.0, 1.0}, 8);
  for (double x = -0.97; x < 1.0; x += 0.113) {
    for (double y = -0.99; y < 1.0; y += 0.097) {
      const Vec2 p(x, y);
      const int e = mesh.locate(p);
      ASSERT_GE(e, 0);
      const auto el = iflux::P1Element::of(mesh, e);
      for (double phi : el.phis(p)) EXPECT_GE(phi, -1e-12);
    }
  }
  EXPECT_LT(mesh.locate(Vec2(2.0, 0.0)), 0);
}

TEST(Tube, MatchesBruteForceCentroidOracle) {
  const auto mesh = iflux::build_mesh({-1.1, 1.1}, 8);
  const iflux::CircleInterface c{Vec2::Zero(), 0.5};
  const double eps = 3 * mesh.h;
  const auto tube = iflux::extract_tube(mesh, c, eps);
  ASSERT_EQ(mesh.n_triangles(), 128);
  int expected = 0;
  for (int e = 0; e < 128; ++e) {
    Vec2 centroid = Vec2::Zero();
    for (int k : mesh.triangles[e]) centroid += mesh.nodes[k] / 3.0;
    const bool in = std::abs(std::hypot(centroid.x(), centroid.y()) - 0.5) <= eps;
    EXPECT_EQ(static_cast<bool>(tube.contains[e]), in) << "element " << e;
    expected += in;
  }
  EXPECT_EQ(tube.size(), expected);
}

TEST(Tube, SaturationAndDegenerateCases) {
  const auto mesh = iflux::build_mesh({-1.1, 1.1}, 8);
  const iflux::CircleInterface c{Vec2::Zero(), 0.5};
  EXPECT_EQ(iflux::extract_tube(mesh, c, 10.0).size(), mesh.n_triangles());
  EXPECT_EQ(iflux::extract_tube(mesh, c, std::numeric_limits<double>::infinity()).size(), mesh.n_triangles());
  EXPECT_EQ(iflux::extract_tube(mesh, iflux::CircleInterface{}, 0.1).size(), mesh.n_triangles());
  EXPECT_THROW(iflux::extract_tube(mesh, c, 1e-9), iflux::EmptyTubeError);
  EXPECT_THROW(iflux::extract_tube(mesh, c, -1.0), iflux::ParameterError);
}

TEST(Tube, WidthAtLeastHCoversCutElements) {
  for (int n : {8, 16, 32}) {
    const auto mesh = iflux::build_mesh({-1.1, 1.1}, n);
    const iflux::CircleInterface c{Vec2(0.013, 0.021), 0.9};
    const auto geo = iflux::classify_elements(mesh, c);
    const auto tube = iflux::extract_tube(mesh, c, mesh.h, geo);
    for (int e = 0; e < mesh.n_triangles(); ++e) {
      if (geo[e].kind == CellKind::Cut) EXPECT_TRUE(tube.contains[e]) << "N " << n << " element " << e;
    }
  }
}

TEST(Geometry, PiecesTileEachTriangle) {
  const auto mesh = iflux::build_mesh({-1.1, 1.1}, 16);
  const iflux::CircleInterface c{Vec2::Zero(), 0.9};
  for (GeometryMode mode : {GeometryMode::Polyline, GeometryMode::Exact}) {
    const auto geo = iflux::classify_elements(mesh, c, mode);
    int cut = 0;
    for (int e = 0; e < mesh.n_triangles(); ++e) {
      const double total = geo[e].side_area(Side::Minus) + geo[e].side_area(Side::Plus);
      EXPECT_NEAR(total, mesh.area(e), 1e-14);
      if (geo[e].kind == CellKind::Cut) {
        ++cut;
        ASSERT_TRUE(geo[e].chord.has_value());
        EXPECT_NEAR(std::hypot(geo[e].chord->a.x(), geo[e].chord->a.y()), 0.9, 1e-13);
        EXPECT_NEAR(std::hypot(geo[e].chord->b.x(), geo[e].chord->b.y()), 0.9, 1e-13);
      }
    }
    EXPECT_GT(cut, 0);
  }
}

TEST(Geometry, SideQuadratureIsAdditive) {
  // With equal coefficients, the per-side integrals of a smooth function sum
  // to the whole-triangle integral.
  const auto mesh = iflux::build_mesh({-1.1, 1.1}, 8);
  const iflux::CircleInterface c{Vec2::Zero(), 0.9};
  const auto g = [](const Vec2& x) { return std::exp(x.x()) * (1.0 + x.y() * x.y()); };
  for (GeometryMode mode : {GeometryMode::Polyline, GeometryMode::Exact}) {
    const auto geo = iflux::classify_elements(mesh, c, mode);
    for (int e = 0; e < mesh.n_triangles(); ++e) {
      if (geo[e].kind != CellKind::Cut) continue;
      double split = 0.0;
      for (Side s : {Side::Minus, Side::Plus})
        for (const auto& q : geo[e].side_quadrature(s)) split += q.w * g(q.x);
      iflux::SubTriangle whole;
      for (int k = 0; k < 3; ++k) whole.v[k] = mesh.nodes[mesh.triangles[e][k]];
      double full = 0.0;
      for (const auto& q : iflux::piece_quadrature(whole)) full += q.w * g(q.x);
      EXPECT_NEAR(split, full, 1e-6 * mesh.area(e));
    }
  }
}

TEST(Geometry, InteriorAreaConverges) {
  const double exact = std::numbers::pi * 0.81;
  double prev_curved = 1.0;
  for (int n : {8, 16, 32, 64}) {
    const auto mesh = iflux::build_mesh({-1.1, 1.1}, n);
    const iflux::CircleInterface c{Vec2::Zero(), 0.9};
    const double poly = polygon_area_inside(mesh, iflux::classify_elements(mesh, c, GeometryMode::Polyline));
    const double err = exact - poly;
    EXPECT_GT(err, 0.0);  // inscribed polygon
    // each chord drops a circular segment of area about L^3 / (12 R), so the sum is O(h^2)
    EXPECT_GT(err * n * n, 0.5);
    EXPECT_LT(err * n * n, 2.0);
    // the lens rule is not exact in angle but converges quickly
    const double curved = polygon_area_inside(mesh, iflux::classify_elements(mesh, c, GeometryMode::Exact));
    const double curved_err = std::abs(curved - exact);
    EXPECT_LT(curved_err, 1e-7);
    if (n > 8) EXPECT_LT(curved_err, prev_curved / 10.0);
    prev_curved = curved_err;
  }
}

TEST(GalerkinRows, SymmetricWithZeroRowSumsInTheInterior) {
  const auto p = linear_problem(1.0, 0.0);
  const auto sys = iflux::assemble_standard(p, iflux::build_mesh(p.domain, 8));
  const Eigen::MatrixXd k = sys.matrix.to_dense();
  EXPECT_LE((k - k.transpose()).cwiseAbs().maxCoeff(), 1e-14);
  const auto& d = *sys.disc;
  for (int node = 0; node < d.mesh.n_nodes(); ++node) {
    if (d.u_index[node] < 0) continue;
    const Vec2& x = d.mesh.nodes[node];
    if (std::abs(x.x()) > 1.1 - 1.5 * d.mesh.h || std::abs(x.y()) > 1.1 - 1.5 * d.mesh.h) continue;
    EXPECT_NEAR(k.row(d.u_index[node]).sum(), 0.0, 1e-13);
  }
}

TEST(LinearExactness, StandardAndAugmented) {
  const auto p = linear_problem(2.0, 0.6);
  const auto mesh = iflux::build_mesh(p.domain, 8);
  const auto std_sol = iflux::solve_standard_fem(p, mesh);
  for (int k = 0; k < mesh.n_nodes(); ++k) EXPECT_NEAR(std_sol.u()(k), p.exact(mesh.nodes[k]), 1e-12);
  const auto tube = iflux::extract_tube(mesh, p.circle, 3 * mesh.h);
  for (LsqMethod m : {LsqMethod::Svd, LsqMethod::SparseQr, LsqMethod::NormalCg}) {
    const auto sol = iflux::solve_augmented(p, mesh, tube, m);
    for (int k = 0; k < mesh.n_nodes(); ++k) EXPECT_NEAR(sol.u()(k), p.exact(mesh.nodes[k]), 1e-10);
    for (int k : tube.nodes) {
      for (Side s : {Side::Minus, Side::Plus}) {
        if (sol.disc().v_index[k][static_cast<int>(s)] < 0) continue;
        EXPECT_NEAR(sol.v_node(k, s).x(), -3.0, 1e-9);
        EXPECT_NEAR(sol.v_node(k, s).y(), 1.4, 1e-9);
      }
    }
  }
}

TEST(FluxIdentityRows, PointwiseIdentityAndMassBlock) {
  iflux::Problem2d p = linear_problem(2.0, 0.6);
  p.u = [](const Vec2& x, Side) { return x.x(); };
  p.grad = [](const Vec2&, Side) { return Vec2(1.0, 0.0); };
  const auto mesh = iflux::build_mesh(p.domain, 8);
  const auto tube = iflux::extract_tube(mesh, p.circle, 3 * mesh.h);
  const auto d = iflux::discretize(p, mesh, &tube);
  const auto block = iflux::assemble_flux_identity_rows(p, *d);
  const Vector x = exact_unknowns(p, *d);
  EXPECT_NEAR(x(d->v_col(tube.nodes.front(), Side::Plus, 0)), -2.0, 0.0);
  EXPECT_LE(block_residual(block, d->n_cols(), x).cwiseAbs().maxCoeff(), 1e-12);

  const Eigen::MatrixXd full = iflux::SparseMatrix(block.n_rows, d->n_cols(), block.entries).to_dense();
  const Eigen::MatrixXd mass = -full.rightCols(2L * d->n_v);
  EXPECT_LE((mass - mass.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mass);
  EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
}

TEST(DivergenceRows, ConstantAndLinearFields) {
  const auto p = linear_problem(1.0, 0.6);
  const auto mesh = iflux::build_mesh(p.domain, 8);
  const auto tube = iflux::extract_tube(mesh, p.circle, 3 * mesh.h);
  const auto d = iflux::discretize(p, mesh, &tube);
  const auto block = iflux::assemble_divergence_rows(p, *d);
  const iflux::SparseMatrix m(block.n_rows, d->n_cols(), block.entries);
  Vector constant = Vector::Zero(d->n_cols()), radial = Vector::Zero(d->n_cols());
  for (int k = 0; k < mesh.n_nodes(); ++k) {
    for (Side s : {Side::Minus, Side::Plus}) {
      if (d->v_index[k][static_cast<int>(s)] < 0) continue;
      constant(d->v_col(k, s, 0)) = 0.3;
      constant(d->v_col(k, s, 1)) = -1.7;
      radial(d->v_col(k, s, 0)) = mesh.nodes[k].x();
      radial(d->v_col(k, s, 1)) = mesh.nodes[k].y();
    }
  }
  const Vector zero = m.multiply(constant);
  EXPECT_LE(zero.cwiseAbs().maxCoeff(), 1e-14);
  const Vector two_area = m.multiply(radial);
  long row = 0;
  for (int e : tube.elements) {
    for (Side s : {Side::Minus, Side::Plus}) {
      if (!d->geometry[e].has_side(s)) continue;
      EXPECT_NEAR(two_area(row), 2.0 * d->geometry[e].side_area(s), 1e-14);
      ++row;
    }
  }
  EXPECT_EQ(row, block.n_rows);
}

TEST(AugmentedSystem, ExactInterpolantResidualDecays) {
  const auto p = iflux::model_problem_2d_trig(100.0, 1.0, 0.0, 0.9);
  double prev_rel = std::numeric_limits<double>::infinity();
  double prev_worst = std::numeric_limits<double>::infinity();
  for (int n : {8, 16, 32, 64}) {
    const auto mesh = iflux::build_mesh(p.domain, n);
    const auto tube = iflux::extract_tube(mesh, p.circle, 3 * mesh.h);
    const auto sys = iflux::assemble_augmented(p, mesh, tube);
    const Vector x = exact_unknowns(p, *sys.disc);
    const double rel = (sys.matrix.multiply(x) - sys.rhs).norm() / (sys.matrix.frobenius_norm() * x.norm());
    EXPECT_LT(rel, prev_rel) << "N " << n;
    prev_rel = rel;

    // away from the interface the divergence rows see no geometry error, so
    // their residual per unit area is the interpolation error of div v
    const auto div = iflux::assemble_divergence_rows(p, *sys.disc);
    const Vector r = block_residual(div, sys.disc->n_cols(), x);
    long row = 0;
    double worst = 0.0;
    for (int e : tube.elements) {
      for (Side s : {Side::Minus, Side::Plus}) {
        if (!sys.disc->geometry[e].has_side(s)) continue;
        if (sys.disc->geometry[e].kind != CellKind::Cut) worst = std::max(worst, std::abs(r(row)) / mesh.area(e));
        ++row;
      }
    }
    EXPECT_LT(worst, 0.7 * prev_worst) << "N " << n;
    prev_worst = worst;
  }
}

TEST(AugmentedSystem, BaselineEquivalenceBitForBit) {
  for (const auto& p : {iflux::model_problem_2d_trig(100.0, 1.0, 1.0, 0.9), iflux::model_problem_2d_r2r4(1.0, 1000.0)}) {
    const auto mesh = iflux::build_mesh(p.domain, 16);
    const auto tube = iflux::extract_tube(mesh, p.circle, 3 * mesh.h);
    const auto aug = iflux::assemble_augmented(p, mesh, tube);
    const auto stdsys = iflux::assemble_standard(p, mesh);
    const long nu = aug.disc->n_u;
    ASSERT_EQ(aug.galerkin_rows, nu);
    ASSERT_EQ(stdsys.matrix.n_rows(), nu);
    EXPECT_GE(aug.matrix.n_rows(), aug.matrix.n_cols());
    const iflux::EigenSparse top = aug.matrix.eigen().topRows(nu);
    const iflux::EigenSparse u_block = top.leftCols(nu);
    EXPECT_EQ(top.nonZeros(), u_block.nonZeros()) << "Galerkin rows touch flux columns";
    const iflux::EigenSparse& ref = stdsys.matrix.eigen();
    ASSERT_EQ(u_block.nonZeros(), ref.nonZeros());
    for (long r = 0; r < nu; ++r) {
      iflux::EigenSparse::InnerIterator a(u_block, r), b(ref, r);
      for (; a && b; ++a, ++b) {
        EXPECT_EQ(a.col(), b.col());
        EXPECT_EQ(0, std::memcmp(&a.valueRef(), &b.valueRef(), sizeof(double)));
      }
    }
    EXPECT_EQ(0, std::memcmp(aug.rhs.data(), stdsys.rhs.data(), sizeof(double) * nu));
  }
}

TEST(AugmentedSystem, EmptyTubeReducesToStandardFem) {
  const auto p = iflux::model_problem_2d_trig(100.0, 1.0, 0.0, 0.9);
  const auto mesh = iflux::build_mesh(p.domain, 16);
  iflux::TubeRegion empty;
  empty.epsilon = 0.0;
  empty.contains.assign(mesh.triangles.size(), false);
  const auto aug = iflux::assemble_augmented(p, mesh, empty);
  const auto stdsys = iflux::assemble_standard(p, mesh);
  EXPECT_EQ(aug.matrix.n_rows(), stdsys.matrix.n_rows());
  EXPECT_EQ(aug.matrix.n_cols(), stdsys.matrix.n_cols());
  EXPECT_EQ((aug.matrix.to_dense() - stdsys.matrix.to_dense()).cwiseAbs().maxCoeff(), 0.0);
  const auto a = iflux::solve_augmented(aug, LsqMethod::SparseQr);
  const auto s = iflux::solve_standard_fem(stdsys);
  EXPECT_LE((a.u() - s.u()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(AugmentedSystem, LeastSquaresOptimality) {
  const auto p = iflux::model_problem_2d_trig(100.0, 1.0, 0.0, 0.9);
  const auto mesh = iflux::build_mesh(p.domain, 16);
  const auto tube = iflux::extract_tube(mesh, p.circle, 3 * mesh.h);
  const auto sys = iflux::assemble_augmented(p, mesh, tube);
  const Eigen::MatrixXd a = sys.matrix.to_dense();
  for (LsqMethod m : {LsqMethod::Svd, LsqMethod::SparseQr, LsqMethod::NormalCg}) {
    const Vector x = iflux::solve_least_squares(sys.matrix, sys.rhs, m);
    EXPECT_LE((a.transpose() * (a * x - sys.rhs)).norm(), 1e-8 * (a.transpose() * sys.rhs).norm())
        << iflux::to_string(m);
  }
}

TEST(AugmentedSystem, WholeTubeAgreesWithThinTubeAwayFromInterface) {
  const auto p = iflux::model_problem_2d_trig(100.0, 1.0, 0.0, 0.9);
  const auto mesh = iflux::build_mesh(p.domain, 16);
  const auto thin = iflux::solve_augmented(p, mesh, iflux::extract_tube(mesh, p.circle, 3 * mesh.h),
                                           LsqMethod::SparseQr);
  const auto whole = iflux::solve_augmented(
      p, mesh, iflux::extract_tube(mesh, p.circle, std::numeric_limits<double>::infinity()), LsqMethod::SparseQr);
  double diff = 0.0, err = 0.0;
  for (int k = 0; k < mesh.n_nodes(); ++k) {
    if (std::abs(p.circle.level_set(mesh.nodes[k])) < 0.3) continue;
    diff = std::max(diff, std::abs(thin.u()(k) - whole.u()(k)));
    err = std::max({err, std::abs(thin.u()(k) - p.exact(mesh.nodes[k])),
                    std::abs(whole.u()(k) - p.exact(mesh.nodes[k]))});
  }
  EXPECT_GT(err, 0.0);
  EXPECT_LE(diff, 2.0 * err);
}

TEST(AugmentedSystem, TrigProblemL2MagnitudeAtThirtyTwo) {
  const auto p = iflux::model_problem_2d_trig(100.0, 1.0, 0.0, 0.9);
  const auto mesh = iflux::build_mesh(p.domain, 32);
  const auto sol = iflux::solve_augmented(p, mesh, iflux::extract_tube(mesh, p.circle, 3 * mesh.h),
                                          LsqMethod::SparseQr);
  const auto e = iflux::error_norms_2d(sol, p);
  EXPECT_GT(e.l2, 1e-4);
  EXPECT_LT(e.l2, 1e-2);
}

TEST(InterfaceFlux, InterpolatedExactFieldIsSecondOrder) {
  const auto p = iflux::model_problem_2d_trig(3.0, 1.0, 0.0, 0.9);
  std::vector<double> errs;
  for (int n : {16, 32, 64}) {
    const auto mesh = iflux::build_mesh(p.domain, n);
    const auto tube = iflux::extract_tube(mesh, p.circle, 3 * mesh.h);
    const auto d = iflux::discretize(p, mesh, &tube);
    const Vector x = exact_unknowns(p, *d);
    Vector u = d->boundary_values;
    for (int k = 0; k < mesh.n_nodes(); ++k)
      if (d->u_index[k] >= 0) u(k) = x(d->u_index[k]);
    const iflux::Solution2d sol(d, u, x.tail(2L * d->n_v), true);
    double worst = 0.0;
    for (const auto& s : iflux::extract_interface_flux(sol, p, 64)) {
      worst = std::max(worst, std::abs(-s.v_dot_n - s.exact_beta_dudn));
    }
    errs.push_back(worst);
  }
  EXPECT_GT(std::log2(errs[0] / errs[1]), 1.7);
  EXPECT_GT(std::log2(errs[1] / errs[2]), 1.7);
}

TEST(InterfaceFlux, ExactFluxJumpOfR2R4) {
  const auto p = iflux::model_problem_2d_r2r4(7.0, 3.0);
  const auto mesh = iflux::build_mesh(p.domain, 8);
  const auto sol = iflux::solve_standard_fem(p, mesh);
  const auto samples = iflux::extract_interface_flux(sol, p, 16);
  ASSERT_EQ(samples.size(), 32u);
  for (std::size_t k = 0; k < samples.size(); k += 2) {
    EXPECT_EQ(samples[k].side, Side::Minus);
    EXPECT_TRUE(std::isnan(samples[k].v_dot_n));
    EXPECT_NEAR(samples[k + 1].exact_beta_dudn - samples[k].exact_beta_dudn, 4.0 * 3.0 - 2.0 * 7.0, 1e-12);
  }
}

TEST(InterfaceFlux, SideMismatchShrinksForHomogeneousJump) {
  const auto p = iflux::model_problem_2d_trig(100.0, 1.0, 0.0, 0.9);
  std::vector<double> mismatch;
  for (int n : {16, 32, 64}) {
    const auto mesh = iflux::build_mesh(p.domain, n);
    const auto sol = iflux::solve_augmented(p, mesh, iflux::extract_tube(mesh, p.circle, 3 * mesh.h),
                                            LsqMethod::SparseQr);
    double m = 0.0;
    const auto s = iflux::extract_interface_flux(sol, p, 64);
    for (std::size_t k = 0; k < s.size(); k += 2) m = std::max(m, std::abs(s[k].v_dot_n - s[k + 1].v_dot_n));
    mismatch.push_back(m);
  }
  EXPECT_LT(mismatch[1], mismatch[0]);
  EXPECT_LT(mismatch[2], mismatch[1]);
}

TEST(AugmentedSystem, RankDeficiencyCarriesTubeDiagnostics) {
  // Column 1 is overwritten with a copy of column 0.
  const auto p = linear_problem(1.0, 0.6);
  const auto mesh = iflux::build_mesh(p.domain, 4);
  const auto tube = iflux::extract_tube(mesh, p.circle, 3 * mesh.h);
  auto sys = iflux::assemble_augmented(p, mesh, tube);
  std::vector<Eigen::Triplet<double>> t;
  const auto& m = sys.matrix.eigen();
  for (long r = 0; r < m.outerSize(); ++r) {
    for (iflux::EigenSparse::InnerIterator it(m, r); it; ++it) {
      if (it.col() == 1) continue;
      t.emplace_back(r, it.col(), it.value());
      if (it.col() == 0) t.emplace_back(r, 1, it.value());
    }
  }
  sys.matrix = iflux::SparseMatrix(m.rows(), m.cols(), t);
  try {
    iflux::solve_augmented(sys, LsqMethod::SparseQr);
    ADD_FAILURE() << "expected rank deficiency";
  } catch (const iflux::RankDeficientError& e) {
    EXPECT_NE(std::string(e.what()).find("tube has"), std::string::npos);
    EXPECT_GE(e.deficiency(), 1);
  }
}
