#include "iflux/norms.hpp"

#include <algorithm>
#include <cmath>

#include "iflux/error.hpp"
#include "iflux/quadrature.hpp"

namespace iflux {

ErrorReport1d error_norms_1d(const Solution1d& sol, const Problem1d& problem) {
  const Grid1d& grid = sol.grid();
  if (grid.alpha != problem.alpha) throw ParameterError("solution and problem disagree on the interface point");
  ErrorReport1d r;
  for (int i = 0; i <= grid.n; ++i) {
    const double x = grid.node(i);
    if (x == grid.alpha) continue;
    r.linf_nodal = std::max(r.linf_nodal, std::abs(sol.nodal()(i) - problem.exact(x)));
  }
  if (grid.alpha_on_node()) {
    r.linf_nodal = std::max(r.linf_nodal, std::abs(sol.nodal()(grid.j) - problem.u(grid.alpha, Side::Plus)));
  }
  // (u - u_h)^2 is a degree-8 polynomial on every piece for the quartic
  // problems; five Gauss points integrate it exactly.
  const QuadratureRule gq = gauss_interval(5);
  constexpr int kSamples = 32;
  double l2 = 0.0;
  double h1 = 0.0;
  for (const Piece1d& p : sol.pieces()) {
    const double len = p.length();
    for (std::size_t g = 0; g < gq.size(); ++g) {
      const double x = p.a + gq.x(g) * len;
      const double w = gq.weights[g] * len;
      const double e = sol.value(x, p.side) - problem.u(x, p.side);
      const double de = sol.derivative(x, p.side) - problem.du(x, p.side);
      l2 += w * e * e;
      h1 += w * de * de;
    }
    for (int s = 0; s <= kSamples; ++s) {
      const double x = s == kSamples ? p.b : p.a + (len * s) / kSamples;
      r.linf = std::max(r.linf, std::abs(sol.value(x, p.side) - problem.u(x, p.side)));
    }
  }
  r.l2 = std::sqrt(l2);
  r.h1_semi = std::sqrt(h1);

  const double a = problem.alpha;
  const double bm = problem.coeff.beta_minus;
  const double bp = problem.coeff.beta_plus;
  const double exact_minus = problem.du(a, Side::Minus);
  const double exact_plus = problem.du(a, Side::Plus);
  const FluxReport1d f = flux_report(sol, problem);
  r.gamma_minus = std::abs(f.gamma_minus - bm * exact_minus);
  r.gamma_plus = std::abs(f.gamma_plus + bp * exact_plus);
  r.gamma_0 = std::abs(f.gamma_0 + bm * problem.du(0.0, Side::Minus));
  r.gamma_1 = std::abs(f.gamma_1 - bp * problem.du(1.0, Side::Plus));
  r.ux_minus_recovered = std::abs(f.ux_minus - exact_minus);
  r.ux_plus_recovered = std::abs(f.ux_plus - exact_plus);
  r.ux_minus_raw = std::abs(sol.derivative(a, Side::Minus) - exact_minus);
  r.ux_plus_raw = std::abs(sol.derivative(a, Side::Plus) - exact_plus);
  return r;
}

ErrorReport2d error_norms_2d(const Solution2d& sol, const Problem2d& problem) {
  const Discretization2d& d = sol.disc();
  const TriMesh& mesh = d.mesh;
  ErrorReport2d r;
  r.has_interface = !problem.circle.empty();
  r.augmented = sol.augmented();
  for (int k = 0; k < mesh.n_nodes(); ++k) {
    r.linf_nodal = std::max(r.linf_nodal, std::abs(sol.u()(k) - problem.exact(mesh.nodes[k])));
  }
  double l2 = 0.0;
  double h1 = 0.0;
  double vt = 0.0;
  double fm = 0.0;
  double fp = 0.0;
  double fstd = 0.0;
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const Vec2 gu = sol.grad_u(e);
    const bool in_tube = sol.augmented() && d.tube && d.tube->contains[e];
    for (Side side : {Side::Minus, Side::Plus}) {
      if (!d.geometry[e].has_side(side)) continue;
      const double beta = problem.coeff.beta(side);
      for (const QuadPoint& qp : d.geometry[e].side_quadrature(side)) {
        const double eu = sol.u_at(e, qp.x) - problem.u(qp.x, side);
        const Vec2 g = problem.grad(qp.x, side);
        l2 += qp.w * eu * eu;
        h1 += qp.w * (gu - g).squaredNorm();
        if (in_tube) vt += qp.w * (sol.flux_at(e, side, qp.x) + beta * g).squaredNorm();
      }
    }
    for (const LinePoint& lp : d.geometry[e].interface_points) {
      for (Side s : {Side::Minus, Side::Plus}) {
        const double beta = problem.coeff.beta(s);
        const double exact = -beta * problem.grad(lp.x, s).dot(lp.normal);
        const double es = -beta * gu.dot(lp.normal) - exact;
        fstd += lp.w * es * es;
        if (sol.augmented()) {
          const int fe = sol.flux_element(e, s, lp.x);
          const double ev = sol.flux_at(fe, s, lp.x).dot(lp.normal) - exact;
          (s == Side::Minus ? fm : fp) += lp.w * ev * ev;
        }
      }
    }
  }
  r.l2 = std::sqrt(l2);
  r.h1_semi = std::sqrt(h1);
  r.tube_v_l2 = std::sqrt(vt);
  r.flux_l2_minus = std::sqrt(fm);
  r.flux_l2_plus = std::sqrt(fp);
  r.flux_l2 = std::sqrt(fm + fp);
  r.std_flux_l2 = std::sqrt(fstd);
  return r;
}

}  // namespace iflux
