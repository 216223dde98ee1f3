#include "iflux/interface_flux.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "iflux/error.hpp"

namespace iflux {

std::vector<InterfaceFluxSample> extract_interface_flux(const Solution2d& sol, const Problem2d& problem,
                                                        int n_samples) {
  if (n_samples < 1) throw ParameterError("need at least one interface sample");
  const CircleInterface& c = problem.circle;
  if (c.empty()) throw GeometryError("problem has no interface to sample");
  const TriMesh& mesh = sol.mesh();
  const double delta = mesh.h / 100.0;
  std::vector<InterfaceFluxSample> out;
  out.reserve(2 * static_cast<std::size_t>(n_samples));
  for (int k = 0; k < n_samples; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n_samples;
    const Vec2 n(std::cos(theta), std::sin(theta));
    const Vec2 p = c.center + c.radius * n;
    for (Side s : {Side::Minus, Side::Plus}) {
      InterfaceFluxSample smp;
      smp.theta = theta;
      smp.point = p;
      smp.side = s;
      smp.probe = p + (s == Side::Minus ? -delta : delta) * n;
      const int e = mesh.locate(smp.probe);
      if (e < 0) throw GeometryError("interface sample falls outside the mesh");
      const double beta = problem.coeff.beta(s);
      smp.exact_beta_dudn = beta * problem.grad(p, s).dot(n);
      smp.beta_grad_u_dot_n = beta * sol.grad_u(e).dot(n);
      if (sol.augmented()) {
        // the probe only picks the triangle; the linear field is read on the circle itself
        smp.element = sol.flux_element(e, s, smp.probe);
        smp.v_dot_n = sol.flux_at(smp.element, s, p).dot(n);
      } else {
        smp.element = e;
        smp.v_dot_n = std::numeric_limits<double>::quiet_NaN();
      }
      out.push_back(smp);
    }
  }
  return out;
}

}  // namespace iflux
