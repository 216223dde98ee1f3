#pragma once

#include "iflux/augmented.hpp"
#include "iflux/flux1d.hpp"
#include "iflux/ifem1d.hpp"
#include "iflux/problems.hpp"

namespace iflux {

struct ErrorReport1d {
  double linf_nodal = 0.0;
  double linf = 0.0;  // sampled densely on every piece, both limits at alpha
  double l2 = 0.0;
  double h1_semi = 0.0;
  // Flux functionals against their exact targets.
  double gamma_minus = 0.0;
  double gamma_plus = 0.0;
  double gamma_0 = 0.0;
  double gamma_1 = 0.0;
  // One-sided derivative at alpha: recovered from the functionals, and read
  // off the discrete solution directly.
  double ux_minus_recovered = 0.0;
  double ux_plus_recovered = 0.0;
  double ux_minus_raw = 0.0;
  double ux_plus_raw = 0.0;
};

ErrorReport1d error_norms_1d(const Solution1d& sol, const Problem1d& problem);

struct ErrorReport2d {
  bool has_interface = false;
  bool augmented = false;
  double linf_nodal = 0.0;
  double l2 = 0.0;
  double h1_semi = 0.0;
  // L2 over the interface polyline of (flux . n) against the exact
  // beta du/dn, using the flux unknowns. Zero when not applicable.
  double flux_l2 = 0.0;
  double flux_l2_minus = 0.0;
  double flux_l2_plus = 0.0;
  // The same measure built from beta grad u_h instead of the flux unknowns.
  double std_flux_l2 = 0.0;
  // L2 over the tube of v + beta grad u, per side.
  double tube_v_l2 = 0.0;
};

ErrorReport2d error_norms_2d(const Solution2d& sol, const Problem2d& problem);

}  // namespace iflux
