#pragma once

#include <vector>

#include "iflux/augmented.hpp"
#include "iflux/problems.hpp"

namespace iflux {

struct InterfaceFluxSample {
  double theta = 0.0;
  Vec2 point;       // on the circle
  Vec2 probe;       // nudged off the circle into the requested side
  Side side = Side::Minus;
  int element = -1;  // element the flux field was taken from
  double v_dot_n = 0.0;           // flux unknowns, v = -beta grad u
  double beta_grad_u_dot_n = 0.0;  // from the P1 solution
  double exact_beta_dudn = 0.0;
};

// Samples uniformly in angle on the interface circle, for both sides. Each
// probe point sits h/100 off the circle along the normal into its side.
// Without flux unknowns v_dot_n is reported as NaN.
std::vector<InterfaceFluxSample> extract_interface_flux(const Solution2d& sol, const Problem2d& problem,
                                                        int n_samples);

}  // namespace iflux
