#include "iflux/flux1d.hpp"

#include <cmath>

namespace iflux::detail {

std::vector<double> breakpoints(const Grid1d& grid, double lo, double hi) {
  std::vector<double> pts{lo};
  const int first = static_cast<int>(std::floor(lo / grid.h));
  for (int i = std::max(first, 0); i <= grid.n; ++i) {
    const double x = grid.node(i);
    if (x > lo && x < hi) pts.push_back(x);
  }
  pts.push_back(hi);
  return pts;
}

}  // namespace iflux::detail
