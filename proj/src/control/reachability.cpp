#include "spinorlat/reachability.hpp"

#include <cmath>

namespace spinorlat::control {

ReachabilityReport reachability_check(const tb::SpinorState& state, double tol) {
  if (state.empty()) throw std::invalid_argument("reachability_check: empty state");
  if (std::abs(state.norm2() - 1.0) > 1e-10) throw std::invalid_argument("reachability_check: state is not normalized");
  ReachabilityReport r;
  const int span = state.sites() - 1;
  for (int j = -span; j <= span; ++j) {
    // <psi| T_j |psi> with T_j |l> = |l + j>
    cplx s = 0;
    for (int l = state.l_min; l <= state.l_max(); ++l) {
      s += std::conj(state.get(l + j, Spin::down)) * state.get(l, Spin::down);
      s += std::conj(state.get(l + j, Spin::up)) * state.get(l, Spin::up);
    }
    r.overlaps[j] = s;
    if (j != 0 && std::abs(s) > r.worst_magnitude) {
      r.worst_magnitude = std::abs(s);
      r.worst_j = j;
    }
  }
  // Report the positive translation of a conjugate pair.
  r.worst_j = std::abs(r.worst_j);
  r.reachable = r.worst_magnitude < tol;
  return r;
}

}  // namespace spinorlat::control
