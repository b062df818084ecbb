#pragma once

#include <map>

#include "spinorlat/spinor_state.hpp"

namespace spinorlat::control {

struct ReachabilityReport {
  bool reachable = true;
  // j -> sum_{l,s} conj(c_{l+j,s}) c_{l,s} for every j with overlapping support.
  std::map<int, cplx> overlaps;
  int worst_j = 0;  // 0 when no nonzero translation overlaps the support
  double worst_magnitude = 0;
};

// Throws std::invalid_argument if |norm - 1| > 1e-10 or the state is empty.
ReachabilityReport reachability_check(const tb::SpinorState& state, double tol = 1e-9);

}  // namespace spinorlat::control
