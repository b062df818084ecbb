#pragma once

#include <span>
#include <vector>

#include "spinorlat/types.hpp"

namespace spinorlat::tb {

// Amplitudes c_{l,s} on sites l_min .. l_min + sites() - 1, stored as
// interleaved (down, up) pairs: amps[2 (l - l_min) + s].
struct SpinorState {
  int l_min = 0;
  std::vector<cplx> amps;

  SpinorState() = default;
  SpinorState(int l_min_, std::vector<cplx> amps_);

  static SpinorState ket(int l, Spin s);

  int sites() const { return static_cast<int>(amps.size() / 2); }
  int l_max() const { return l_min + sites() - 1; }
  bool empty() const { return amps.empty(); }

  // Zero outside the stored range.
  cplx get(int l, Spin s) const;
  // Grows the range as needed.
  cplx& at(int l, Spin s);

  double norm2() const;
  void normalize();
  // Ensures [lo, hi] is inside the stored range, padding with zeros.
  void extend_to(int lo, int hi);
  // Drops boundary sites whose amplitudes are all <= tol in magnitude.
  void trim(double tol = 1e-12);
  // Amplitude vector placed on sites [lo, hi] (zero padded, truncated).
  std::vector<cplx> window(int lo, int hi) const;
};

// <a|b>
cplx inner(const SpinorState& a, const SpinorState& b);
// |<a|b>|^2
double fidelity(const SpinorState& a, const SpinorState& b);
// max |a - b| over the union of both ranges.
double max_abs_diff(const SpinorState& a, const SpinorState& b);

// Flattened sub-well index p = 2 l + s and its inverse.
inline int subwell(int l, Spin s) { return 2 * l + static_cast<int>(s); }
int subwell_site(int p);
Spin subwell_spin(int p);

}  // namespace spinorlat::tb
