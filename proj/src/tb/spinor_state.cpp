#include "spinorlat/spinor_state.hpp"

#include <algorithm>
#include <cmath>

namespace spinorlat::tb {

SpinorState::SpinorState(int l_min_, std::vector<cplx> amps_) : l_min(l_min_), amps(std::move(amps_)) {
  if (amps.size() % 2 != 0) throw std::invalid_argument("SpinorState: amplitude count must be even");
}

SpinorState SpinorState::ket(int l, Spin s) {
  SpinorState out(l, {0.0, 0.0});
  out.amps[static_cast<std::size_t>(s)] = 1.0;
  return out;
}

cplx SpinorState::get(int l, Spin s) const {
  if (l < l_min || l > l_max()) return 0;
  return amps[static_cast<std::size_t>(2 * (l - l_min) + static_cast<int>(s))];
}

cplx& SpinorState::at(int l, Spin s) {
  extend_to(l, l);
  return amps[static_cast<std::size_t>(2 * (l - l_min) + static_cast<int>(s))];
}

double SpinorState::norm2() const {
  double n = 0;
  for (const cplx& c : amps) n += std::norm(c);
  return n;
}

void SpinorState::normalize() {
  const double n = std::sqrt(norm2());
  if (!(n > 0)) throw std::invalid_argument("cannot normalize a zero state");
  for (cplx& c : amps) c /= n;
}

void SpinorState::extend_to(int lo, int hi) {
  if (empty()) {
    l_min = lo;
    amps.assign(static_cast<std::size_t>(2 * (hi - lo + 1)), cplx{0, 0});
    return;
  }
  if (lo < l_min) {
    amps.insert(amps.begin(), static_cast<std::size_t>(2 * (l_min - lo)), cplx{0, 0});
    l_min = lo;
  }
  if (hi > l_max()) amps.resize(static_cast<std::size_t>(2 * (hi - l_min + 1)), cplx{0, 0});
}

void SpinorState::trim(double tol) {
  auto site_small = [&](int i) {
    return std::abs(amps[static_cast<std::size_t>(2 * i)]) <= tol &&
           std::abs(amps[static_cast<std::size_t>(2 * i + 1)]) <= tol;
  };
  int lo = 0, hi = sites() - 1;
  while (lo <= hi && site_small(lo)) ++lo;
  while (hi >= lo && site_small(hi)) --hi;
  if (lo > hi) {
    amps.clear();
    l_min = 0;
    return;
  }
  amps = std::vector<cplx>(amps.begin() + 2 * lo, amps.begin() + 2 * (hi + 1));
  l_min += lo;
}

std::vector<cplx> SpinorState::window(int lo, int hi) const {
  std::vector<cplx> out(static_cast<std::size_t>(2 * (hi - lo + 1)), cplx{0, 0});
  for (int l = std::max(lo, l_min); l <= std::min(hi, l_max()); ++l) {
    out[static_cast<std::size_t>(2 * (l - lo))] = get(l, Spin::down);
    out[static_cast<std::size_t>(2 * (l - lo) + 1)] = get(l, Spin::up);
  }
  return out;
}

cplx inner(const SpinorState& a, const SpinorState& b) {
  cplx s = 0;
  const int lo = std::max(a.l_min, b.l_min), hi = std::min(a.l_max(), b.l_max());
  for (int l = lo; l <= hi; ++l) {
    s += std::conj(a.get(l, Spin::down)) * b.get(l, Spin::down);
    s += std::conj(a.get(l, Spin::up)) * b.get(l, Spin::up);
  }
  return s;
}

double fidelity(const SpinorState& a, const SpinorState& b) { return std::norm(inner(a, b)); }

double max_abs_diff(const SpinorState& a, const SpinorState& b) {
  if (a.empty() && b.empty()) return 0;
  const int lo = a.empty() ? b.l_min : (b.empty() ? a.l_min : std::min(a.l_min, b.l_min));
  const int hi = a.empty() ? b.l_max() : (b.empty() ? a.l_max() : std::max(a.l_max(), b.l_max()));
  double m = 0;
  for (int l = lo; l <= hi; ++l)
    for (Spin s : {Spin::down, Spin::up}) m = std::max(m, std::abs(a.get(l, s) - b.get(l, s)));
  return m;
}

int subwell_site(int p) { return p >= 0 ? p / 2 : -((-p + 1) / 2); }
Spin subwell_spin(int p) { return (p - 2 * subwell_site(p)) == 1 ? Spin::up : Spin::down; }

}  // namespace spinorlat::tb
