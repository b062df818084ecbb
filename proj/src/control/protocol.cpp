#include "spinorlat/protocol.hpp"

#include <cmath>
#include <string>

#include "spinorlat/reachability.hpp"
#include "spinorlat/simd.hpp"

namespace spinorlat::control {

namespace {

// Amplitudes at or below this are treated as empty sub-wells.
constexpr double kEmpty = 1e-12;

simd::Mat2c to_mat2(const Eigen::Matrix2cd& m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }

struct Occupied {
  int p_min, p_max;
};

Occupied occupied(const tb::SpinorState& s) {
  int lo = 0, hi = -1;
  bool any = false;
  for (int i = 0; i < static_cast<int>(s.amps.size()); ++i) {
    if (std::abs(s.amps[static_cast<std::size_t>(i)]) > kEmpty) {
      if (!any) lo = i;
      hi = i;
      any = true;
    }
  }
  if (!any) throw std::invalid_argument("localization: state has no population");
  return {2 * s.l_min + lo, 2 * s.l_min + hi};
}

cplx& amp(tb::SpinorState& s, int p) { return s.at(tb::subwell_site(p), tb::subwell_spin(p)); }

// Zeroes sub-wells at or below kEmpty so edge detection is exact.
void clean(tb::SpinorState& s) {
  for (cplx& c : s.amps)
    if (std::abs(c) <= kEmpty) c = 0;
  s.trim(0.0);
}

Eigen::Matrix2cd edge_rotation(cplx c_up, cplx c_dn, EdgeRole role) {
  const double n = std::sqrt(std::norm(c_up) + std::norm(c_dn));
  Eigen::Matrix2cd s;
  if (role == EdgeRole::to_up) {
    s << std::conj(c_up), std::conj(c_dn), c_dn, -c_up;
  } else {
    s << c_dn, -c_up, std::conj(c_up), std::conj(c_dn);
  }
  return s / n;
}

}  // namespace

const char* to_string(PairMode m) { return m == PairMode::right ? "R" : "L"; }

void apply_rotation(tb::SpinorState& state, const SU2Rotation& rot, double trim_tol) {
  if (state.empty()) return;
  const Eigen::Matrix2cd& s = rot.matrix;
  if (rot.mode == PairMode::right) {
    // Storage order inside a site is (down, up); conjugate by the swap.
    Eigen::Matrix2cd m;
    m << s(1, 1), s(1, 0), s(0, 1), s(0, 0);
    simd::rotate_pairs(state.amps, to_mat2(m));
  } else {
    // L bonds (|l-1,up>, |l,down>) sit at odd offsets of the flattened array.
    state.extend_to(state.l_min - 1, state.l_max() + 1);
    std::span<cplx> inner(state.amps.data() + 1, state.amps.size() - 2);
    simd::rotate_pairs(inner, to_mat2(s));
  }
  state.trim(trim_tol);
}

tb::SpinorState apply_rotations(tb::SpinorState state, const std::vector<SU2Rotation>& rots) {
  for (const auto& r : rots) apply_rotation(state, r);
  return state;
}

Localization localize(const tb::SpinorState& input, Spin final_spin, double tol) {
  const ReachabilityReport rep = reachability_check(input, tol);
  if (!rep.reachable) {
    throw UnreachableError(rep.worst_j, rep.worst_magnitude,
                           "state is not reachable: |<psi|T_" + std::to_string(rep.worst_j) +
                               "|psi>| = " + std::to_string(rep.worst_magnitude));
  }
  tb::SpinorState s = input;
  clean(s);
  Localization out;
  PairMode mode = PairMode::right;
  const int max_steps = 4 * s.sites() + 8;
  for (int step = 0; step < max_steps; ++step) {
    const Occupied occ = occupied(s);
    if (occ.p_min == occ.p_max) {
      const Spin spin = tb::subwell_spin(occ.p_min);
      if (spin != final_spin) {
        Eigen::Matrix2cd flip;
        flip << 0, 1, 1, 0;
        const SU2Rotation r{flip, mode, final_spin == Spin::up ? EdgeRole::to_up : EdgeRole::to_down};
        apply_rotation(s, r);
        clean(s);
        out.rotations.push_back(r);
        continue;
      }
      out.site = tb::subwell_site(occ.p_min);
      out.spin = spin;
      return out;
    }
    const bool left_member = mode == PairMode::right ? (occ.p_min % 2 == 0) : (occ.p_min % 2 != 0);
    if (!left_member) {
      mode = other(mode);
      continue;
    }
    const cplx a = amp(s, occ.p_min), b = amp(s, occ.p_min + 1);
    const cplx c_up = mode == PairMode::right ? b : a;
    const cplx c_dn = mode == PairMode::right ? a : b;
    EdgeRole role;
    if (occ.p_max == occ.p_min + 1) {
      role = final_spin == Spin::up ? EdgeRole::to_up : EdgeRole::to_down;
    } else {
      // Empty the left member into the right one.
      role = mode == PairMode::right ? EdgeRole::to_up : EdgeRole::to_down;
    }
    const SU2Rotation r{edge_rotation(c_up, c_dn, role), mode, role};
    apply_rotation(s, r);
    clean(s);
    out.rotations.push_back(r);
    mode = other(mode);
  }
  throw std::runtime_error("localization did not terminate; input is numerically at the reachability threshold");
}

std::vector<SU2Rotation> localization_sequence(const tb::SpinorState& state, Spin final_spin, double tol) {
  return localize(state, final_spin, tol).rotations;
}

Preparation preparation_sequence(const tb::SpinorState& target, Spin start_spin, double tol) {
  const Localization loc = localize(target, start_spin, tol);
  Preparation p;
  p.site = loc.site;
  p.spin = loc.spin;
  for (auto it = loc.rotations.rbegin(); it != loc.rotations.rend(); ++it) p.rotations.push_back(it->inverse());
  return p;
}

std::vector<SU2Rotation> translation_rotations(int shift) {
  Eigen::Matrix2cd pi_x;
  pi_x << 0, cplx(0, 1), cplx(0, 1), 0;
  std::vector<SU2Rotation> out;
  const int n = std::abs(shift);
  for (int k = 0; k < n; ++k) {
    if (shift > 0) {
      out.push_back({pi_x, PairMode::right, EdgeRole::to_up});
      out.push_back({pi_x, PairMode::left, EdgeRole::to_down});
    } else {
      out.push_back({pi_x, PairMode::left, EdgeRole::to_up});
      out.push_back({pi_x, PairMode::right, EdgeRole::to_down});
    }
  }
  return out;
}

}  // namespace spinorlat::control
