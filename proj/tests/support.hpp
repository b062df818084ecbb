#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "oracles/oracles.hpp"
#include "spinorlat/protocol.hpp"
#include "spinorlat/pulse.hpp"
#include "spinorlat/spinor_state.hpp"

namespace testsupport {

using spinorlat::cplx;
using spinorlat::Spin;
using spinorlat::control::PairMode;
using spinorlat::control::SU2Rotation;
using spinorlat::tb::ControlSegment;
using spinorlat::tb::Coupling;
using spinorlat::tb::PulseSequence;
using spinorlat::tb::SpinorState;

// Applies Haar-random bond rotations (alternating R, L, ...) to |0,down>
// until the state covers exactly `sites` sites. Every intermediate state is
// reachable by construction.
template <class Rng>
SpinorState random_reachable(Rng& rng, int sites) {
  for (;;) {
    SpinorState s = SpinorState::ket(0, Spin::down);
    PairMode mode = std::bernoulli_distribution(0.5)(rng) ? PairMode::right : PairMode::left;
    for (int k = 0; k < 4 * sites + 4 && s.sites() < sites; ++k) {
      spinorlat::control::apply_rotation(s, {oracle::random_su2(rng), mode});
      mode = spinorlat::control::other(mode);
    }
    s.trim(1e-14);
    if (s.sites() == sites) {
      s.normalize();
      return s;
    }
  }
}

// Direct sum_{l,s} conj(c_{l+j,s}) c_{l,s}.
inline cplx translation_overlap(const SpinorState& s, int j) {
  cplx acc = 0;
  for (int l = s.l_min; l <= s.l_max(); ++l)
    for (Spin sp : {Spin::down, Spin::up}) acc += std::conj(s.get(l + j, sp)) * s.get(l, sp);
  return acc;
}

inline double worst_translation_overlap(const SpinorState& s) {
  double w = 0;
  for (int j = 1; j < s.sites(); ++j) w = std::max(w, std::abs(translation_overlap(s, j)));
  return w;
}

struct SegmentRanges {
  double omega_max = 1.5;
  double tau_max = 1.5;
  double delta_max = 1.0;
  double force_max = 0.0;
  bool random_delta_l = false;
};

template <class Rng>
ControlSegment random_segment(Rng& rng, const SegmentRanges& r) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ControlSegment s;
  s.duration = 0.05 + (r.tau_max - 0.05) * u(rng);
  s.phi = 2 * oracle::pi * u(rng);
  s.delta = r.delta_max * (2 * u(rng) - 1);
  const int c = std::uniform_int_distribution<int>(0, 2)(rng);
  s.coupling = c == 0 ? Coupling::right : c == 1 ? Coupling::left : Coupling::both;
  if (s.coupling == Coupling::both) {
    s.omega_r = r.omega_max * u(rng);
    s.omega_l = r.omega_max * u(rng);
  } else {
    s.omega = r.omega_max * u(rng);
  }
  s.force = r.force_max * (2 * u(rng) - 1);
  if (r.random_delta_l) s.delta_l = 0.999 * u(rng);
  return s;
}

template <class Rng>
PulseSequence random_sequence(Rng& rng, int n, const SegmentRanges& r) {
  PulseSequence seq;
  for (int k = 0; k < n; ++k) seq.segments.push_back(random_segment(rng, r));
  return seq;
}

// Block U_q in the (up, down) basis built from U|0,up> and U|0,down>.
inline Eigen::Matrix2cd blocks_from_columns(const SpinorState& col_up, const SpinorState& col_down, double q) {
  auto col = [q](const SpinorState& s, Spin sp) {
    cplx acc = 0;
    for (int l = s.l_min; l <= s.l_max(); ++l) acc += s.get(l, sp) * std::polar(1.0, -2 * oracle::pi * l * q);
    return acc;
  };
  Eigen::Matrix2cd m;
  m << col(col_up, Spin::up), col(col_down, Spin::up), col(col_up, Spin::down), col(col_down, Spin::down);
  return m;
}

inline double max_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace testsupport

#include "spinorlat/bloch.hpp"
#include "spinorlat/gradient.hpp"

namespace testsupport {

// For a single-bond gradient sequence whose segment durations are whole
// multiples of 2 pi / |F|: the gradient-free sequence with the detuning moved
// by each segment's bond frequency, a closing sigma_z phase, and then the
// displacement of the gradient frame.
inline spinorlat::tb::BlochBlockMap timed_gradient_reference(const PulseSequence& seq, std::span<const double> q) {
  PulseSequence flat;
  double theta = 0;
  for (auto s : seq.segments) {
    const bool right = s.rate_right() != 0;
    const double w = s.force * (right ? s.delta_l : s.delta_l - 1.0);
    theta += w * s.duration;
    s.delta -= w;
    s.force = 0;
    s.delta_l = 0;
    flat.segments.push_back(s);
  }
  auto map = spinorlat::tb::evolve_bloch(flat, q);
  for (auto& b : map.blocks) {
    b.row(0) *= std::polar(1.0, theta / 2);
    b.row(1) *= std::polar(1.0, -theta / 2);
  }
  return spinorlat::tb::apply_displacement(spinorlat::tb::gradient_frame(seq), map);
}

// Random single-bond segment with a force and a duration of n 2 pi / |F|.
template <class Rng>
ControlSegment random_timed_gradient_segment(Rng& rng, double omega_max) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ControlSegment s;
  s.coupling = u(rng) < 0.5 ? Coupling::right : Coupling::left;
  s.omega = omega_max * u(rng);
  s.phi = 2 * oracle::pi * u(rng);
  s.delta = 2 * u(rng) - 1;
  s.force = (u(rng) < 0.5 ? -1 : 1) * (2.0 + 6.0 * u(rng));
  s.delta_l = 0.999 * u(rng);
  const int n = 1 + std::uniform_int_distribution<int>(0, 1)(rng);
  s.duration = n * 2 * oracle::pi / std::abs(s.force);
  return s;
}

}  // namespace testsupport
