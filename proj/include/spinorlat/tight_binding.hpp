#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spinorlat/pulse.hpp"
#include "spinorlat/spinor_state.hpp"

namespace spinorlat::tb {

struct Boundary {
  enum class Kind { open, periodic };
  Kind kind = Kind::open;
  int ring_sites = 0;

  static Boundary open() { return {}; }
  static Boundary ring(int n) { return {Kind::periodic, n}; }
  bool periodic() const { return kind == Kind::periodic; }
};

// Generator over sites [l_min, l_max], basis index 2 (l - l_min) + s.
// Periodic boundaries require l_max - l_min + 1 == ring_sites and force == 0.
Eigen::MatrixXcd build_tb_generator(const ControlSegment& seg, int l_min, int l_max, Boundary boundary);

// exp(-i H tau) by Hermitian eigendecomposition.
Eigen::MatrixXcd segment_propagator(const ControlSegment& seg, int l_min, int l_max, Boundary boundary);
Eigen::MatrixXcd sequence_propagator(const PulseSequence& seq, int l_min, int l_max, Boundary boundary);

struct EvolveOptions {
  double boundary_tol = 1e-12;  // edge amplitude that triggers growth
  int max_sites = 4096;         // LeakageError beyond this
  double trim_tol = 1e-12;
};

SpinorState evolve(const SpinorState& state, const PulseSequence& seq, Boundary boundary = Boundary::open(),
                   const EvolveOptions& options = {});

// Same schedule applied to every state; segment propagators are shared.
std::vector<SpinorState> evolve_many(const std::vector<SpinorState>& states, const PulseSequence& seq,
                                     Boundary boundary = Boundary::open(), const EvolveOptions& options = {});

// States after each segment (front() is the input).
std::vector<SpinorState> evolve_trajectory(const SpinorState& state, const PulseSequence& seq,
                                           Boundary boundary = Boundary::open(),
                                           const EvolveOptions& options = {});

}  // namespace spinorlat::tb
