#pragma once

#include <span>
#include <vector>

#include "spinorlat/types.hpp"

// Scalar tight-binding chain with symmetric hopping and a uniform force:
// H = omega/2 sum_l (|l+1><l| + h.c.) + F sum_l l |l><l|.
namespace spinorlat::tb {

struct HNSegment {
  double duration = 0;
  double omega = 0;
  double force = 0;
  bool operator==(const HNSegment&) const = default;
};

struct HNSchedule {
  std::vector<HNSegment> segments;
  void validate() const;
  bool operator==(const HNSchedule&) const = default;
};

struct HNPropagator {
  double a = 0;    // |integral of omega exp(i eta) dt|
  double b = 0;    // its argument
  double eta = 0;  // integral of F dt (radians); |q> ends at q - eta/2pi

  // exp(-i a cos(2 pi q - b)): the phase picked up by an input |q>.
  cplx phase(double q) const;
};

HNPropagator hn_propagator(const HNSchedule& schedule);

struct ChainPhases {
  std::vector<double> q_out;  // -1/2 + j/n
  std::vector<cplx> values;   // Fourier amplitude of the evolved |0> at q_out
  double eta = 0;
  double boundary_amplitude = 0;
};

// Exact evolution of |0> on an open chain of n_sites sites centred on 0,
// followed by a discrete Fourier transform. Throws LeakageError when the
// edge amplitude exceeds leak_tol, since the finite chain would then no
// longer represent the infinite one.
ChainPhases scalar_chain_phases(const HNSchedule& schedule, int n_sites, double leak_tol = 1e-12);

}  // namespace spinorlat::tb
