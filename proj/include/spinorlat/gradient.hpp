#pragma once

#include "spinorlat/bloch.hpp"
#include "spinorlat/exact_sum.hpp"

namespace spinorlat::tb {

// Accumulated gradient phases, in radians: chi = integral of F delta_l dt,
// eta = integral of F dt. The lattice is displaced by eta / (2 pi) Brillouin
// zones.
struct GradientFrame {
  ExactSum chi_sum;
  ExactSum eta_sum;

  double chi() const { return chi_sum.value(); }
  double eta() const { return eta_sum.value(); }
  // eta / 2 pi reduced to [0, 1)
  double shift() const;

  GradientFrame& operator+=(const GradientFrame& o);
  friend GradientFrame operator+(GradientFrame a, const GradientFrame& b) { return a += b; }
  friend bool operator==(const GradientFrame& a, const GradientFrame& b) {
    return a.chi_sum == b.chi_sum && a.eta_sum == b.eta_sum;
  }
};

GradientFrame gradient_frame(const ControlSegment& seg);
GradientFrame gradient_frame(const PulseSequence& seq);

// Blocks become exp(-i chi/2) exp(-i chi sigma_z / 2) U_q and the shift grows
// by eta / 2 pi.
BlochBlockMap apply_displacement(const GradientFrame& frame, const BlochBlockMap& blocks);

// Interaction-picture block map U_I(q) with respect to the gradient term.
// Segments with a force must drive a single bond type (R or L, or "both"
// with one rate zero); the coupling then rotates at a single frequency and
// each segment has a closed form.
BlochBlockMap interaction_block_map(const PulseSequence& seq, std::span<const double> q);

// apply_displacement(gradient_frame(seq), interaction_block_map(seq, q))
BlochBlockMap full_block_map(const PulseSequence& seq, std::span<const double> q);

// Whether full_block_map can handle the sequence.
bool block_map_supported(const PulseSequence& seq);

}  // namespace spinorlat::tb
