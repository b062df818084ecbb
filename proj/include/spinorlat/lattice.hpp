#pragma once

#include <span>
#include <vector>

#include "spinorlat/types.hpp"

// Units throughout: hbar = 1, energies in recoil energies E_R, times in
// 1/E_R, lengths in lattice periods L. In these units the standing-wave
// argument 2 k_L z becomes 2 pi x.
namespace spinorlat::model {

struct LatticeConfig {
  double v0 = 1.0;       // depth amplitude multiplying cos(2 k_L z)
  double theta = 0.0;    // angle between the two linear polarizations (rad)
  double g_up = 0.25;    // Lande factor of the up manifold
  double g_down = -0.25; // Lande factor of the down manifold
  double m_f = 3.0;

  // v0 >= 0 (zero is accepted for free-particle band checks), 0 <= theta <= pi.
  void validate() const;
};

struct LightShift {
  double depth;  // V_{F,m}
  double phase;  // delta_{F,m}, radians in [-pi/2, pi/2]
};

LightShift lightshift_params(const LatticeConfig& config, Spin manifold);

// Harmonic trap frequency of a lattice of the given depth: sqrt(8 V).
double trap_frequency(double depth);

// The v0 for which the up manifold has harmonic frequency hbar*omega.
double v0_for_trap_frequency(const LatticeConfig& config, double omega);

// Position (in periods) of the potential minimum of the site-0 well for each
// spin. Up wells are labelled so that the site-l up well is the first one to
// the right of the site-l down well; at theta = 0 the site-l up well
// therefore sits one period to the right.
double well_center(const LatticeConfig& config, Spin spin);

struct AdiabaticCurves {
  std::vector<double> v_plus;
  std::vector<double> v_minus;
};

// Microwave-dressed potentials on positions x (periods). Uses the depth and
// phase of the up manifold for both lattices.
AdiabaticCurves adiabatic_potentials(std::span<const double> x, const LatticeConfig& config,
                                     double delta_uw, double omega_uw);

}  // namespace spinorlat::model
