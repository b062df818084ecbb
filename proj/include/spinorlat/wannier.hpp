#pragma once

#include <vector>

#include "spinorlat/bands.hpp"

namespace spinorlat::model {

struct RealGrid {
  double x_min = -4;
  double x_max = 4;
  int points_per_period = 64;

  int size() const;
  double step() const { return 1.0 / points_per_period; }
  double at(int i) const { return x_min + i * step(); }
  bool operator==(const RealGrid&) const = default;
};

struct WannierFunction {
  RealGrid grid;
  std::vector<cplx> values;
  int site = 0;
  Spin spin = Spin::down;
  int band = 0;
  double center = 0;     // well centre of this site
  double tail_norm = 0;  // weight further than 3 periods from the centre

  bool well_localized() const { return tail_norm <= 1e-6; }
};

// Default grid: the site's centre +/- 4 periods, widened to whole periods.
RealGrid default_grid(const BlochSpectrum& spectrum, int site);

// phi_l(x) = (1/N_q) sum_j exp(-i 2 pi l q_j) psi_{q_j}(x)
WannierFunction wannier_state(const BlochSpectrum& spectrum, int band, int site,
                              const RealGrid& grid);
WannierFunction wannier_state(const BlochSpectrum& spectrum, int band, int site);

// <a|b> by trapezoidal quadrature. Throws std::invalid_argument on grid mismatch.
cplx overlap(const WannierFunction& a, const WannierFunction& b);

// Root-mean-square width of |phi|^2 in periods.
double rms_width(const WannierFunction& w);

struct FranckCondon {
  double omega_r;  // <phi_up_l | phi_down_l>
  double omega_l;  // <phi_up_{l-1} | phi_down_l>
  double imag_r;   // residual imaginary parts, reported for transparency
  double imag_l;
  double ratio() const;  // |omega_l / omega_r|
};

// Ground-band overlaps on a shared grid covering both spins' wells.
FranckCondon franck_condon(const LatticeConfig& config, const BlochSpectrum& up,
                           const BlochSpectrum& down);

struct GaussianFC {
  double d_left;   // |l-1, up> to |l, down> distance (periods)
  double d_right;  // |l, up> to |l, down> distance (periods)
  double width;    // rms width of the harmonic ground state (periods)
  double overlap_left;
  double overlap_right;
  double ratio;    // overlap_left / overlap_right
};

// Harmonic-oscillator estimate: each well holds the ground state of
// frequency omega (E_R units); displaced-Gaussian overlap exp(-d^2 / (8 s^2)).
GaussianFC gaussian_fc_ratio(const LatticeConfig& config, double omega);

}  // namespace spinorlat::model
