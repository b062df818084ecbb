#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spinorlat/lattice.hpp"

namespace spinorlat::model {

struct BandOptions {
  int n_planewaves = 41;  // odd, >= 11
  int n_q = 128;          // >= 2
  int n_bands = 4;
  // Re-solve the lowest band with 2n+1 plane waves and fail if it moves by
  // more than convergence_tol.
  bool check_convergence = true;
  double convergence_tol = 1e-10;
};

// Bloch spectrum of -V cos(2 pi x + delta) for one spin.
struct BlochSpectrum {
  Spin spin = Spin::down;
  double depth = 0;
  double phase = 0;
  double center = 0;  // site-0 well centre, see well_center
  int n_planewaves = 0;
  std::vector<double> q;       // -1/2 + j/n_q
  Eigen::MatrixXd energies;    // (n_q, n_bands), ascending in the band index
  // coeffs[j].col(n): plane-wave amplitudes of band n at q[j], for plane
  // waves exp(i 2 pi (m + q) x), m = -M..M. Phase-fixed so the Bloch function
  // is real and positive at the well centre (band 0) or has a real positive
  // largest coefficient when it vanishes there.
  std::vector<Eigen::MatrixXcd> coeffs;

  int n_bands() const { return static_cast<int>(energies.cols()); }
  int n_q() const { return static_cast<int>(q.size()); }
  // psi_{n,q_j}(x)
  cplx bloch_value(int band, int j, double x) const;
};

BlochSpectrum band_structure(const LatticeConfig& config, Spin spin, const BandOptions& options = {});

// Energies of the lowest n_bands at quasimomentum q with the given
// truncation. The lattice phase only shifts the wells, so it is not needed.
Eigen::VectorXd band_energies_at(double depth, double q, int n_planewaves, int n_bands);

}  // namespace spinorlat::model
