#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "spinorlat/pulse.hpp"

// Quasimomentum space. The Bloch basis is |q,s> = sum_l exp(i 2 pi l q)|l,s>
// with q in periods^-1, and 2x2 blocks are written in the (up, down) order.
namespace spinorlat::tb {

// -1/2 + j/n, j = 0..n-1
std::vector<double> uniform_q_grid(int n);

// H(q) = [[-delta/2, g], [conj(g), delta/2]],
// g = -1/2 exp(i phi) (omega_R + omega_L exp(i 2 pi q)). Requires force == 0.
Eigen::Matrix2cd bloch_generator(const ControlSegment& seg, double q);

// exp(-i H(q) tau)
Eigen::Matrix2cd bloch_segment_propagator(const ControlSegment& seg, double q);

// exp(-i h tau) for a 2x2 Hermitian h, closed form.
Eigen::Matrix2cd expm_hermitian2(const Eigen::Matrix2cd& h, double tau);

struct BlochSpinors {
  std::vector<double> q;
  std::vector<Eigen::Vector2cd> amps;  // (up, down)
};

// Per-q unitaries U_q. The image of |q,s> lands at quasimomentum q - shift.
struct BlochBlockMap {
  std::vector<double> q;
  std::vector<Eigen::Matrix2cd> blocks;
  double shift = 0;  // in Brillouin zones, kept in [0, 1)
  double gamma = 0;  // q-independent phase carried by the blocks: det U_q = exp(2 i gamma)

  std::size_t size() const { return q.size(); }
  // Column of |q,down>: alpha = <q,up|U|q,down>, beta = <q,down|U|q,down>.
  cplx alpha(std::size_t j) const { return blocks[j](0, 1); }
  cplx beta(std::size_t j) const { return blocks[j](1, 1); }

  // True when the grid is uniform and shift moves it onto itself.
  bool commensurate(double tol = 1e-9) const;

  struct Relabeled {
    std::vector<double> q;                 // output quasimomenta (the input grid)
    std::vector<Eigen::Matrix2cd> blocks;  // map evaluated at q + shift
    bool interpolated = false;
    // 0 for pure index relabelling; otherwise the number of Fourier modes
    // used by the trigonometric interpolant (exact when the map's real-space
    // support is shorter than that).
    int interpolation_modes = 0;
  };
  // Re-indexes blocks by output quasimomentum.
  Relabeled relabeled() const;
};

// Independent 2x2 evolution at each q; rejects gradient segments.
BlochSpinors evolve_bloch(const BlochSpinors& initial, const PulseSequence& seq);
// Starting from the identity frame: the block map of the whole sequence.
BlochBlockMap evolve_bloch(const PulseSequence& seq, std::span<const double> q);

}  // namespace spinorlat::tb
