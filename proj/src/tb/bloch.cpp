#include "spinorlat/bloch.hpp"

#include <cmath>

namespace spinorlat::tb {

std::vector<double> uniform_q_grid(int n) {
  if (n < 1) throw std::invalid_argument("q grid needs at least one point");
  std::vector<double> q(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) q[static_cast<std::size_t>(j)] = -0.5 + static_cast<double>(j) / n;
  return q;
}

Eigen::Matrix2cd bloch_generator(const ControlSegment& seg, double q) {
  seg.validate();
  if (seg.force != 0) throw std::invalid_argument("bloch_generator: gradient segments need the interaction picture");
  const cplx g = -0.5 * std::polar(1.0, seg.phi) * (seg.rate_right() + seg.rate_left() * std::polar(1.0, kTwoPi * q));
  Eigen::Matrix2cd h;
  h << -0.5 * seg.delta, g, std::conj(g), 0.5 * seg.delta;
  return h;
}

Eigen::Matrix2cd expm_hermitian2(const Eigen::Matrix2cd& h, double tau) {
  const double a0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
  const double az = 0.5 * (h(0, 0).real() - h(1, 1).real());
  const cplx off = h(0, 1);
  const double n = std::sqrt(az * az + std::norm(off));
  const double c = std::cos(n * tau);
  // sin(n tau) / n, finite as n -> 0
  const double sn = n * tau < 1e-8 ? tau * (1.0 - (n * tau) * (n * tau) / 6.0) : std::sin(n * tau) / n;
  const cplx ii(0, 1);
  Eigen::Matrix2cd u;
  u << c - ii * sn * az, -ii * sn * off, -ii * sn * std::conj(off), c + ii * sn * az;
  return std::polar(1.0, -a0 * tau) * u;
}

Eigen::Matrix2cd bloch_segment_propagator(const ControlSegment& seg, double q) {
  return expm_hermitian2(bloch_generator(seg, q), seg.duration);
}

bool BlochBlockMap::commensurate(double tol) const {
  const std::size_t n = q.size();
  if (n == 0) return true;
  for (std::size_t j = 0; j < n; ++j)
    if (std::abs(q[j] - (q[0] + static_cast<double>(j) / n)) > 1e-12) return false;
  const double k = shift * static_cast<double>(n);
  return std::abs(k - std::round(k)) <= tol;
}

BlochBlockMap::Relabeled BlochBlockMap::relabeled() const {
  Relabeled out;
  out.q = q;
  const std::size_t n = q.size();
  if (shift == 0) {
    out.blocks = blocks;
    return out;
  }
  if (commensurate()) {
    const auto k = static_cast<std::size_t>(std::llround(shift * static_cast<double>(n))) % n;
    out.blocks.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.blocks[j] = blocks[(j + k) % n];
    return out;
  }
  // Trigonometric interpolation through the n samples: real-space
  // coefficients c_l = (1/n) sum_j f_j exp(i 2 pi l q_j) for the n lowest |l|,
  // then f(q) = sum_l c_l exp(-i 2 pi l q). An even n splits the Nyquist
  // coefficient symmetrically.
  const int ni = static_cast<int>(n);
  const int lo = -(ni / 2), hi = (ni - 1) / 2;
  std::vector<Eigen::Matrix2cd> coef(static_cast<std::size_t>(hi - lo + 1), Eigen::Matrix2cd::Zero());
  for (int l = lo; l <= hi; ++l) {
    Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
    for (std::size_t j = 0; j < n; ++j) acc += std::polar(1.0, kTwoPi * l * q[j]) * blocks[j];
    coef[static_cast<std::size_t>(l - lo)] = acc / static_cast<double>(n);
  }
  out.blocks.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = q[j] + shift;
    Eigen::Matrix2cd f = Eigen::Matrix2cd::Zero();
    for (int l = lo; l <= hi; ++l) {
      const auto& c = coef[static_cast<std::size_t>(l - lo)];
      if (ni % 2 == 0 && l == lo) {
        f += c * (0.5 * (std::polar(1.0, -kTwoPi * l * x) + std::polar(1.0, kTwoPi * l * x)));
      } else {
        f += c * std::polar(1.0, -kTwoPi * l * x);
      }
    }
    out.blocks[j] = f;
  }
  out.interpolated = true;
  out.interpolation_modes = ni;
  return out;
}

BlochSpinors evolve_bloch(const BlochSpinors& initial, const PulseSequence& seq) {
  if (initial.q.size() != initial.amps.size()) throw std::invalid_argument("evolve_bloch: q/amps size mismatch");
  if (seq.has_gradient()) throw std::invalid_argument("evolve_bloch: gradient segments need the interaction picture");
  BlochSpinors out = initial;
  for (const auto& seg : seq.segments)
    for (std::size_t j = 0; j < out.q.size(); ++j) out.amps[j] = bloch_segment_propagator(seg, out.q[j]) * out.amps[j];
  return out;
}

BlochBlockMap evolve_bloch(const PulseSequence& seq, std::span<const double> q) {
  if (seq.has_gradient()) throw std::invalid_argument("evolve_bloch: gradient segments need the interaction picture");
  BlochBlockMap m;
  m.q.assign(q.begin(), q.end());
  m.blocks.assign(q.size(), Eigen::Matrix2cd::Identity());
  for (const auto& seg : seq.segments)
    for (std::size_t j = 0; j < q.size(); ++j) m.blocks[j] = bloch_segment_propagator(seg, q[j]) * m.blocks[j];
  return m;
}

}  // namespace spinorlat::tb
