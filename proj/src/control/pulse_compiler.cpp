#include "spinorlat/pulse_compiler.hpp"

#include <cmath>

#include "spinorlat/bloch.hpp"

namespace spinorlat::control {

namespace {

constexpr double kSkip = 1e-14;

double wrap_pi(double a) {
  a = std::remainder(a, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  return a;
}

}  // namespace

Eigen::Matrix2cd equatorial_rotation(double phi, double theta) {
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  const cplx ii(0, 1);
  Eigen::Matrix2cd e;
  e << c, ii * s * std::polar(1.0, -phi), ii * s * std::polar(1.0, phi), c;
  return e;
}

std::vector<EquatorialStep> decompose_su2(const Eigen::Matrix2cd& w) {
  const cplx det = w.determinant();
  if (std::abs(std::abs(det) - 1.0) > 1e-10 || (w.adjoint() * w - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("decompose_su2: matrix is not unitary");
  const Eigen::Matrix2cd v = w / std::sqrt(det);
  // v = +/- E(phi, theta) Z(d), Z(d) = diag(exp(-i d), exp(i d)) = -E(d, pi) E(0, pi).
  const cplx a = v(0, 0), b = v(1, 0);
  const double c = std::abs(a), s = std::abs(b);
  double d = c < kSkip ? 0.0 : -std::arg(a);
  const double theta = 2.0 * std::atan2(s, c);
  const double phi = s < kSkip ? 0.0 : wrap_pi(std::arg(b) - 0.5 * kPi + d);
  // Z(d + pi) = -Z(d): keep d in (-pi/2, pi/2].
  d = std::remainder(d, kPi);
  if (d <= -0.5 * kPi) d += kPi;
  std::vector<EquatorialStep> steps;
  if (std::abs(d) > kSkip) {
    steps.push_back({0.0, kPi});
    steps.push_back({wrap_pi(d), kPi});
  }
  if (theta > kSkip) steps.push_back({phi, theta});
  return steps;
}

std::vector<tb::ControlSegment> su2_to_pulses(const SU2Rotation& rot, const PulseOptions& opt) {
  if (!(opt.omega_max > 0)) throw std::invalid_argument("su2_to_pulses: omega_max must be > 0");
  if (opt.gradient && *opt.gradient == 0) throw std::invalid_argument("su2_to_pulses: gradient must be nonzero");
  if (opt.fixed_duration && !(*opt.fixed_duration > 0)) throw std::invalid_argument("su2_to_pulses: fixed duration must be > 0");
  const double fc = opt.physical ? opt.fc_driven : 1.0;
  if (fc == 0) throw std::invalid_argument("su2_to_pulses: driven Franck-Condon factor is zero");

  std::vector<tb::ControlSegment> out;
  for (const EquatorialStep& st : decompose_su2(rot.matrix)) {
    tb::ControlSegment seg;
    double tau = opt.fixed_duration ? *opt.fixed_duration : st.theta / (opt.omega_max * std::abs(fc));
    if (opt.gradient) {
      const double period = kTwoPi / std::abs(*opt.gradient);
      tau = std::max(1.0, std::ceil(tau / period - 1e-9)) * period;
      seg.force = *opt.gradient;
      seg.delta_l = 0.0;
      seg.delta = rot.mode == PairMode::right ? 0.0 : -*opt.gradient;
    }
    const double omega = st.theta / (tau * std::abs(fc));
    if (omega > opt.omega_max * (1 + 1e-12))
      throw std::invalid_argument("su2_to_pulses: rotation needs a Rabi frequency above omega_max");
    seg.duration = tau;
    seg.omega = omega;
    // A segment with phase p and signed rate W realises E(-p, W tau).
    seg.phi = wrap_pi(fc > 0 ? -st.phi : kPi - st.phi);
    if (opt.physical) {
      seg.coupling = tb::Coupling::both;
      const double driven = omega * opt.fc_driven, suppressed = omega * opt.fc_suppressed;
      seg.omega_r = rot.mode == PairMode::right ? driven : suppressed;
      seg.omega_l = rot.mode == PairMode::right ? suppressed : driven;
    } else {
      seg.coupling = rot.mode == PairMode::right ? tb::Coupling::right : tb::Coupling::left;
    }
    out.push_back(seg);
  }
  return out;
}

Eigen::Matrix2cd segment_bond_unitary(const tb::ControlSegment& seg, PairMode mode) {
  const double rate = mode == PairMode::right ? seg.rate_right() : seg.rate_left();
  double omega = 0;
  if (seg.force != 0) omega = mode == PairMode::right ? seg.force * seg.delta_l : seg.force * (seg.delta_l - 1.0);
  const cplx g = -0.5 * std::polar(1.0, seg.phi) * rate;
  Eigen::Matrix2cd h;
  h << -0.5 * (seg.delta - omega), g, std::conj(g), 0.5 * (seg.delta - omega);
  return tb::expm_hermitian2(h, seg.duration);
}

}  // namespace spinorlat::control
