#include "spinorlat/lattice.hpp"

#include <cmath>

namespace spinorlat::model {

void LatticeConfig::validate() const {
  if (!(v0 >= 0) || !std::isfinite(v0)) throw std::invalid_argument("lattice depth v0 must be finite and >= 0");
  if (!(theta >= 0 && theta <= kPi)) throw std::invalid_argument("theta must lie in [0, pi]");
  if (!std::isfinite(g_up) || !std::isfinite(g_down) || !std::isfinite(m_f))
    throw std::invalid_argument("g-factors and m_F must be finite");
}

LightShift lightshift_params(const LatticeConfig& config, Spin manifold) {
  config.validate();
  const double g = manifold == Spin::up ? config.g_up : config.g_down;
  const double half_gm = 0.5 * g * config.m_f;
  const double c = std::cos(config.theta);
  const double s = std::sin(config.theta);
  const double depth = config.v0 * std::sqrt(c * c + half_gm * half_gm * s * s);
  // atan(half_gm * tan(theta)) evaluated without forming tan(theta); near
  // theta = pi/2 this is the +/- pi/2 limit, past it the branch follows tan.
  double phase;
  if (std::abs(c) < 1e-15) {
    phase = half_gm == 0 ? 0.0 : std::copysign(kPi / 2, half_gm);
  } else {
    phase = std::atan(half_gm * s / c);
  }
  return {depth, phase};
}

double trap_frequency(double depth) { return std::sqrt(8.0 * depth); }

double v0_for_trap_frequency(const LatticeConfig& config, double omega) {
  if (!(omega > 0)) throw std::invalid_argument("trap frequency must be > 0");
  LatticeConfig unit = config;
  unit.v0 = 1.0;
  const double scale = lightshift_params(unit, Spin::up).depth;
  if (!(scale > 0)) throw std::invalid_argument("up manifold has zero depth for this angle");
  return omega * omega / 8.0 / scale;
}

double well_center(const LatticeConfig& config, Spin spin) {
  const double c_down = -lightshift_params(config, Spin::down).phase / kTwoPi;
  if (spin == Spin::down) return c_down;
  double c_up = -lightshift_params(config, Spin::up).phase / kTwoPi;
  // Shift into (c_down, c_down + 1].
  c_up += std::ceil(c_down - c_up);
  if (c_up <= c_down) c_up += 1.0;
  return c_up;
}

AdiabaticCurves adiabatic_potentials(std::span<const double> x, const LatticeConfig& config,
                                     double delta_uw, double omega_uw) {
  if (!(omega_uw >= 0)) throw std::invalid_argument("omega_uw must be >= 0");
  const LightShift ls = lightshift_params(config, Spin::up);
  const double cd = std::cos(ls.phase), sd = std::sin(ls.phase);
  AdiabaticCurves out;
  out.v_plus.resize(x.size());
  out.v_minus.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double arg = kTwoPi * x[i];
    const double mean = -ls.depth * cd * std::cos(arg);
    const double split = 0.5 * std::hypot(2.0 * ls.depth * sd * std::sin(arg) - delta_uw, omega_uw);
    out.v_plus[i] = mean + split;
    out.v_minus[i] = mean - split;
  }
  return out;
}

}  // namespace spinorlat::model
