#include "spinorlat/hn.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "spinorlat/exact_sum.hpp"

namespace spinorlat::tb {

void HNSchedule::validate() const {
  for (const auto& s : segments) {
    if (!std::isfinite(s.duration) || !std::isfinite(s.omega) || !std::isfinite(s.force))
      throw std::invalid_argument("HN schedule has a non-finite field");
    if (s.duration < 0) throw std::invalid_argument("HN segment duration must be >= 0");
  }
}

cplx HNPropagator::phase(double q) const { return std::polar(1.0, -a * std::cos(kTwoPi * q - b)); }

HNPropagator hn_propagator(const HNSchedule& schedule) {
  schedule.validate();
  cplx integral = 0;
  ExactSum eta;
  for (const auto& s : schedule.segments) {
    // integral over the segment of omega exp(i (eta0 + F t)) dt
    const double half = 0.5 * s.force * s.duration;
    const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
    integral += s.omega * s.duration * sinc * std::polar(1.0, eta.value() + half);
    eta.add_product(s.force, s.duration);
  }
  HNPropagator p;
  p.a = std::abs(integral);
  p.b = p.a == 0 ? 0.0 : std::arg(integral);
  p.eta = eta.value();
  return p;
}

ChainPhases scalar_chain_phases(const HNSchedule& schedule, int n_sites, double leak_tol) {
  schedule.validate();
  if (n_sites < 2) throw std::invalid_argument("scalar chain needs at least two sites");
  const int l0 = -(n_sites / 2);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n_sites);
  psi[-l0] = 1.0;
  ExactSum eta;
  double edge = 0;
  for (const auto& s : schedule.segments) {
    if (s.duration == 0) continue;
    Eigen::VectorXd diag(n_sites), sub = Eigen::VectorXd::Constant(n_sites - 1, 0.5 * s.omega);
    for (int i = 0; i < n_sites; ++i) diag[i] = s.force * (l0 + i);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    Eigen::VectorXcd ph(n_sites);
    for (int i = 0; i < n_sites; ++i) ph[i] = std::polar(1.0, -es.eigenvalues()[i] * s.duration);
    const Eigen::MatrixXcd v = es.eigenvectors().cast<cplx>();
    psi = v * (ph.asDiagonal() * (v.transpose() * psi));
    edge = std::max({edge, std::abs(psi[0]), std::abs(psi[n_sites - 1])});
    eta.add_product(s.force, s.duration);
  }
  if (edge > leak_tol) {
    throw LeakageError("scalar chain of " + std::to_string(n_sites) + " sites leaks: edge amplitude " +
                       std::to_string(edge));
  }
  ChainPhases out;
  out.eta = eta.value();
  out.boundary_amplitude = edge;
  out.q_out.resize(static_cast<std::size_t>(n_sites));
  out.values.resize(static_cast<std::size_t>(n_sites));
  for (int j = 0; j < n_sites; ++j) {
    const double q = -0.5 + static_cast<double>(j) / n_sites;
    cplx acc = 0;
    for (int i = 0; i < n_sites; ++i) acc += psi[i] * std::polar(1.0, -kTwoPi * (l0 + i) * q);
    out.q_out[static_cast<std::size_t>(j)] = q;
    out.values[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

}  // namespace spinorlat::tb
