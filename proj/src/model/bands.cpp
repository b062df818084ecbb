#include "spinorlat/bands.hpp"

#include <cmath>
#include <string>

namespace spinorlat::model {

namespace {

void check_options(const BandOptions& o) {
  if (o.n_planewaves < 11 || o.n_planewaves % 2 == 0)
    throw std::invalid_argument("n_planewaves must be odd and >= 11");
  if (o.n_q < 2) throw std::invalid_argument("n_q must be >= 2");
  if (o.n_bands < 1 || o.n_bands > o.n_planewaves)
    throw std::invalid_argument("n_bands must lie in [1, n_planewaves]");
}

// The gauge change c_m = exp(i m delta) v_m turns the plane-wave Hamiltonian
// into a real symmetric tridiagonal matrix that does not depend on delta, so
// both spins share identical energies bit for bit.
Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve(double depth, double q, int n_pw, bool vectors) {
  const int half = n_pw / 2;
  Eigen::VectorXd diag(n_pw);
  Eigen::VectorXd sub = Eigen::VectorXd::Constant(n_pw - 1, -0.5 * depth);
  for (int i = 0; i < n_pw; ++i) {
    const double k = (i - half) + q;
    diag[i] = 4.0 * k * k;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceError("plane-wave eigensolver failed");
  return es;
}

}  // namespace

Eigen::VectorXd band_energies_at(double depth, double q, int n_planewaves, int n_bands) {
  return solve(depth, q, n_planewaves, false).eigenvalues().head(n_bands);
}

cplx BlochSpectrum::bloch_value(int band, int j, double x) const {
  const Eigen::MatrixXcd& c = coeffs.at(static_cast<std::size_t>(j));
  const int half = n_planewaves / 2;
  cplx sum = 0;
  for (int i = 0; i < n_planewaves; ++i) {
    sum += c(i, band) * std::polar(1.0, kTwoPi * ((i - half) + q[static_cast<std::size_t>(j)]) * x);
  }
  return sum;
}

BlochSpectrum band_structure(const LatticeConfig& config, Spin spin, const BandOptions& options) {
  config.validate();
  check_options(options);
  const LightShift ls = lightshift_params(config, spin);

  BlochSpectrum out;
  out.spin = spin;
  out.depth = ls.depth;
  out.phase = ls.phase;
  out.center = well_center(config, spin);
  out.n_planewaves = options.n_planewaves;
  out.energies.resize(options.n_q, options.n_bands);
  out.q.resize(static_cast<std::size_t>(options.n_q));
  out.coeffs.resize(static_cast<std::size_t>(options.n_q));

  const int n_pw = options.n_planewaves;
  const int half = n_pw / 2;
  Eigen::VectorXcd gauge(n_pw);
  for (int i = 0; i < n_pw; ++i) gauge[i] = std::polar(1.0, (i - half) * ls.phase);

  for (int j = 0; j < options.n_q; ++j) {
    const double q = -0.5 + static_cast<double>(j) / options.n_q;
    out.q[static_cast<std::size_t>(j)] = q;
    const auto es = solve(ls.depth, q, n_pw, true);
    out.energies.row(j) = es.eigenvalues().head(options.n_bands).transpose();
    Eigen::MatrixXcd c = gauge.asDiagonal() * es.eigenvectors().leftCols(options.n_bands).cast<cplx>();

    for (int n = 0; n < options.n_bands; ++n) {
      cplx at_center = 0;
      for (int i = 0; i < n_pw; ++i) at_center += c(i, n) * std::polar(1.0, kTwoPi * ((i - half) + q) * out.center);
      cplx ref = at_center;
      if (std::abs(at_center) < 1e-8) {
        Eigen::Index imax = 0;
        c.col(n).cwiseAbs().maxCoeff(&imax);
        ref = c(imax, n);
      }
      c.col(n) *= std::conj(ref) / std::abs(ref);
    }
    out.coeffs[static_cast<std::size_t>(j)] = std::move(c);
  }

  if (options.check_convergence) {
    for (double q : {0.0, -0.5}) {
      const double e1 = solve(ls.depth, q, n_pw, false).eigenvalues()[0];
      const double e2 = solve(ls.depth, q, 2 * n_pw + 1, false).eigenvalues()[0];
      if (std::abs(e1 - e2) > options.convergence_tol) {
        throw ConvergenceError("lowest band not converged with " + std::to_string(n_pw) +
                               " plane waves: shift " + std::to_string(std::abs(e1 - e2)) +
                               " E_R on doubling");
      }
    }
  }
  return out;
}

}  // namespace spinorlat::model
