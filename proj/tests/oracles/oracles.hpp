#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library, so a shared mistake cannot hide on both sides.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

// Number of eigenvalues below x of the symmetric tridiagonal matrix
// (diag d, off-diagonal e), from the signs of the LDL^T pivots.
inline int sturm_count(const std::vector<double>& d, const std::vector<double>& e, double x) {
  int count = 0;
  double piv = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double off = i == 0 ? 0.0 : e[i - 1] * e[i - 1] / piv;
    piv = d[i] - x - off;
    if (piv == 0.0) piv = -1e-300;
    if (piv < 0) ++count;
  }
  return count;
}

// k-th smallest eigenvalue (k = 0, 1, ...) by bisection.
inline double tridiag_eigenvalue(const std::vector<double>& d, const std::vector<double>& e, int k) {
  double r = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double ei = i < e.size() ? std::abs(e[i]) : 0.0;
    const double ep = i > 0 ? std::abs(e[i - 1]) : 0.0;
    r = std::max(r, std::abs(d[i]) + ei + ep);
  }
  double lo = -r - 1, hi = r + 1;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (sturm_count(d, e, mid) > k ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

// Mathieu characteristic value a_0(q): even pi-periodic solutions of
// y'' + (a - 2 q cos 2x) y = 0 in the basis cos(2 m x).
inline double mathieu_a0(double q, int terms = 60) {
  std::vector<double> d(terms), e(terms - 1, q);
  for (int m = 0; m < terms; ++m) d[m] = 4.0 * m * m;
  e[0] = std::sqrt(2.0) * q;
  return tridiag_eigenvalue(d, e, 0);
}

// Mathieu characteristic value b_1(q): odd 2pi-periodic solutions in the
// basis sin((2m+1) x).
inline double mathieu_b1(double q, int terms = 60) {
  std::vector<double> d(terms), e(terms - 1, q);
  for (int m = 0; m < terms; ++m) d[m] = (2.0 * m + 1) * (2.0 * m + 1);
  d[0] -= q;
  return tridiag_eigenvalue(d, e, 0);
}

// With x measured in lattice periods and energies in recoil units, the
// lattice -V cos(2 pi x) maps onto the Mathieu equation with u = pi x and
// q = V/2 (sign irrelevant for these two values). The ground band spans
// [a_0, b_1].
inline double ground_band_bottom(double depth) { return mathieu_a0(depth / 2); }
inline double ground_band_width(double depth) { return mathieu_b1(depth / 2) - mathieu_a0(depth / 2); }

// Dressed potentials by diagonalizing the 2x2 position-space Hamiltonian.
struct DressedPair {
  double plus, minus;
};
inline DressedPair dressed_potentials(double x, double depth, double phase, double delta, double omega) {
  const double vu = -depth * std::cos(2 * pi * x + phase);
  const double vd = -depth * std::cos(2 * pi * x - phase);
  Eigen::Matrix2d h;
  h << vu - delta / 2, omega / 2, omega / 2, vd + delta / 2;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(h);
  return {es.eigenvalues()(1), es.eigenvalues()(0)};
}

// Fourier series sum_l c_l exp(-i 2 pi l q) of coefficients starting at l0.
inline cplx fourier(const std::vector<cplx>& c, int l0, double q) {
  cplx s = 0;
  for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * std::polar(1.0, -2 * pi * (l0 + double(k)) * q);
  return s;
}

// Unitary exp(-i H t) of a Hermitian matrix by eigendecomposition.
inline Eigen::MatrixXcd expm_herm(const Eigen::MatrixXcd& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd ph(h.rows());
  for (int i = 0; i < h.rows(); ++i) ph(i) = std::polar(1.0, -es.eigenvalues()(i) * t);
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

// Haar-random unit vector.
template <class Rng>
Eigen::VectorXcd random_unit(int n, Rng& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = {g(rng), g(rng)};
  return v.normalized();
}

// Haar-random SU(2).
template <class Rng>
Eigen::Matrix2cd random_su2(Rng& rng) {
  const Eigen::VectorXcd v = random_unit(2, rng);
  Eigen::Matrix2cd u;
  u << v(0), -std::conj(v(1)), v(1), std::conj(v(0));
  return u;
}

}  // namespace oracle
