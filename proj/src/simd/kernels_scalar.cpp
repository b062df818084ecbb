#include "kernels.hpp"

namespace spinorlat::simd::detail::scalar {

namespace {

// (ar + i ai) * (br + i bi), written out so no libgcc complex helper is used.
inline void cmul_acc(double ar, double ai, double br, double bi, double& re, double& im) {
  re += ar * br - ai * bi;
  im += ar * bi + ai * br;
}

inline void apply2(double* p, const double* m) {
  const double ar = p[0], ai = p[1], br = p[2], bi = p[3];
  double r0 = 0, i0 = 0, r1 = 0, i1 = 0;
  cmul_acc(m[0], m[1], ar, ai, r0, i0);
  cmul_acc(m[2], m[3], br, bi, r0, i0);
  cmul_acc(m[4], m[5], ar, ai, r1, i1);
  cmul_acc(m[6], m[7], br, bi, r1, i1);
  p[0] = r0;
  p[1] = i0;
  p[2] = r1;
  p[3] = i1;
}

}  // namespace

void rotate_pairs(double* x, std::size_t n_pairs, const double* m) {
  for (std::size_t k = 0; k < n_pairs; ++k) apply2(x + 4 * k, m);
}

void apply_blocks(double* x, std::size_t n_pairs, const double* mats) {
  for (std::size_t k = 0; k < n_pairs; ++k) apply2(x + 4 * k, mats + 8 * k);
}

void conj_dot(const double* a, const double* b, std::size_t n, double* out) {
  double re = 0, im = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double ar = a[2 * k], ai = a[2 * k + 1], br = b[2 * k], bi = b[2 * k + 1];
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  out[0] = re;
  out[1] = im;
}

double real_dot(const double* a, const double* b, std::size_t n) {
  double s = 0;
  for (std::size_t k = 0; k < n; ++k) s += a[k] * b[k];
  return s;
}

}  // namespace spinorlat::simd::detail::scalar
