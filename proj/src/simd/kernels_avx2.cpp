#include <immintrin.h>

#include "kernels.hpp"

namespace spinorlat::simd::detail::avx2 {

namespace {

// Two complex products at once: lanes hold (re0, im0, re1, im1).
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

// Pair (a, b) lives in one register; columns are [m00, m10] and [m01, m11].
inline __m256d apply2(__m256d v, __m256d col0, __m256d col1) {
  const __m256d aa = _mm256_permute2f128_pd(v, v, 0x00);
  const __m256d bb = _mm256_permute2f128_pd(v, v, 0x11);
  return _mm256_add_pd(cmul(aa, col0), cmul(bb, col1));
}

inline __m256d load_col(const double* top, const double* bottom) {
  return _mm256_insertf128_pd(_mm256_castpd128_pd256(_mm_loadu_pd(top)), _mm_loadu_pd(bottom), 1);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void rotate_pairs(double* x, std::size_t n_pairs, const double* m) {
  const __m256d col0 = load_col(m + 0, m + 4);
  const __m256d col1 = load_col(m + 2, m + 6);
  std::size_t k = 0;
  for (; k + 2 <= n_pairs; k += 2) {
    const __m256d v0 = _mm256_loadu_pd(x + 4 * k);
    const __m256d v1 = _mm256_loadu_pd(x + 4 * k + 4);
    _mm256_storeu_pd(x + 4 * k, apply2(v0, col0, col1));
    _mm256_storeu_pd(x + 4 * k + 4, apply2(v1, col0, col1));
  }
  for (; k < n_pairs; ++k) {
    _mm256_storeu_pd(x + 4 * k, apply2(_mm256_loadu_pd(x + 4 * k), col0, col1));
  }
}

void apply_blocks(double* x, std::size_t n_pairs, const double* mats) {
  for (std::size_t k = 0; k < n_pairs; ++k) {
    const double* m = mats + 8 * k;
    const __m256d v = _mm256_loadu_pd(x + 4 * k);
    _mm256_storeu_pd(x + 4 * k, apply2(v, load_col(m + 0, m + 4), load_col(m + 2, m + 6)));
  }
}

void conj_dot(const double* a, const double* b, std::size_t n, double* out) {
  // acc_re collects (ar*br, ai*bi) lanes, acc_im collects (ar*bi, ai*br).
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d va = _mm256_loadu_pd(a + 2 * k);
    const __m256d vb = _mm256_loadu_pd(b + 2 * k);
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);
    acc_im = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0x5), acc_im);
  }
  double re = hsum(acc_re);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc_im);
  double im = (lanes[0] - lanes[1]) + (lanes[2] - lanes[3]);
  for (; k < n; ++k) {
    const double ar = a[2 * k], ai = a[2 * k + 1], br = b[2 * k], bi = b[2 * k + 1];
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  out[0] = re;
  out[1] = im;
}

double real_dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4), acc1);
  }
  for (; k + 4 <= n; k += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) s += a[k] * b[k];
  return s;
}

}  // namespace spinorlat::simd::detail::avx2
