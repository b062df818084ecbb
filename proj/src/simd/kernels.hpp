#pragma once

// Raw-pointer kernel signatures shared by the scalar and AVX2 translation
// units. Complex arrays are interleaved (re, im) doubles; a Mat2c is eight
// doubles in row-major order. The AVX2 unit includes nothing but this header
// and <immintrin.h> so no inline library code gets compiled for AVX2 and
// merged into the scalar path by the linker.

#include <cstddef>

namespace spinorlat::simd::detail {

struct KernelTable {
  void (*rotate_pairs)(double* x, std::size_t n_pairs, const double* m);
  void (*apply_blocks)(double* x, std::size_t n_pairs, const double* mats);
  void (*conj_dot)(const double* a, const double* b, std::size_t n, double* out);
  double (*real_dot)(const double* a, const double* b, std::size_t n);
};

namespace scalar {
void rotate_pairs(double* x, std::size_t n_pairs, const double* m);
void apply_blocks(double* x, std::size_t n_pairs, const double* mats);
void conj_dot(const double* a, const double* b, std::size_t n, double* out);
double real_dot(const double* a, const double* b, std::size_t n);
}  // namespace scalar

namespace avx2 {
void rotate_pairs(double* x, std::size_t n_pairs, const double* m);
void apply_blocks(double* x, std::size_t n_pairs, const double* mats);
void conj_dot(const double* a, const double* b, std::size_t n, double* out);
double real_dot(const double* a, const double* b, std::size_t n);
}  // namespace avx2

}  // namespace spinorlat::simd::detail
