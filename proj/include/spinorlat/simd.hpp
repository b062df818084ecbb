#pragma once

#include <cstddef>
#include <span>

#include "spinorlat/types.hpp"

namespace spinorlat::simd {

// Row-major 2x2 complex matrix acting on (first, second) of a pair.
struct Mat2c {
  cplx m00, m01, m10, m11;
};

enum class Backend { scalar, avx2 };

// Applies m to every consecutive pair (x[2k], x[2k+1]). x.size() must be even.
void rotate_pairs(std::span<cplx> x, const Mat2c& m);

// Applies mats[k] to pair k. x.size() must equal 2 * mats.size().
void apply_blocks(std::span<cplx> x, std::span<const Mat2c> mats);

// sum_k conj(a[k]) * b[k]
cplx conj_dot(std::span<const cplx> a, std::span<const cplx> b);

// sum_k a[k] * b[k]
double real_dot(std::span<const double> a, std::span<const double> b);

Backend active_backend();
bool backend_available(Backend b);
// Throws std::invalid_argument if the backend is not usable on this CPU.
void set_backend(Backend b);
const char* backend_name(Backend b);

}  // namespace spinorlat::simd
