#include <atomic>
#include <stdexcept>

#include "kernels.hpp"
#include "spinorlat/simd.hpp"

namespace spinorlat::simd {

namespace {

using detail::KernelTable;

constexpr KernelTable kScalar{detail::scalar::rotate_pairs, detail::scalar::apply_blocks,
                              detail::scalar::conj_dot, detail::scalar::real_dot};

#if defined(SPINORLAT_HAVE_AVX2_TU)
constexpr KernelTable kAvx2{detail::avx2::rotate_pairs, detail::avx2::apply_blocks,
                            detail::avx2::conj_dot, detail::avx2::real_dot};
#endif

bool cpu_has_avx2() {
#if defined(SPINORLAT_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend detect() { return cpu_has_avx2() ? Backend::avx2 : Backend::scalar; }

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{detect()};
  return b;
}

const KernelTable& table() {
#if defined(SPINORLAT_HAVE_AVX2_TU)
  if (current().load(std::memory_order_relaxed) == Backend::avx2) return kAvx2;
#endif
  return kScalar;
}

inline double* raw(cplx* p) { return reinterpret_cast<double*>(p); }
inline const double* raw(const cplx* p) { return reinterpret_cast<const double*>(p); }

}  // namespace

void rotate_pairs(std::span<cplx> x, const Mat2c& m) {
  if (x.size() % 2 != 0) throw std::invalid_argument("rotate_pairs: odd length");
  table().rotate_pairs(raw(x.data()), x.size() / 2, raw(&m.m00));
}

void apply_blocks(std::span<cplx> x, std::span<const Mat2c> mats) {
  if (x.size() != 2 * mats.size()) throw std::invalid_argument("apply_blocks: size mismatch");
  if (mats.empty()) return;
  table().apply_blocks(raw(x.data()), mats.size(), raw(&mats.front().m00));
}

cplx conj_dot(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw std::invalid_argument("conj_dot: size mismatch");
  double out[2];
  table().conj_dot(raw(a.data()), raw(b.data()), a.size(), out);
  return {out[0], out[1]};
}

double real_dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("real_dot: size mismatch");
  return table().real_dot(a.data(), b.data(), a.size());
}

Backend active_backend() { return current().load(); }

bool backend_available(Backend b) { return b == Backend::scalar || cpu_has_avx2(); }

void set_backend(Backend b) {
  if (!backend_available(b)) throw std::invalid_argument("simd backend not available on this CPU");
  current().store(b);
}

const char* backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

}  // namespace spinorlat::simd
