#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "spinorlat/simd.hpp"

using namespace spinorlat;

namespace {

struct BackendGuard {
  simd::Backend saved = simd::active_backend();
  ~BackendGuard() { simd::set_backend(saved); }
};

std::vector<cplx> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

simd::Mat2c random_mat(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {{g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}};
}

}  // namespace

TEST(Kernels, ScalarRotatePairsMatchesHandArithmetic) {
  BackendGuard guard;
  simd::set_backend(simd::Backend::scalar);
  std::vector<cplx> x{{1, 2}, {3, -1}, {0, 1}, {-2, 0}};
  const simd::Mat2c m{{0, 1}, {2, 0}, {1, 1}, {0, -1}};
  auto expect = x;
  for (int k = 0; k < 2; ++k) {
    const cplx a = x[2 * k], b = x[2 * k + 1];
    expect[2 * k] = m.m00 * a + m.m01 * b;
    expect[2 * k + 1] = m.m10 * a + m.m11 * b;
  }
  simd::rotate_pairs(x, m);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x[i], expect[i]);
}

class BackendEquivalence : public ::testing::TestWithParam<std::size_t> {
 protected:
  void SetUp() override {
    if (!simd::backend_available(simd::Backend::avx2)) GTEST_SKIP() << "AVX2 not available on this CPU";
  }
};

TEST_P(BackendEquivalence, RotatePairs) {
  BackendGuard guard;
  std::mt19937_64 rng(GetParam());
  const auto x0 = random_vec(2 * GetParam(), rng);
  const auto m = random_mat(rng);
  auto a = x0, b = x0;
  simd::set_backend(simd::Backend::scalar);
  simd::rotate_pairs(a, m);
  simd::set_backend(simd::Backend::avx2);
  simd::rotate_pairs(b, m);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(std::abs(a[i] - b[i]), 0.0, 1e-14 * (1 + std::abs(a[i])));
}

TEST_P(BackendEquivalence, ApplyBlocks) {
  BackendGuard guard;
  std::mt19937_64 rng(100 + GetParam());
  const auto x0 = random_vec(2 * GetParam(), rng);
  std::vector<simd::Mat2c> mats;
  for (std::size_t k = 0; k < GetParam(); ++k) mats.push_back(random_mat(rng));
  auto a = x0, b = x0;
  simd::set_backend(simd::Backend::scalar);
  simd::apply_blocks(a, mats);
  simd::set_backend(simd::Backend::avx2);
  simd::apply_blocks(b, mats);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(std::abs(a[i] - b[i]), 0.0, 1e-14 * (1 + std::abs(a[i])));
}

TEST_P(BackendEquivalence, Dots) {
  BackendGuard guard;
  std::mt19937_64 rng(200 + GetParam());
  const std::size_t n = 2 * GetParam() + GetParam() % 3;
  const auto u = random_vec(n, rng), v = random_vec(n, rng);
  std::vector<double> r(n), s(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = u[i].real();
    s[i] = v[i].imag();
  }
  simd::set_backend(simd::Backend::scalar);
  const cplx c1 = simd::conj_dot(u, v);
  const double d1 = simd::real_dot(r, s);
  simd::set_backend(simd::Backend::avx2);
  const cplx c2 = simd::conj_dot(u, v);
  const double d2 = simd::real_dot(r, s);
  const double scale = 1e-13 * (1 + static_cast<double>(n));
  EXPECT_NEAR(std::abs(c1 - c2), 0.0, scale);
  EXPECT_NEAR(d1, d2, scale);

  cplx ref = 0;
  for (std::size_t i = 0; i < n; ++i) ref += std::conj(u[i]) * v[i];
  EXPECT_NEAR(std::abs(c1 - ref), 0.0, scale);
}

INSTANTIATE_TEST_SUITE_P(Sizes, BackendEquivalence, ::testing::Values(0, 1, 2, 3, 4, 5, 7, 8, 16, 31, 64, 257));

TEST(Kernels, RejectsMismatchedSizes) {
  std::vector<cplx> odd(3);
  EXPECT_THROW(simd::rotate_pairs(odd, simd::Mat2c{}), std::invalid_argument);
  std::vector<cplx> x(4);
  std::vector<simd::Mat2c> mats(3);
  EXPECT_THROW(simd::apply_blocks(x, mats), std::invalid_argument);
  std::vector<cplx> y(5);
  EXPECT_THROW(simd::conj_dot(x, y), std::invalid_argument);
}

TEST(Kernels, BackendSelection) {
  BackendGuard guard;
  EXPECT_TRUE(simd::backend_available(simd::Backend::scalar));
  simd::set_backend(simd::Backend::scalar);
  EXPECT_EQ(simd::active_backend(), simd::Backend::scalar);
  EXPECT_STREQ(simd::backend_name(simd::Backend::scalar), "scalar");
  EXPECT_STREQ(simd::backend_name(simd::Backend::avx2), "avx2");
  if (!simd::backend_available(simd::Backend::avx2)) {
    EXPECT_THROW(simd::set_backend(simd::Backend::avx2), std::invalid_argument);
  }
}
