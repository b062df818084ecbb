#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "spinorlat/bloch.hpp"
#include "spinorlat/tight_binding.hpp"

using namespace spinorlat;
using namespace spinorlat::tb;
using testsupport::max_diff;

namespace {

// Quasimomentum block of a translation-invariant real-space generator, read
// off from the couplings of the site-0 kets: H(q)_{s',s} = sum_l
// exp(-i 2 pi l q) <l,s'|H|0,s>.
Eigen::Matrix2cd block_from_real_space(const ControlSegment& seg, double q) {
  const int lo = -3, hi = 3;
  const auto h = build_tb_generator(seg, lo, hi, Boundary::open());
  auto idx = [&](int l, Spin s) { return 2 * (l - lo) + static_cast<int>(s); };
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  const Spin order[2] = {Spin::up, Spin::down};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int l = lo; l <= hi; ++l)
        m(a, b) += std::polar(1.0, -2 * kPi * l * q) * h(idx(l, order[a]), idx(0, order[b]));
  return m;
}

}  // namespace

TEST(BlochGenerator, MatchesRealSpaceCouplings) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 20; ++k) {
    const auto s = testsupport::random_segment(rng, {1.5, 1.0, 1.0, 0.0, false});
    for (double q : {-0.5, -0.3, 0.0, 0.125, 0.41}) EXPECT_LT(max_diff(bloch_generator(s, q), block_from_real_space(s, q)), 1e-14);
  }
}

TEST(BlochGenerator, ZeroQuasimomentumIsThePairGenerator) {
  ControlSegment s{1.0, 0.9, 0.7, 0.3, Coupling::right};
  const auto h = build_tb_generator(s, 0, 0, Boundary::open());
  Eigen::Matrix2cd pair;
  pair << h(1, 1), h(1, 0), h(0, 1), h(0, 0);
  EXPECT_LT(max_diff(bloch_generator(s, 0.0), pair), 1e-15);
}

TEST(BlochGenerator, RejectsForce) {
  ControlSegment s{1.0, 1.0};
  s.force = 0.5;
  EXPECT_THROW(bloch_generator(s, 0.0), std::invalid_argument);
}

TEST(Expm2, MatchesEigendecomposition) {
  std::mt19937_64 rng(22);
  std::normal_distribution<double> g;
  for (int k = 0; k < 50; ++k) {
    Eigen::Matrix2cd h;
    const cplx off{g(rng), g(rng)};
    h << g(rng), off, std::conj(off), g(rng);
    if (k == 0) h.setZero();
    if (k == 1) h << 0.3, 0, 0, 0.3;
    const double t = 3 * std::abs(g(rng));
    EXPECT_LT(max_diff(expm_hermitian2(h, t), oracle::expm_herm(h, t)), 1e-13);
  }
}

TEST(BlochMap, IdentitySequence) {
  const auto q = uniform_q_grid(16);
  const auto map = evolve_bloch(PulseSequence{}, q);
  for (std::size_t j = 0; j < q.size(); ++j) {
    EXPECT_EQ(map.alpha(j), cplx(0));
    EXPECT_EQ(map.beta(j), cplx(1));
  }
  EXPECT_EQ(map.shift, 0.0);
}

TEST(BlochMap, RightPiPulseSwapsWithConstantPhase) {
  PulseSequence seq;
  seq.segments.push_back({kPi, 1.0, 0.4, 0.0, Coupling::right});
  const auto q = uniform_q_grid(32);
  const auto map = evolve_bloch(seq, q);
  for (std::size_t j = 0; j < q.size(); ++j) {
    EXPECT_NEAR(std::abs(map.beta(j)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(map.alpha(j) - map.alpha(0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(map.alpha(j)), 1.0, 1e-15);
  }
}

TEST(BlochMap, FourierSumsOfRealSpaceAmplitudes) {
  std::mt19937_64 rng(23);
  const auto q = uniform_q_grid(64);
  for (int trial = 0; trial < 10; ++trial) {
    const auto seq = testsupport::random_sequence(rng, 6, {1.5, 1.5, 1.0, 0.0, false});
    const auto map = evolve_bloch(seq, q);
    const auto cu = evolve(SpinorState::ket(0, Spin::up), seq);
    const auto cd = evolve(SpinorState::ket(0, Spin::down), seq);
    for (std::size_t j = 0; j < q.size(); ++j)
      EXPECT_LT(max_diff(map.blocks[j], testsupport::blocks_from_columns(cu, cd, q[j])), 1e-9);
  }
}

TEST(BlochMap, SpinorEvolutionMatchesBlocks) {
  std::mt19937_64 rng(24);
  const auto q = uniform_q_grid(8);
  const auto seq = testsupport::random_sequence(rng, 5, {1.0, 1.0, 1.0, 0.0, false});
  BlochSpinors in{q, {}};
  for (std::size_t j = 0; j < q.size(); ++j) in.amps.push_back(oracle::random_unit(2, rng));
  const auto out = evolve_bloch(in, seq);
  const auto map = evolve_bloch(seq, q);
  for (std::size_t j = 0; j < q.size(); ++j) EXPECT_LT((out.amps[j] - map.blocks[j] * in.amps[j]).norm(), 1e-14);
}

TEST(BlochMap, RejectsGradientSegments) {
  PulseSequence seq;
  seq.segments.push_back({1.0, 1.0});
  seq.segments.back().force = 1.0;
  EXPECT_THROW(evolve_bloch(seq, uniform_q_grid(4)), std::invalid_argument);
}

TEST(BlochMap, DeterminantCarriesGamma) {
  std::mt19937_64 rng(25);
  const auto seq = testsupport::random_sequence(rng, 4, {1.0, 1.0, 1.0, 0.0, false});
  const auto map = evolve_bloch(seq, uniform_q_grid(8));
  for (const auto& b : map.blocks) EXPECT_NEAR(std::abs(b.determinant() - std::polar(1.0, 2 * map.gamma)), 0.0, 1e-13);
}

TEST(Relabel, CommensurateShiftIsIndexRotation) {
  BlochBlockMap m;
  m.q = uniform_q_grid(8);
  for (std::size_t j = 0; j < 8; ++j) m.blocks.push_back(Eigen::Matrix2cd::Identity() * cplx(double(j)));
  m.shift = 0.25;
  ASSERT_TRUE(m.commensurate());
  const auto r = m.relabeled();
  EXPECT_FALSE(r.interpolated);
  for (std::size_t j = 0; j < 8; ++j) EXPECT_EQ(r.blocks[j](0, 0), cplx(double((j + 2) % 8)));
}

TEST(Relabel, IncommensurateShiftInterpolatesFiniteSupportExactly) {
  std::mt19937_64 rng(26);
  std::normal_distribution<double> g;
  std::vector<Eigen::Matrix2cd> coef(3);
  for (auto& c : coef) c = Eigen::Matrix2cd::NullaryExpr([&](Eigen::Index, Eigen::Index) { return cplx(g(rng), g(rng)); });
  auto f = [&](double q) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    for (int l = -1; l <= 1; ++l) m += coef[l + 1] * std::polar(1.0, -2 * kPi * l * q);
    return m;
  };
  BlochBlockMap m;
  m.q = uniform_q_grid(16);
  for (double q : m.q) m.blocks.push_back(f(q));
  m.shift = 0.1234;
  ASSERT_FALSE(m.commensurate());
  const auto r = m.relabeled();
  EXPECT_TRUE(r.interpolated);
  for (std::size_t j = 0; j < m.q.size(); ++j) EXPECT_LT(max_diff(r.blocks[j], f(m.q[j] + m.shift)), 1e-12);
}

TEST(Grid, UniformQGrid) {
  const auto q = uniform_q_grid(4);
  ASSERT_EQ(q.size(), 4u);
  EXPECT_DOUBLE_EQ(q[0], -0.5);
  EXPECT_DOUBLE_EQ(q[2], 0.0);
  EXPECT_THROW(uniform_q_grid(0), std::invalid_argument);
}
