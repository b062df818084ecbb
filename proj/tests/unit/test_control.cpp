#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "spinorlat/reachability.hpp"
#include "spinorlat/synthesis.hpp"
#include "spinorlat/tight_binding.hpp"

using namespace spinorlat;
using namespace spinorlat::control;
using spinorlat::tb::Coupling;
using spinorlat::tb::PulseSequence;
using spinorlat::tb::SpinorState;
using testsupport::max_diff;

namespace {

double max_population(const SpinorState& s, int& site, Spin& spin) {
  double best = -1;
  for (int l = s.l_min; l <= s.l_max(); ++l)
    for (Spin sp : {Spin::down, Spin::up})
      if (std::norm(s.get(l, sp)) > best) {
        best = std::norm(s.get(l, sp));
        site = l;
        spin = sp;
      }
  return best;
}

// Equal up to a global phase.
double phase_free_diff(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  const cplx t = (b.adjoint() * a).trace();
  const cplx ph = std::abs(t) > 0 ? t / std::abs(t) : cplx(1);
  return max_diff(a, ph * b);
}

}  // namespace

TEST(Reachability, SingleKetIsReachable) {
  const auto rep = reachability_check(SpinorState::ket(2, Spin::up));
  EXPECT_TRUE(rep.reachable);
  EXPECT_EQ(rep.worst_j, 0);
  EXPECT_EQ(rep.worst_magnitude, 0.0);
}

TEST(Reachability, SameSpinNeighboursAreNot) {
  const double r = 1 / std::sqrt(2.0);
  const SpinorState s(0, {r, 0, r, 0});
  const auto rep = reachability_check(s);
  EXPECT_FALSE(rep.reachable);
  EXPECT_EQ(rep.worst_j, 1);
  EXPECT_NEAR(rep.worst_magnitude, 0.5, 1e-15);
  EXPECT_NEAR(std::abs(rep.overlaps.at(1) - testsupport::translation_overlap(s, 1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(rep.overlaps.at(-1) - testsupport::translation_overlap(s, -1)), 0.0, 1e-15);
}

TEST(Reachability, RejectsUnnormalizedOrEmpty) {
  EXPECT_THROW(reachability_check(SpinorState(0, {1, 1})), std::invalid_argument);
  EXPECT_THROW(reachability_check(SpinorState{}), std::invalid_argument);
}

TEST(Reachability, GeneratedStatesPassAndOverlapsMatchDirectSums) {
  std::mt19937_64 rng(51);
  for (int k = 0; k < 50; ++k) {
    const auto s = testsupport::random_reachable(rng, 2 + k % 6);
    const auto rep = reachability_check(s);
    EXPECT_TRUE(rep.reachable);
    for (const auto& [j, v] : rep.overlaps) EXPECT_NEAR(std::abs(v - testsupport::translation_overlap(s, j)), 0.0, 1e-14);
  }
}

TEST(Localization, KetAlreadyLocalized) {
  EXPECT_TRUE(localization_sequence(SpinorState::ket(0, Spin::up), Spin::up).empty());
}

TEST(Localization, EqualSuperpositionNeedsOneRotation) {
  const double r = 1 / std::sqrt(2.0);
  const SpinorState s(0, {r, r});
  const auto loc = localize(s, Spin::down);
  ASSERT_EQ(loc.rotations.size(), 1u);
  EXPECT_EQ(loc.rotations[0].mode, PairMode::right);
  // By hand: the rotation must send (up, down) = (r, r) onto a single component.
  const Eigen::Vector2cd v = loc.rotations[0].matrix * Eigen::Vector2cd(r, r);
  EXPECT_NEAR(std::norm(v(1)), 1.0, 1e-15);
  EXPECT_EQ(loc.site, 0);
  EXPECT_EQ(loc.spin, Spin::down);
}

TEST(Localization, WrongSpinKetGetsAFlip) {
  const auto loc = localize(SpinorState::ket(3, Spin::up), Spin::down);
  ASSERT_EQ(loc.rotations.size(), 1u);
  const auto out = apply_rotations(SpinorState::ket(3, Spin::up), loc.rotations);
  EXPECT_NEAR(std::norm(out.get(loc.site, Spin::down)), 1.0, 1e-15);
}

TEST(Localization, RandomStatesWithinRotationBound) {
  std::mt19937_64 rng(52);
  for (int k = 0; k < 60; ++k) {
    const int sites = 1 + k % 6;
    const auto s = testsupport::random_reachable(rng, sites);
    for (Spin final_spin : {Spin::down, Spin::up}) {
      const auto loc = localize(s, final_spin);
      EXPECT_LE(static_cast<int>(loc.rotations.size()), 2 * (s.l_max() - s.l_min) + 1);
      const auto out = apply_rotations(s, loc.rotations);
      EXPECT_GE(std::norm(out.get(loc.site, final_spin)), 1 - 1e-10);
      EXPECT_EQ(loc.spin, final_spin);
      int site;
      Spin sp;
      max_population(out, site, sp);
      EXPECT_EQ(site, loc.site);
    }
  }
}

TEST(Localization, UnreachableStateThrows) {
  const double r = 1 / std::sqrt(2.0);
  try {
    localize(SpinorState(0, {0, r, 0, r}), Spin::down);
    FAIL() << "expected UnreachableError";
  } catch (const UnreachableError& e) {
    EXPECT_EQ(e.translation, 1);
    EXPECT_NEAR(e.magnitude, 0.5, 1e-15);
  }
}

TEST(Preparation, DownKetNeedsNothing) {
  const auto p = preparation_sequence(SpinorState::ket(0, Spin::down));
  EXPECT_TRUE(p.rotations.empty());
  EXPECT_EQ(p.site, 0);
}

TEST(Preparation, RoundTripReconstructsTarget) {
  std::mt19937_64 rng(53);
  for (int k = 0; k < 40; ++k) {
    const auto target = testsupport::random_reachable(rng, 1 + k % 6);
    const auto p = preparation_sequence(target);
    const auto built = apply_rotations(SpinorState::ket(p.site, p.spin), p.rotations);
    EXPECT_GE(fidelity(built, target), 1 - 1e-12);
  }
}

TEST(Preparation, FiveSiteTargetLength) {
  std::mt19937_64 rng(54);
  for (int k = 0; k < 10; ++k) {
    const auto target = testsupport::random_reachable(rng, 5);
    EXPECT_LE(preparation_sequence(target).rotations.size(), 9u);
  }
}

TEST(Translation, PiPulsesMoveTheKet) {
  for (int shift : {-3, -1, 0, 1, 2}) {
    const auto rots = translation_rotations(shift);
    EXPECT_EQ(static_cast<int>(rots.size()), 2 * std::abs(shift));
    const auto out = apply_rotations(SpinorState::ket(0, Spin::down), rots);
    EXPECT_NEAR(std::norm(out.get(shift, Spin::down)), 1.0, 1e-15);
  }
}

TEST(Decompose, IdentityIsEmpty) { EXPECT_TRUE(decompose_su2(Eigen::Matrix2cd::Identity()).empty()); }

TEST(Decompose, HadamardTypeUsesAtMostThreeFactors) {
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  const auto steps = decompose_su2(h);
  EXPECT_LE(steps.size(), 3u);
  Eigen::Matrix2cd prod = Eigen::Matrix2cd::Identity();
  for (const auto& s : steps) prod = equatorial_rotation(s.phi, s.theta) * prod;
  EXPECT_LT(phase_free_diff(prod, h), 1e-12);
}

TEST(Decompose, RandomUnitariesReconstructed) {
  std::mt19937_64 rng(55);
  for (int k = 0; k < 200; ++k) {
    Eigen::Matrix2cd u = oracle::random_su2(rng) * std::polar(1.0, 0.3 * k);
    if (k % 7 == 0) u = Eigen::DiagonalMatrix<cplx, 2>(std::polar(1.0, 0.1 * k), std::polar(1.0, -0.2 * k));
    const auto steps = decompose_su2(u);
    EXPECT_LE(steps.size(), 3u);
    Eigen::Matrix2cd prod = Eigen::Matrix2cd::Identity();
    for (const auto& s : steps) {
      EXPECT_GE(s.theta, 0.0);
      EXPECT_LE(s.theta, kPi + 1e-15);
      prod = equatorial_rotation(s.phi, s.theta) * prod;
    }
    EXPECT_LT(phase_free_diff(prod, u), 1e-12);
  }
  EXPECT_THROW(decompose_su2(Eigen::Matrix2cd::Ones()), std::invalid_argument);
}

TEST(Pulses, SegmentsReproduceTheRotation) {
  std::mt19937_64 rng(56);
  for (int k = 0; k < 50; ++k) {
    SU2Rotation rot{oracle::random_su2(rng), k % 2 ? PairMode::left : PairMode::right};
    PulseOptions opt;
    opt.omega_max = 0.5 + k % 3;
    if (k % 4 == 3) opt.gradient = 2.5 - k % 5;
    const auto segs = su2_to_pulses(rot, opt);
    Eigen::Matrix2cd prod = Eigen::Matrix2cd::Identity();
    for (const auto& s : segs) {
      EXPECT_LE(s.omega, opt.omega_max * (1 + 1e-12));
      EXPECT_EQ(s.coupling, rot.mode == PairMode::right ? Coupling::right : Coupling::left);
      if (opt.gradient) {
        const double n = s.duration * std::abs(*opt.gradient) / kTwoPi;
        EXPECT_NEAR(n, std::round(n), 1e-9);
      }
      prod = segment_bond_unitary(s, rot.mode) * prod;
    }
    EXPECT_LT(phase_free_diff(prod, rot.matrix), 1e-12) << k;
  }
}

TEST(Pulses, PhysicalModeDrivesBothBonds) {
  SU2Rotation rot{equatorial_rotation(0.3, kPi / 2), PairMode::left};
  PulseOptions opt;
  opt.physical = true;
  opt.fc_driven = 0.05;
  opt.fc_suppressed = 0.0002;
  const auto segs = su2_to_pulses(rot, opt);
  ASSERT_EQ(segs.size(), 1u);
  EXPECT_EQ(segs[0].coupling, Coupling::both);
  EXPECT_NEAR(segs[0].omega_l / segs[0].omega_r, 250.0, 1e-9);
  EXPECT_LT(phase_free_diff(segment_bond_unitary(segs[0], PairMode::left), rot.matrix), 1e-12);
}

TEST(Synthesis, IdentityTargetIsEmpty) {
  const auto t = SynthesisTarget::from_wannier(SpinorState::ket(0, Spin::down));
  const auto seq = synthesize_unitary(t);
  EXPECT_TRUE(seq.segments.empty());
  const auto rep = verify_map(seq, t, tb::uniform_q_grid(16));
  EXPECT_EQ(rep.worst_fidelity, 1.0);
}

TEST(Synthesis, SpinFlipIsOneRightPiPulse) {
  const auto t = SynthesisTarget::from_wannier(SpinorState::ket(0, Spin::up));
  const auto seq = synthesize_unitary(t);
  ASSERT_EQ(seq.segments.size(), 1u);
  EXPECT_EQ(seq.segments[0].coupling, Coupling::right);
  EXPECT_NEAR(seq.segments[0].omega * seq.segments[0].duration, kPi, 1e-12);
  EXPECT_GE(verify_map(seq, t, tb::uniform_q_grid(128)).worst_fidelity, 1 - 1e-12);
}

TEST(Synthesis, TranslationByOneSiteIsTwoPiPulses) {
  const std::vector<cplx> alpha{0}, beta{1};
  const auto t = SynthesisTarget::from_fourier(1, alpha, beta);
  EXPECT_NEAR(std::abs(t.beta(0.3) - std::polar(1.0, -2 * kPi * 0.3)), 0.0, 1e-15);
  const auto seq = synthesize_unitary(t);
  ASSERT_EQ(seq.segments.size(), 2u);
  EXPECT_EQ(seq.segments[0].coupling, Coupling::right);
  EXPECT_EQ(seq.segments[1].coupling, Coupling::left);
  for (const auto& s : seq.segments) EXPECT_NEAR(s.omega * s.duration, kPi, 1e-12);
  const auto q = tb::uniform_q_grid(128);
  EXPECT_GE(verify_map(seq, t, q).worst_fidelity, 1 - 1e-12);
  // Independent check through the real-space chain.
  const auto out = tb::evolve(SpinorState::ket(0, Spin::down), seq);
  EXPECT_NEAR(std::norm(out.get(1, Spin::down)), 1.0, 1e-12);
}

TEST(Synthesis, RandomTargetsVerify) {
  std::mt19937_64 rng(57);
  const auto q = tb::uniform_q_grid(64);
  for (int k = 0; k < 10; ++k) {
    auto amps = testsupport::random_reachable(rng, 1 + k % 5);
    amps.l_min += k % 3 - 1;
    const auto t = SynthesisTarget::from_wannier(amps);
    const auto res = synthesize(t);
    EXPECT_EQ(res.translation, preparation_sequence(amps).site);
    EXPECT_GE(verify_map(res.sequence, t, q).worst_fidelity, 1 - 1e-9) << k;
  }
}

TEST(Synthesis, GradientTimingVerifies) {
  std::mt19937_64 rng(58);
  const auto t = SynthesisTarget::from_wannier(testsupport::random_reachable(rng, 3));
  SynthesisOptions o;
  o.pulses.gradient = 4.0;
  const auto seq = synthesize_unitary(t, o);
  EXPECT_TRUE(seq.has_gradient());
  const auto rep = verify_map(seq, t, tb::uniform_q_grid(32));
  EXPECT_NEAR(std::min(rep.shift, 1 - rep.shift), 0.0, 1e-9);
  EXPECT_GE(rep.worst_fidelity, 1 - 1e-9);
}

TEST(Synthesis, PhysicalModeLosesFidelityQuadratically) {
  std::mt19937_64 rng(59);
  const auto t = SynthesisTarget::from_wannier(testsupport::random_reachable(rng, 3));
  const auto q = tb::uniform_q_grid(64);
  double last = 0;
  for (double eps : {1e-2, 1e-3}) {
    SynthesisOptions o;
    o.pulses.physical = true;
    o.pulses.fc_driven = 1.0;
    o.pulses.fc_suppressed = eps;
    const auto rep = verify_map(synthesize_unitary(t, o), t, q);
    const double infid = 1 - rep.worst_fidelity;
    EXPECT_GT(infid, 0.0);
    if (last > 0) {
      EXPECT_NEAR(std::log10(last / infid), 2.0, 0.5);
    }
    last = infid;
  }
}

TEST(Synthesis, UnreachableTargetThrows) {
  const double r = 1 / std::sqrt(2.0);
  EXPECT_THROW(synthesize(SynthesisTarget::from_wannier(SpinorState(0, {r, 0, r, 0}))), UnreachableError);
}

TEST(Target, FromSamplesRecoversAmplitudes) {
  std::mt19937_64 rng(60);
  const auto amps = testsupport::random_reachable(rng, 4);
  const auto t = SynthesisTarget::from_wannier(amps);
  const auto q = tb::uniform_q_grid(32);
  std::vector<cplx> a, b;
  for (double x : q) {
    a.push_back(t.alpha(x));
    b.push_back(t.beta(x));
  }
  const auto back = SynthesisTarget::from_samples(a, b);
  EXPECT_LT(max_abs_diff(back.amplitudes, amps), 1e-12);
}

TEST(Target, FromSamplesRejectsUnresolvedSupport) {
  const auto q = tb::uniform_q_grid(8);
  std::vector<cplx> a(8, 0), b;
  // Equal weights on 8 consecutive sites fill the whole grid.
  for (double x : q) {
    cplx s = 0;
    for (int l = 0; l < 8; ++l) s += std::polar(1.0, -2 * kPi * l * x) / std::sqrt(8.0);
    b.push_back(s);
  }
  EXPECT_THROW(SynthesisTarget::from_samples(a, b), std::invalid_argument);
}

TEST(Target, BlockIsSpecialUnitary) {
  std::mt19937_64 rng(61);
  const auto t = SynthesisTarget::from_wannier(testsupport::random_reachable(rng, 3));
  for (double q : {-0.5, -0.2, 0.0, 0.37}) {
    const auto v = t.block(q);
    EXPECT_LT(max_diff(v.adjoint() * v, Eigen::Matrix2cd::Identity()), 1e-12);
    EXPECT_NEAR(std::abs(v.determinant() - cplx(1)), 0.0, 1e-12);
  }
}

TEST(Verify, IdentityAgainstIdentity) {
  const auto t = SynthesisTarget::from_wannier(SpinorState::ket(0, Spin::down));
  const auto rep = verify_map(PulseSequence{}, t, tb::uniform_q_grid(8));
  for (double f : rep.fidelity) EXPECT_EQ(f, 1.0);
}
