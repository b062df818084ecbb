#include "spinorlat/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinorlat/reachability.hpp"
#include "spinorlat/tight_binding.hpp"

namespace spinorlat::control {

namespace {

cplx fourier(const tb::SpinorState& s, Spin spin, double q) {
  cplx acc = 0;
  for (int l = s.l_min; l <= s.l_max(); ++l) acc += s.get(l, spin) * std::polar(1.0, -kTwoPi * l * q);
  return acc;
}

// Fourier image of the open-chain state at q, as an (up, down) vector.
Eigen::Vector2cd state_column(const tb::SpinorState& s, double q) {
  return {fourier(s, Spin::up, q), fourier(s, Spin::down, q)};
}

}  // namespace

SynthesisTarget SynthesisTarget::from_wannier(tb::SpinorState amps) {
  SynthesisTarget t{std::move(amps)};
  t.validate();
  return t;
}

SynthesisTarget SynthesisTarget::from_fourier(int l_min, std::span<const cplx> alpha, std::span<const cplx> beta) {
  const std::size_t n = std::max(alpha.size(), beta.size());
  if (n == 0) throw std::invalid_argument("synthesis target: empty Fourier data");
  tb::SpinorState s(l_min, std::vector<cplx>(2 * n, cplx{0, 0}));
  for (std::size_t i = 0; i < alpha.size(); ++i) s.amps[2 * i + 1] = alpha[i];
  for (std::size_t i = 0; i < beta.size(); ++i) s.amps[2 * i] = beta[i];
  return from_wannier(std::move(s));
}

SynthesisTarget SynthesisTarget::from_samples(std::span<const cplx> alpha, std::span<const cplx> beta, double tol) {
  if (alpha.size() != beta.size() || alpha.size() < 2) throw std::invalid_argument("synthesis target: sample arrays must match and hold >= 2 points");
  const int n = static_cast<int>(alpha.size());
  for (int j = 0; j < n; ++j) {
    const double norm = std::norm(alpha[static_cast<std::size_t>(j)]) + std::norm(beta[static_cast<std::size_t>(j)]);
    if (std::abs(norm - 1.0) > 1e-9) throw std::invalid_argument("synthesis target: |alpha|^2 + |beta|^2 != 1 at sample " + std::to_string(j));
  }
  // Residues l mod n of the real-space amplitudes.
  std::vector<cplx> up(static_cast<std::size_t>(n)), dn(static_cast<std::size_t>(n));
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int l = 0; l < n; ++l) {
    cplx a = 0, b = 0;
    for (int j = 0; j < n; ++j) {
      const double q = -0.5 + static_cast<double>(j) / n;
      const cplx w = std::polar(1.0, kTwoPi * l * q);
      a += alpha[static_cast<std::size_t>(j)] * w;
      b += beta[static_cast<std::size_t>(j)] * w;
    }
    up[static_cast<std::size_t>(l)] = a / static_cast<double>(n);
    dn[static_cast<std::size_t>(l)] = b / static_cast<double>(n);
    used[static_cast<std::size_t>(l)] = std::abs(up[static_cast<std::size_t>(l)]) > tol || std::abs(dn[static_cast<std::size_t>(l)]) > tol;
  }
  if (std::none_of(used.begin(), used.end(), [](bool u) { return u; })) throw std::invalid_argument("synthesis target: all amplitudes vanish");
  // The occupied residues form a circular window; its complement is the
  // longest circular run of empty residues.
  int best_gap = 0, best_end = 0;
  for (int start = 0; start < n; ++start) {
    if (used[static_cast<std::size_t>(start)]) continue;
    int len = 0;
    while (len < n && !used[static_cast<std::size_t>((start + len) % n)]) ++len;
    if (len > best_gap) {
      best_gap = len;
      best_end = (start + len) % n;
    }
  }
  const int width = n - best_gap;
  if (width > n / 2) {
    throw std::invalid_argument("synthesis target: Fourier support spans " + std::to_string(width) + " of " +
                                std::to_string(n) + " sites; not a finite-support map at this resolution");
  }
  int first = best_end;
  // Pick the representative of the window closest to the origin.
  const double mid = first + 0.5 * (width - 1);
  if (mid > 0.5 * n) first -= n;
  tb::SpinorState s(first, std::vector<cplx>(static_cast<std::size_t>(2 * width), cplx{0, 0}));
  for (int k = 0; k < width; ++k) {
    const int r = ((first + k) % n + n) % n;
    s.amps[static_cast<std::size_t>(2 * k)] = dn[static_cast<std::size_t>(r)];
    s.amps[static_cast<std::size_t>(2 * k + 1)] = up[static_cast<std::size_t>(r)];
  }
  s.trim(tol);
  return from_wannier(std::move(s));
}

cplx SynthesisTarget::alpha(double q) const { return fourier(amplitudes, Spin::up, q); }
cplx SynthesisTarget::beta(double q) const { return fourier(amplitudes, Spin::down, q); }

Eigen::Matrix2cd SynthesisTarget::block(double q) const {
  const cplx a = alpha(q), b = beta(q);
  Eigen::Matrix2cd v;
  v << std::conj(b), a, -std::conj(a), b;
  return v;
}

void SynthesisTarget::validate() const {
  if (amplitudes.empty()) throw std::invalid_argument("synthesis target: no amplitudes");
  if (std::abs(amplitudes.norm2() - 1.0) > 1e-10) throw std::invalid_argument("synthesis target: amplitudes are not normalized");
}

SynthesisResult synthesize(const SynthesisTarget& target, const SynthesisOptions& options) {
  target.validate();
  const ReachabilityReport rep = reachability_check(target.amplitudes, options.reach_tol);
  if (!rep.reachable) {
    throw UnreachableError(rep.worst_j, rep.worst_magnitude,
                           "target is not reachable: |<psi|T_" + std::to_string(rep.worst_j) +
                               "|psi>| = " + std::to_string(rep.worst_magnitude));
  }
  const Preparation prep = preparation_sequence(target.amplitudes, Spin::down, options.reach_tol);
  SynthesisResult res;
  res.translation = prep.site;
  res.rotations = translation_rotations(prep.site);
  res.rotations.insert(res.rotations.end(), prep.rotations.begin(), prep.rotations.end());
  res.rotation_count = static_cast<int>(prep.rotations.size());
  for (const auto& r : res.rotations) {
    const auto segs = su2_to_pulses(r, options.pulses);
    res.sequence.segments.insert(res.sequence.segments.end(), segs.begin(), segs.end());
  }

  if (options.fix_phase && !res.sequence.segments.empty()) {
    // The realised column differs from the target by a q-independent phase.
    // A z rotation diag(exp(-i d), exp(i d)) acts the same on R and L bonds,
    // so it is folded into the first rotation and the sequence recompiled.
    const double q0 = 0.1234567;
    const std::vector<double> qs{q0};
    const Eigen::Matrix2cd u = realised_blocks(res.sequence, qs).front();
    const cplx ov = std::conj(target.alpha(q0)) * u(0, 1) + std::conj(target.beta(q0)) * u(1, 1);
    double d = -std::arg(ov);
    d = std::remainder(d, kPi);
    if (d <= -0.5 * kPi) d += kPi;
    if (std::abs(d) > 1e-12) {
      Eigen::Matrix2cd z;
      z << std::polar(1.0, -d), 0, 0, std::polar(1.0, d);
      res.rotations.front().matrix = res.rotations.front().matrix * z;
      res.sequence.segments.clear();
      for (const auto& r : res.rotations) {
        const auto segs = su2_to_pulses(r, options.pulses);
        res.sequence.segments.insert(res.sequence.segments.end(), segs.begin(), segs.end());
      }
    }
  }
  return res;
}

tb::PulseSequence synthesize_unitary(const SynthesisTarget& target, const SynthesisOptions& options) {
  return synthesize(target, options).sequence;
}

std::vector<Eigen::Matrix2cd> realised_blocks(const tb::PulseSequence& seq, std::span<const double> q,
                                              double* shift_out, bool* real_space) {
  if (real_space) *real_space = false;
  if (!seq.has_gradient()) {
    if (shift_out) *shift_out = 0;
    return tb::evolve_bloch(seq, q).blocks;
  }
  if (tb::block_map_supported(seq)) {
    const tb::BlochBlockMap m = tb::full_block_map(seq, q);
    if (shift_out) *shift_out = m.shift;
    return m.blocks;
  }
  // Gradient with both bonds driven: evolve the two site-0 kets on the open
  // chain and Fourier transform.
  if (real_space) *real_space = true;
  if (shift_out) *shift_out = tb::gradient_frame(seq).shift();
  const auto out = tb::evolve_many({tb::SpinorState::ket(0, Spin::up), tb::SpinorState::ket(0, Spin::down)}, seq);
  std::vector<Eigen::Matrix2cd> blocks;
  blocks.reserve(q.size());
  for (double qq : q) {
    Eigen::Matrix2cd b;
    b.col(0) = state_column(out[0], qq);
    b.col(1) = state_column(out[1], qq);
    blocks.push_back(b);
  }
  return blocks;
}

VerificationReport verify_map(const tb::PulseSequence& seq, const SynthesisTarget& target, std::span<const double> q) {
  VerificationReport rep;
  rep.q.assign(q.begin(), q.end());
  const auto blocks = realised_blocks(seq, q, &rep.shift, &rep.real_space);
  const bool shifted = std::min(rep.shift, 1.0 - rep.shift) > 1e-9;
  rep.worst_fidelity = 1.0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    const double f = shifted ? 0.0 : 0.5 * std::abs((target.block(q[j]).adjoint() * blocks[j]).trace());
    rep.fidelity.push_back(f);
    if (j == 0 || f < rep.worst_fidelity) {
      rep.worst_fidelity = f;
      rep.worst_q = q[j];
    }
  }
  return rep;
}

}  // namespace spinorlat::control
