#include "spinorlat/tight_binding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spinorlat::tb {

namespace {

void check_range(int l_min, int l_max, Boundary boundary) {
  if (l_max < l_min) throw std::invalid_argument("empty site range");
  if (boundary.periodic()) {
    if (boundary.ring_sites < 1) throw std::invalid_argument("ring must have at least one site");
    if (l_max - l_min + 1 != boundary.ring_sites)
      throw std::invalid_argument("periodic range must cover exactly the ring");
  }
}

// Sub-well distance reachable with amplitude above ~1e-13 when every bond
// carries at most rate/2 for time tau: smallest n with x^n / n! < 1e-13.
int spread_guess(double rate, double tau) {
  const double x = 0.5 * std::abs(rate) * tau;
  double term = 1.0;
  int n = 0;
  while (term >= 1e-13 && n < 100000) {
    ++n;
    term *= x / n;
  }
  return n;
}

int initial_pad(const ControlSegment& seg) {
  const double r = seg.rate_right(), l = seg.rate_left();
  if (l == 0) return 1;
  if (r == 0) return 2;
  return spread_guess(std::max(std::abs(r), std::abs(l)), seg.duration) / 2 + 2;
}

Eigen::MatrixXcd exp_minus_i(const Eigen::MatrixXcd& h, double tau) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver failed");
  Eigen::VectorXcd ph(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) ph[i] = std::polar(1.0, -es.eigenvalues()[i] * tau);
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

// Columns hold the states on [lo, hi].
struct Batch {
  int lo = 0, hi = -1;
  Eigen::MatrixXcd amps;
};

Batch gather(const std::vector<SpinorState>& states) {
  Batch b;
  bool first = true;
  for (const auto& s : states) {
    if (s.empty()) continue;
    if (first) {
      b.lo = s.l_min;
      b.hi = s.l_max();
      first = false;
    } else {
      b.lo = std::min(b.lo, s.l_min);
      b.hi = std::max(b.hi, s.l_max());
    }
  }
  if (first) throw std::invalid_argument("evolve: all input states are empty");
  b.amps.resize(2 * (b.hi - b.lo + 1), static_cast<Eigen::Index>(states.size()));
  for (std::size_t k = 0; k < states.size(); ++k) {
    const auto w = states[k].window(b.lo, b.hi);
    b.amps.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const Eigen::VectorXcd>(w.data(), static_cast<Eigen::Index>(w.size()));
  }
  return b;
}

double edge_max(const Eigen::MatrixXcd& a) {
  return std::max(a.topRows(2).cwiseAbs().maxCoeff(), a.bottomRows(2).cwiseAbs().maxCoeff());
}

void evolve_open(Batch& b, const ControlSegment& seg, const EvolveOptions& opt) {
  int pad = initial_pad(seg);
  for (;;) {
    const int lo = b.lo - pad, hi = b.hi + pad;
    if (hi - lo + 1 > opt.max_sites) {
      throw LeakageError("open-chain evolution needs more than " + std::to_string(opt.max_sites) +
                         " sites to keep the boundary amplitude below " + std::to_string(opt.boundary_tol));
    }
    Eigen::MatrixXcd padded = Eigen::MatrixXcd::Zero(2 * (hi - lo + 1), b.amps.cols());
    padded.middleRows(2 * pad, b.amps.rows()) = b.amps;
    const Eigen::MatrixXcd u = segment_propagator(seg, lo, hi, Boundary::open());
    Eigen::MatrixXcd out = u * padded;
    if (edge_max(out) <= opt.boundary_tol) {
      b.lo = lo;
      b.hi = hi;
      b.amps = std::move(out);
      return;
    }
    pad += 2;
  }
}

void trim_batch(Batch& b, double tol) {
  const int n = b.hi - b.lo + 1;
  auto small = [&](int i) { return b.amps.middleRows(2 * i, 2).cwiseAbs().maxCoeff() <= tol; };
  int first = 0, last = n - 1;
  while (first < last && small(first)) ++first;
  while (last > first && small(last)) --last;
  b.amps = b.amps.middleRows(2 * first, 2 * (last - first + 1)).eval();
  b.lo += first;
  b.hi = b.lo + (last - first);
}

std::vector<SpinorState> scatter(const Batch& b, double tol) {
  std::vector<SpinorState> out;
  out.reserve(static_cast<std::size_t>(b.amps.cols()));
  for (Eigen::Index k = 0; k < b.amps.cols(); ++k) {
    std::vector<cplx> v(b.amps.col(k).data(), b.amps.col(k).data() + b.amps.rows());
    SpinorState s(b.lo, std::move(v));
    s.trim(tol);
    out.push_back(std::move(s));
  }
  return out;
}

int ring_index(int l, int n) { return ((l % n) + n) % n; }

}  // namespace

Eigen::MatrixXcd build_tb_generator(const ControlSegment& seg, int l_min, int l_max, Boundary boundary) {
  seg.validate();
  check_range(l_min, l_max, boundary);
  if (boundary.periodic() && seg.force != 0)
    throw std::invalid_argument("periodic boundary is incompatible with a gradient force");
  const int n = l_max - l_min + 1;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  const cplx drive = -0.5 * std::polar(1.0, seg.phi);
  const double om_r = seg.rate_right(), om_l = seg.rate_left();
  for (int i = 0; i < n; ++i) {
    const int l = l_min + i;
    const int d = 2 * i, u = 2 * i + 1;
    h(u, u) += -0.5 * seg.delta + seg.force * (l + seg.delta_l);
    h(d, d) += 0.5 * seg.delta + seg.force * l;
    if (om_r != 0) {
      h(u, d) += drive * om_r;
      h(d, u) += std::conj(drive * om_r);
    }
    if (om_l != 0) {
      int partner;
      if (i > 0) {
        partner = 2 * (i - 1) + 1;
      } else if (boundary.periodic()) {
        partner = 2 * (n - 1) + 1;
      } else {
        continue;
      }
      h(partner, d) += drive * om_l;
      h(d, partner) += std::conj(drive * om_l);
    }
  }
  return h;
}

Eigen::MatrixXcd segment_propagator(const ControlSegment& seg, int l_min, int l_max, Boundary boundary) {
  const Eigen::MatrixXcd h = build_tb_generator(seg, l_min, l_max, boundary);
  if (seg.duration == 0) return Eigen::MatrixXcd::Identity(h.rows(), h.cols());
  return exp_minus_i(h, seg.duration);
}

Eigen::MatrixXcd sequence_propagator(const PulseSequence& seq, int l_min, int l_max, Boundary boundary) {
  check_range(l_min, l_max, boundary);
  const Eigen::Index dim = 2 * (l_max - l_min + 1);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& seg : seq.segments) u = segment_propagator(seg, l_min, l_max, boundary) * u;
  return u;
}

std::vector<SpinorState> evolve_many(const std::vector<SpinorState>& states, const PulseSequence& seq,
                                     Boundary boundary, const EvolveOptions& options) {
  seq.validate();
  if (states.empty()) return {};

  if (boundary.periodic()) {
    const int n = boundary.ring_sites;
    if (n < 1) throw std::invalid_argument("ring must have at least one site");
    Eigen::MatrixXcd amps = Eigen::MatrixXcd::Zero(2 * n, static_cast<Eigen::Index>(states.size()));
    for (std::size_t k = 0; k < states.size(); ++k) {
      const auto& s = states[k];
      if (s.sites() > n) throw std::invalid_argument("state does not fit on the ring");
      for (int l = s.l_min; l <= s.l_max(); ++l) {
        const int r = ring_index(l, n);
        amps(2 * r, static_cast<Eigen::Index>(k)) = s.get(l, Spin::down);
        amps(2 * r + 1, static_cast<Eigen::Index>(k)) = s.get(l, Spin::up);
      }
    }
    amps = sequence_propagator(seq, 0, n - 1, boundary) * amps;
    std::vector<SpinorState> out;
    for (Eigen::Index k = 0; k < amps.cols(); ++k)
      out.emplace_back(0, std::vector<cplx>(amps.col(k).data(), amps.col(k).data() + amps.rows()));
    return out;
  }

  Batch b = gather(states);
  for (const auto& seg : seq.segments) {
    if (seg.duration == 0) continue;
    evolve_open(b, seg, options);
    trim_batch(b, options.trim_tol);
  }
  return scatter(b, options.trim_tol);
}

SpinorState evolve(const SpinorState& state, const PulseSequence& seq, Boundary boundary,
                   const EvolveOptions& options) {
  if (seq.segments.empty()) return state;
  return evolve_many({state}, seq, boundary, options).front();
}

std::vector<SpinorState> evolve_trajectory(const SpinorState& state, const PulseSequence& seq,
                                           Boundary boundary, const EvolveOptions& options) {
  std::vector<SpinorState> out{state};
  for (const auto& seg : seq.segments) out.push_back(evolve(out.back(), PulseSequence{{seg}}, boundary, options));
  return out;
}

}  // namespace spinorlat::tb
