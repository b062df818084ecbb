#include "spinorlat/gradient.hpp"

#include <cmath>

namespace spinorlat::tb {

double GradientFrame::shift() const {
  double s = std::fmod(eta() / kTwoPi, 1.0);
  if (s < 0) s += 1.0;
  if (s >= 1.0) s = 0.0;
  return s;
}

GradientFrame& GradientFrame::operator+=(const GradientFrame& o) {
  chi_sum += o.chi_sum;
  eta_sum += o.eta_sum;
  return *this;
}

GradientFrame gradient_frame(const ControlSegment& seg) {
  seg.validate();
  GradientFrame f;
  f.chi_sum.add_product(seg.delta_l, seg.force, seg.duration);
  f.eta_sum.add_product(seg.force, seg.duration);
  return f;
}

GradientFrame gradient_frame(const PulseSequence& seq) {
  GradientFrame f;
  for (const auto& seg : seq.segments) f += gradient_frame(seg);
  return f;
}

BlochBlockMap apply_displacement(const GradientFrame& frame, const BlochBlockMap& blocks) {
  BlochBlockMap out = blocks;
  const double chi = frame.chi();
  const cplx up_phase = std::polar(1.0, -chi);
  for (auto& b : out.blocks) b.row(0) *= up_phase;
  double s = std::fmod(blocks.shift + frame.shift(), 1.0);
  if (s < 0) s += 1.0;
  if (s >= 1.0) s = 0.0;
  out.shift = s;
  out.gamma = blocks.gamma - 0.5 * chi;
  return out;
}

bool block_map_supported(const PulseSequence& seq) {
  for (const auto& seg : seq.segments)
    if (seg.force != 0 && seg.rate_right() != 0 && seg.rate_left() != 0) return false;
  return true;
}

BlochBlockMap interaction_block_map(const PulseSequence& seq, std::span<const double> q) {
  seq.validate();
  if (!block_map_supported(seq))
    throw std::invalid_argument("interaction_block_map: a gradient segment drives both bond types");
  BlochBlockMap m;
  m.q.assign(q.begin(), q.end());
  m.blocks.assign(q.size(), Eigen::Matrix2cd::Identity());
  GradientFrame frame;
  for (const auto& seg : seq.segments) {
    const double chi = frame.chi(), eta = frame.eta();
    const double r = seg.rate_right(), l = seg.rate_left();
    // In the frame co-moving with the gradient the driven bond's coupling
    // rotates at omega; moving into that rotating frame leaves a constant
    // generator with an extra omega/2 sigma_z.
    double omega = 0;
    if (seg.force != 0) omega = r != 0 ? seg.force * seg.delta_l : (l != 0 ? seg.force * (seg.delta_l - 1.0) : 0.0);
    const cplx drive = -0.5 * std::polar(1.0, seg.phi);
    const cplx r_part = r * std::polar(1.0, chi);
    const cplx l_part = l * std::polar(1.0, chi - eta);
    const cplx v_up = std::polar(1.0, 0.5 * omega * seg.duration);
    for (std::size_t j = 0; j < q.size(); ++j) {
      const cplx g = drive * (r_part + l_part * std::polar(1.0, kTwoPi * q[j]));
      Eigen::Matrix2cd h;
      h << -0.5 * seg.delta + 0.5 * omega, g, std::conj(g), 0.5 * seg.delta - 0.5 * omega;
      Eigen::Matrix2cd u = expm_hermitian2(h, seg.duration);
      u.row(0) *= v_up;
      u.row(1) *= std::conj(v_up);
      m.blocks[j] = u * m.blocks[j];
    }
    frame += gradient_frame(seg);
  }
  return m;
}

BlochBlockMap full_block_map(const PulseSequence& seq, std::span<const double> q) {
  return apply_displacement(gradient_frame(seq), interaction_block_map(seq, q));
}

}  // namespace spinorlat::tb
