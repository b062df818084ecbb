#include <charconv>
#include <ostream>

#include "spinorlat/io.hpp"

namespace spinorlat::io {

std::string num(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_bands_csv(std::ostream& os, const model::BlochSpectrum& spectrum) {
  os << "# spin=" << to_string(spectrum.spin) << " depth_ER=" << num(spectrum.depth)
     << " phase_rad=" << num(spectrum.phase) << " planewaves=" << spectrum.n_planewaves << "\n";
  os << "q_per_period";
  for (int n = 0; n < spectrum.n_bands(); ++n) os << ",E" << n << "_ER";
  os << "\n";
  for (int j = 0; j < spectrum.n_q(); ++j) {
    os << num(spectrum.q[static_cast<std::size_t>(j)]);
    for (int n = 0; n < spectrum.n_bands(); ++n) os << "," << num(spectrum.energies(j, n));
    os << "\n";
  }
}

void write_wannier_csv(std::ostream& os, const std::vector<model::WannierFunction>& functions) {
  if (functions.empty()) return;
  const model::RealGrid& grid = functions.front().grid;
  for (const auto& f : functions)
    if (!(f.grid == grid)) throw std::invalid_argument("write_wannier_csv: functions on different grids");
  os << "x_periods";
  for (const auto& f : functions) {
    const std::string tag = std::string(to_string(f.spin)) + "_l" + std::to_string(f.site);
    os << ",re_" << tag << ",im_" << tag;
  }
  os << "\n";
  for (int i = 0; i < grid.size(); ++i) {
    os << num(grid.at(i));
    for (const auto& f : functions) {
      const cplx v = f.values[static_cast<std::size_t>(i)];
      os << "," << num(v.real()) << "," << num(v.imag());
    }
    os << "\n";
  }
}

void write_adiabatic_csv(std::ostream& os, const std::vector<double>& x, const model::AdiabaticCurves& curves) {
  os << "x_periods,V_plus_ER,V_minus_ER\n";
  for (std::size_t i = 0; i < x.size(); ++i)
    os << num(x[i]) << "," << num(curves.v_plus[i]) << "," << num(curves.v_minus[i]) << "\n";
}

void write_trajectory_csv(std::ostream& os, const std::vector<tb::SpinorState>& states, const tb::PulseSequence& seq) {
  if (states.empty()) return;
  int lo = states.front().l_min, hi = states.front().l_max();
  for (const auto& s : states) {
    if (s.empty()) continue;
    lo = std::min(lo, s.l_min);
    hi = std::max(hi, s.l_max());
  }
  os << "segment,time_inv_ER";
  for (int l = lo; l <= hi; ++l) os << ",P_" << l << "_down,P_" << l << "_up";
  os << "\n";
  double t = 0;
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (k > 0) t += seq.segments[k - 1].duration;
    os << k << "," << num(t);
    for (int l = lo; l <= hi; ++l)
      os << "," << num(std::norm(states[k].get(l, Spin::down))) << "," << num(std::norm(states[k].get(l, Spin::up)));
    os << "\n";
  }
}

}  // namespace spinorlat::io
