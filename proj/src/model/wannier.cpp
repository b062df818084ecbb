#include "spinorlat/wannier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spinorlat/simd.hpp"

namespace spinorlat::model {

int RealGrid::size() const {
  return static_cast<int>(std::lround((x_max - x_min) * points_per_period)) + 1;
}

RealGrid default_grid(const BlochSpectrum& spectrum, int site) {
  const double c = spectrum.center + site;
  return {std::floor(c) - 4.0, std::ceil(c) + 4.0, 64};
}

WannierFunction wannier_state(const BlochSpectrum& spectrum, int band, int site, const RealGrid& grid) {
  if (band < 0 || band >= spectrum.n_bands()) throw std::invalid_argument("band not present in spectrum");
  if (grid.points_per_period < 1 || !(grid.x_max > grid.x_min)) throw std::invalid_argument("invalid real-space grid");

  WannierFunction w;
  w.grid = grid;
  w.site = site;
  w.spin = spectrum.spin;
  w.band = band;
  w.center = spectrum.center + site;
  const int nx = grid.size();
  w.values.assign(static_cast<std::size_t>(nx), cplx{0, 0});

  const int n_pw = spectrum.n_planewaves;
  const int half = n_pw / 2;
  const int nq = spectrum.n_q();
  for (int j = 0; j < nq; ++j) {
    const double q = spectrum.q[static_cast<std::size_t>(j)];
    const cplx site_phase = std::polar(1.0 / nq, -kTwoPi * site * q);
    const auto c = spectrum.coeffs[static_cast<std::size_t>(j)].col(band);
    for (int i = 0; i < nx; ++i) {
      const double x = grid.at(i);
      // exp(i 2 pi (m + q) x) by stepping m, starting from m = -half.
      const cplx step = std::polar(1.0, kTwoPi * x);
      cplx wave = std::polar(1.0, kTwoPi * (q - half) * x);
      cplx psi = 0;
      for (int m = 0; m < n_pw; ++m) {
        psi += c[m] * wave;
        wave *= step;
      }
      w.values[static_cast<std::size_t>(i)] += site_phase * psi;
    }
  }

  double tail = 0;
  const double dx = grid.step();
  for (int i = 0; i < nx; ++i) {
    if (std::abs(grid.at(i) - w.center) > 3.0) {
      const double wt = (i == 0 || i == nx - 1) ? 0.5 : 1.0;
      tail += wt * std::norm(w.values[static_cast<std::size_t>(i)]) * dx;
    }
  }
  w.tail_norm = tail;
  return w;
}

WannierFunction wannier_state(const BlochSpectrum& spectrum, int band, int site) {
  return wannier_state(spectrum, band, site, default_grid(spectrum, site));
}

cplx overlap(const WannierFunction& a, const WannierFunction& b) {
  if (!(a.grid == b.grid) || a.values.size() != b.values.size())
    throw std::invalid_argument("overlap: Wannier functions sampled on different grids");
  const auto& u = a.values;
  const auto& v = b.values;
  if (u.empty()) return 0;
  const cplx interior = simd::conj_dot(u, v);
  const cplx ends = std::conj(u.front()) * v.front() + std::conj(u.back()) * v.back();
  return a.grid.step() * (interior - 0.5 * ends);
}

double rms_width(const WannierFunction& w) {
  const int n = static_cast<int>(w.values.size());
  std::vector<double> dens(w.values.size()), xs(w.values.size());
  for (int i = 0; i < n; ++i) {
    const double wt = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    dens[static_cast<std::size_t>(i)] = wt * std::norm(w.values[static_cast<std::size_t>(i)]);
    xs[static_cast<std::size_t>(i)] = w.grid.at(i) - w.center;
  }
  const double m0 = std::accumulate(dens.begin(), dens.end(), 0.0);
  const double m1 = simd::real_dot(dens, xs);
  std::vector<double> x2(xs.size());
  std::transform(xs.begin(), xs.end(), x2.begin(), [](double x) { return x * x; });
  const double m2 = simd::real_dot(dens, x2);
  const double mean = m1 / m0;
  return std::sqrt(m2 / m0 - mean * mean);
}

double FranckCondon::ratio() const { return std::abs(omega_l / omega_r); }

FranckCondon franck_condon(const LatticeConfig& config, const BlochSpectrum& up, const BlochSpectrum& down) {
  if (up.spin != Spin::up || down.spin != Spin::down)
    throw std::invalid_argument("franck_condon: expected (up, down) spectra");
  if (up.q != down.q || up.n_planewaves != down.n_planewaves)
    throw std::invalid_argument("franck_condon: spectra use different q or plane-wave grids");
  const LightShift lu = lightshift_params(config, Spin::up);
  const LightShift ld = lightshift_params(config, Spin::down);
  if (std::abs(lu.depth - up.depth) > 1e-12 * (1 + lu.depth) || std::abs(lu.phase - up.phase) > 1e-12 ||
      std::abs(ld.depth - down.depth) > 1e-12 * (1 + ld.depth) || std::abs(ld.phase - down.phase) > 1e-12)
    throw std::invalid_argument("franck_condon: spectra were computed for a different lattice configuration");

  const double lo = std::min({down.center, up.center - 1.0});
  const double hi = std::max(down.center, up.center);
  const RealGrid grid{std::floor(lo) - 4.0, std::ceil(hi) + 4.0, 64};
  const WannierFunction d0 = wannier_state(down, 0, 0, grid);
  const WannierFunction u0 = wannier_state(up, 0, 0, grid);
  const WannierFunction um1 = wannier_state(up, 0, -1, grid);
  const cplx r = overlap(u0, d0);
  const cplx l = overlap(um1, d0);
  return {r.real(), l.real(), r.imag(), l.imag()};
}

GaussianFC gaussian_fc_ratio(const LatticeConfig& config, double omega) {
  if (!(omega > 0)) throw std::invalid_argument("gaussian_fc_ratio: omega must be > 0");
  const double c_down = well_center(config, Spin::down);
  const double c_up = well_center(config, Spin::up);
  GaussianFC g;
  g.d_right = c_up - c_down;
  g.d_left = c_down - (c_up - 1.0);
  // k_L s = sqrt(E_R / hbar omega) with k_L = pi per period.
  g.width = std::sqrt(1.0 / omega) / kPi;
  const double inv = 1.0 / (8.0 * g.width * g.width);
  g.overlap_left = std::exp(-g.d_left * g.d_left * inv);
  g.overlap_right = std::exp(-g.d_right * g.d_right * inv);
  g.ratio = std::exp((g.d_right * g.d_right - g.d_left * g.d_left) * inv);
  return g;
}

}  // namespace spinorlat::model
