#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "manifest.hpp"
#include "spinorlat/io.hpp"
#include "spinorlat/tight_binding.hpp"

namespace spinorlat::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

struct Globals {
  std::string out_dir = ".";
  std::uint64_t seed = 42;
  std::optional<double> tol;
};

struct BandsArgs {
  double v0 = 10.0;
  double theta_deg = 90.0;
  std::optional<double> trap_freq;
  int planewaves = 41;
  int qgrid = 128;
  int n_bands = 4;
  double omega = 0.0;
  double delta = 0.0;
  std::string stem = "bands";
  bool sweep = false;
};

struct CheckArgs {
  std::string state;
};

struct SynthArgs {
  std::string target;
  double omega_max = 1.0;
  std::optional<double> gradient;
  std::string mode = "ideal";
  double theta_deg = 80.0;
  double trap_freq = 20.0;
  double min_fidelity = 1.0 - 1e-9;
  int qgrid = 128;
};

struct SimulateArgs {
  std::string state;
  std::string sequence;
  std::string boundary = "open";
  int ring = 0;
  bool trajectory = false;
  int max_sites = 4096;
};

struct CompareArgs {
  std::string schedule;
  bool random = false;
  int ring = 64;
};

double deg(double d) { return d * kPi / 180.0; }

// Writes text to out_dir/name and records it in the manifest.
fs::path emit(RunManifest& m, const fs::path& dir, const std::string& name, const std::string& text) {
  const fs::path p = dir / name;
  io::write_text_file(p, text);
  m.outputs.push_back(p);
  return p;
}

model::LatticeConfig lattice_for(double theta_deg, std::optional<double> trap_freq, double v0) {
  model::LatticeConfig cfg;
  cfg.theta = deg(theta_deg);
  cfg.v0 = v0;
  if (trap_freq) cfg.v0 = model::v0_for_trap_frequency(cfg, *trap_freq);
  cfg.validate();
  return cfg;
}

model::RealGrid shared_grid(const model::BlochSpectrum& up, const model::BlochSpectrum& down) {
  const double lo = std::min(down.center, up.center - 1.0);
  const double hi = std::max(down.center, up.center);
  return {std::floor(lo) - 4.0, std::ceil(hi) + 4.0, 64};
}

json fc_row(double theta_deg, const model::LatticeConfig& cfg, const model::BlochSpectrum& up,
            const model::BlochSpectrum& down) {
  const auto fc = model::franck_condon(cfg, up, down);
  const double w = model::trap_frequency(up.depth);
  const auto g = model::gaussian_fc_ratio(cfg, w);
  return {{"theta_deg", theta_deg}, {"trap_freq_ER", w},          {"depth_up_ER", up.depth},
          {"omega_R_ratio", fc.omega_r},         {"omega_L_ratio", fc.omega_l}, {"ratio_exact", fc.ratio()},
          {"ratio_gaussian", g.ratio}};
}

int cmd_bands(const BandsArgs& a, const fs::path& dir, RunManifest& m, std::ostream& out, std::ostream& err) {
  const model::LatticeConfig cfg = lattice_for(a.theta_deg, a.trap_freq, a.v0);
  const model::BandOptions opt{a.planewaves, a.qgrid, a.n_bands, true, 1e-10};
  m.parameters = {{"v0", cfg.v0},         {"theta_deg", a.theta_deg}, {"planewaves", a.planewaves},
                  {"qgrid", a.qgrid},      {"bands", a.n_bands},       {"omega", a.omega},
                  {"delta", a.delta},      {"out", a.stem},            {"sweep", a.sweep}};
  if (a.trap_freq) m.parameters["trap_freq"] = *a.trap_freq;

  const auto up = model::band_structure(cfg, Spin::up, opt);
  const auto down = model::band_structure(cfg, Spin::down, opt);
  for (const auto* s : {&up, &down}) {
    std::ostringstream os;
    io::write_bands_csv(os, *s);
    emit(m, dir, a.stem + "_" + to_string(s->spin) + ".csv", os.str());
  }

  std::vector<double> x;
  for (int i = 0; i <= 400; ++i) x.push_back(-1.0 + i / 200.0);
  {
    std::ostringstream os;
    io::write_adiabatic_csv(os, x, model::adiabatic_potentials(x, cfg, a.delta, a.omega));
    emit(m, dir, a.stem + "_adiabatic.csv", os.str());
  }

  const int iq0 = a.qgrid / 2;  // q = 0
  json summary = {{"v0", cfg.v0},
                  {"theta_deg", a.theta_deg},
                  {"depth_up_ER", up.depth},
                  {"phase_up_rad", up.phase},
                  {"E0_q0_ER", up.energies(iq0, 0)},
                  {"ground_bandwidth_ER", up.energies.col(0).maxCoeff() - up.energies.col(0).minCoeff()}};

  if (cfg.v0 > 0) {
    const auto grid = shared_grid(up, down);
    std::vector<model::WannierFunction> ws{model::wannier_state(down, 0, 0, grid), model::wannier_state(up, 0, 0, grid),
                                           model::wannier_state(up, 0, -1, grid)};
    for (const auto& w : ws)
      if (!w.well_localized())
        err << "warning: " << to_string(w.spin) << " Wannier function at site " << w.site << " has weight "
            << w.tail_norm << " beyond 3 periods\n";
    std::ostringstream os;
    io::write_wannier_csv(os, ws);
    emit(m, dir, a.stem + "_wannier.csv", os.str());

    std::vector<json> rows{fc_row(a.theta_deg, cfg, up, down)};
    if (a.sweep) {
      for (int k = 0; k <= 12; ++k) {
        const double th = 60.0 + 2.5 * k;
        const auto c = lattice_for(th, a.trap_freq ? a.trap_freq : std::optional<double>{}, a.v0);
        if (c.v0 == 0) continue;
        rows.push_back(fc_row(th, c, model::band_structure(c, Spin::up, opt), model::band_structure(c, Spin::down, opt)));
      }
    }
    std::ostringstream fc;
    fc << "theta_deg,trap_freq_ER,depth_up_ER,omega_R_ratio,omega_L_ratio,ratio_exact,ratio_gaussian\n";
    for (const auto& r : rows) {
      fc << io::num(r["theta_deg"].get<double>()) << "," << io::num(r["trap_freq_ER"].get<double>()) << ","
         << io::num(r["depth_up_ER"].get<double>()) << "," << io::num(r["omega_R_ratio"].get<double>()) << ","
         << io::num(r["omega_L_ratio"].get<double>()) << "," << io::num(r["ratio_exact"].get<double>()) << ","
         << io::num(r["ratio_gaussian"].get<double>()) << "\n";
    }
    emit(m, dir, a.stem + "_fc.csv", fc.str());
    summary["franck_condon"] = rows.front();
  } else {
    summary["franck_condon"] = nullptr;
    err << "note: v0 = 0 has no localized Wannier functions; Franck-Condon output skipped\n";
  }
  emit(m, dir, a.stem + ".json", io::dump(summary));
  out << io::dump(summary);
  return kOk;
}

int cmd_check(const CheckArgs& a, const Globals& g, const fs::path& dir, RunManifest& m, std::ostream& out) {
  const double tol = g.tol.value_or(1e-9);
  m.parameters = {{"state", a.state}, {"tol", tol}};
  m.inputs.push_back(a.state);
  const auto state = io::state_from_json(io::read_json_file(a.state));
  control::ReachabilityReport rep;
  try {
    rep = control::reachability_check(state, tol);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  const json j = io::to_json(rep);
  emit(m, dir, "reachability.json", io::dump(j));
  out << io::dump(j);
  return rep.reachable ? kOk : kUnreachable;
}

int cmd_synth(const SynthArgs& a, const Globals& g, const fs::path& dir, RunManifest& m, std::ostream& out,
              std::ostream& err) {
  if (a.mode != "ideal" && a.mode != "physical") throw std::invalid_argument("--mode must be ideal or physical");
  const double tol = g.tol.value_or(1e-9);
  m.parameters = {{"target", a.target}, {"omega_max", a.omega_max}, {"mode", a.mode},
                  {"min_fidelity", a.min_fidelity}, {"qgrid", a.qgrid}, {"tol", tol}};
  if (a.gradient) m.parameters["gradient"] = *a.gradient;
  m.inputs.push_back(a.target);
  const auto target = io::target_from_json(io::read_json_file(a.target));

  control::SynthesisOptions opt;
  opt.reach_tol = tol;
  opt.pulses.omega_max = a.omega_max;
  opt.pulses.gradient = a.gradient;
  if (a.mode == "physical") {
    m.parameters["theta_deg"] = a.theta_deg;
    m.parameters["trap_freq"] = a.trap_freq;
    const auto cfg = lattice_for(a.theta_deg, a.trap_freq, 0.0);
    const auto up = model::band_structure(cfg, Spin::up);
    const auto down = model::band_structure(cfg, Spin::down);
    const auto fc = model::franck_condon(cfg, up, down);
    const bool left_strong = std::abs(fc.omega_l) >= std::abs(fc.omega_r);
    opt.pulses.physical = true;
    opt.pulses.fc_driven = left_strong ? fc.omega_l : fc.omega_r;
    opt.pulses.fc_suppressed = left_strong ? fc.omega_r : fc.omega_l;
    m.parameters["fc_driven"] = opt.pulses.fc_driven;
    m.parameters["fc_suppressed"] = opt.pulses.fc_suppressed;
  }

  control::SynthesisResult res;
  try {
    res = control::synthesize(target, opt);
  } catch (const UnreachableError& e) {
    err << "error: " << e.what() << "\n";
    return kUnreachable;
  }
  emit(m, dir, "sequence.json", io::dump(io::to_json(res.sequence)));
  const auto q = tb::uniform_q_grid(a.qgrid);
  auto rep = control::verify_map(res.sequence, target, q);
  rep.rotation_count = res.rotation_count;
  const json rj = io::to_json(rep);
  emit(m, dir, "verification.json", io::dump(rj));
  out << "segments: " << res.sequence.segments.size() << "\nrotation_count: " << rep.rotation_count
      << "\nworst_fidelity: " << io::num(rep.worst_fidelity) << "\n";
  if (rep.worst_fidelity < a.min_fidelity) {
    err << "error: worst block fidelity " << rep.worst_fidelity << " below --min-fidelity " << a.min_fidelity << "\n";
    return kFailed;
  }
  return kOk;
}

int cmd_simulate(const SimulateArgs& a, const fs::path& dir, RunManifest& m, std::ostream& out) {
  m.parameters = {{"state", a.state},       {"sequence", a.sequence},     {"boundary", a.boundary},
                  {"ring", a.ring},         {"emit_trajectory", a.trajectory}, {"max_sites", a.max_sites}};
  m.inputs = {a.state, a.sequence};
  const auto state = io::state_from_json(io::read_json_file(a.state));
  const auto seq = io::sequence_from_json(io::read_json_file(a.sequence));
  tb::Boundary b;
  if (a.boundary == "periodic") {
    if (a.ring < 1) throw std::invalid_argument("--boundary periodic needs --ring N");
    b = tb::Boundary::ring(a.ring);
  } else if (a.boundary != "open") {
    throw std::invalid_argument("--boundary must be open or periodic");
  }
  tb::EvolveOptions eo;
  eo.max_sites = a.max_sites;
  tb::SpinorState final_state;
  if (a.trajectory) {
    const auto traj = tb::evolve_trajectory(state, seq, b, eo);
    std::ostringstream os;
    io::write_trajectory_csv(os, traj, seq);
    emit(m, dir, "trajectory.csv", os.str());
    final_state = traj.back();
  } else {
    final_state = tb::evolve(state, seq, b, eo);
  }
  const std::string text = io::dump(io::to_json(final_state));
  emit(m, dir, "final_state.json", text);
  out << text;
  return kOk;
}

tb::HNSchedule random_schedule(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> om(0.0, 1.5), tau(0.1, 1.2), f(-2.0, 2.0);
  tb::HNSchedule s;
  for (int k = 0; k < 5; ++k) {
    const double o = om(rng), t = tau(rng), F = f(rng);
    s.segments.push_back({t, o, F});
  }
  return s;
}

int cmd_compare_hn(const CompareArgs& a, const Globals& g, const fs::path& dir, RunManifest& m, std::ostream& out) {
  const double tol = g.tol.value_or(1e-8);
  if (a.ring < 2) throw std::invalid_argument("--ring must be >= 2");
  if (a.random == !a.schedule.empty()) throw std::invalid_argument("give either a schedule file or --random");
  m.parameters = {{"ring", a.ring}, {"tol", tol}, {"random", a.random}};
  tb::HNSchedule s;
  if (a.random) {
    m.parameters["seed"] = g.seed;
    s = random_schedule(g.seed);
    emit(m, dir, "hn_schedule.json", io::dump(io::to_json(s)));
  } else {
    m.parameters["schedule"] = a.schedule;
    m.inputs.push_back(a.schedule);
    s = io::schedule_from_json(io::read_json_file(a.schedule));
  }
  const auto p = tb::hn_propagator(s);
  const auto c = tb::scalar_chain_phases(s, a.ring);
  double worst = 0;
  json rows = json::array();
  std::ostringstream csv;
  csv << "q_out,analytic_re,analytic_im,numeric_re,numeric_im,abs_error\n";
  for (std::size_t j = 0; j < c.q_out.size(); ++j) {
    const cplx an = p.phase(c.q_out[j] + p.eta / kTwoPi);
    const cplx nu = c.values[j];
    const double e = std::abs(an - nu);
    worst = std::max(worst, e);
    rows.push_back({{"q", c.q_out[j]}, {"error", e}});
    csv << io::num(c.q_out[j]) << "," << io::num(an.real()) << "," << io::num(an.imag()) << "," << io::num(nu.real())
        << "," << io::num(nu.imag()) << "," << io::num(e) << "\n";
  }
  const json rep = {{"a", p.a}, {"b", p.b}, {"eta", p.eta}, {"max_error", worst}, {"tol", tol},
                    {"agree", worst < tol}, {"boundary_amplitude", c.boundary_amplitude}, {"per_q", rows}};
  emit(m, dir, "compare_hn.json", io::dump(rep));
  emit(m, dir, "compare_hn.csv", csv.str());
  out << "a: " << io::num(p.a) << "\nb: " << io::num(p.b) << "\neta: " << io::num(p.eta)
      << "\nmax_error: " << io::num(worst) << "\n";
  return worst < tol ? kOk : kFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spin-dependent optical lattice control toolkit", "spinorlat"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Globals g;
  double tol_value = 0;
  app.add_option("--out-dir", g.out_dir, "Directory for output files")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for randomized schedules")->capture_default_str();
  auto* tol_opt = app.add_option("--tol", tol_value, "Command tolerance (check: reachability, compare-hn: agreement, synth: reachability)");

  BandsArgs ba;
  auto* bands = app.add_subcommand("bands", "Band structure, Wannier functions, adiabatic potentials and Franck-Condon factors");
  bands->add_option("--v0", ba.v0, "Lattice depth amplitude (E_R)")->capture_default_str()->check(CLI::NonNegativeNumber);
  bands->add_option("--theta", ba.theta_deg, "Polarization angle (degrees, 0..180)")->capture_default_str()->check(CLI::Range(0.0, 180.0));
  bands->add_option("--trap-freq", ba.trap_freq, "Set v0 so the up lattice has this harmonic frequency (E_R)")->check(CLI::PositiveNumber);
  bands->add_option("--planewaves", ba.planewaves, "Odd plane-wave count >= 11")->capture_default_str();
  bands->add_option("--qgrid", ba.qgrid, "Quasimomentum grid points >= 2")->capture_default_str();
  bands->add_option("--bands", ba.n_bands, "Number of bands to tabulate")->capture_default_str();
  bands->add_option("--omega", ba.omega, "Microwave Rabi frequency for adiabatic curves (E_R)")->capture_default_str()->check(CLI::NonNegativeNumber);
  bands->add_option("--delta", ba.delta, "Microwave detuning for adiabatic curves (E_R)")->capture_default_str();
  bands->add_option("--out", ba.stem, "Output file stem")->capture_default_str();
  bands->add_flag("--sweep", ba.sweep, "Add Franck-Condon rows for theta = 60..90 degrees");

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "Reachability test of a spinor state");
  check->add_option("state", ca.state, "SpinorState JSON")->required();

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "Compile a target Bloch-block map into a pulse sequence");
  synth->add_option("target", sa.target, "SynthesisTarget JSON")->required();
  synth->add_option("--omega-max", sa.omega_max, "Maximum microwave Rabi frequency (E_R)")->capture_default_str()->check(CLI::PositiveNumber);
  synth->add_option("--gradient", sa.gradient, "Uniform force per site (E_R); enables spectral isolation timing");
  synth->add_option("--mode", sa.mode, "ideal or physical")->capture_default_str()->check(CLI::IsMember({"ideal", "physical"}));
  synth->add_option("--theta", sa.theta_deg, "Physical mode: polarization angle (degrees)")->capture_default_str()->check(CLI::Range(0.0, 180.0));
  synth->add_option("--trap-freq", sa.trap_freq, "Physical mode: harmonic frequency of the lattice (E_R)")->capture_default_str()->check(CLI::PositiveNumber);
  synth->add_option("--min-fidelity", sa.min_fidelity, "Fail (exit 4) below this worst-q fidelity")->capture_default_str();
  synth->add_option("--qgrid", sa.qgrid, "Verification grid size")->capture_default_str()->check(CLI::PositiveNumber);

  SimulateArgs ma;
  auto* simulate = app.add_subcommand("simulate", "Evolve a spinor state under a pulse sequence");
  simulate->add_option("state", ma.state, "SpinorState JSON")->required();
  simulate->add_option("sequence", ma.sequence, "PulseSequence JSON")->required();
  simulate->add_option("--boundary", ma.boundary, "open or periodic")->capture_default_str()->check(CLI::IsMember({"open", "periodic"}));
  simulate->add_option("--ring", ma.ring, "Ring size for periodic boundaries")->check(CLI::PositiveNumber);
  simulate->add_flag("--emit-trajectory", ma.trajectory, "Write per-segment populations");
  simulate->add_option("--max-sites", ma.max_sites, "Open-chain size limit before aborting")->capture_default_str()->check(CLI::PositiveNumber);

  CompareArgs ha;
  auto* compare = app.add_subcommand("compare-hn", "Analytic vs numeric propagator of the scalar hopping chain");
  compare->add_option("schedule", ha.schedule, "HN schedule JSON");
  compare->add_flag("--random", ha.random, "Use a random 5-segment schedule drawn from --seed");
  compare->add_option("--ring", ha.ring, "Chain length")->capture_default_str();

  std::vector<const char*> argv{"spinorlat"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kBadInput;
  }
  if (tol_opt->count() > 0) {
    if (!(tol_value > 0)) {
      err << "error: --tol must be > 0\n";
      return kBadInput;
    }
    g.tol = tol_value;
  }

  const fs::path dir = g.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    err << "error: cannot create output directory " << dir << ": " << ec.message() << "\n";
    return kBadInput;
  }

  RunManifest m;
  const auto t0 = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    if (*bands) {
      m.command = "bands";
      code = cmd_bands(ba, dir, m, out, err);
    } else if (*check) {
      m.command = "check";
      code = cmd_check(ca, g, dir, m, out);
    } else if (*synth) {
      m.command = "synth";
      code = cmd_synth(sa, g, dir, m, out, err);
    } else if (*simulate) {
      m.command = "simulate";
      code = cmd_simulate(ma, dir, m, out);
    } else {
      m.command = "compare-hn";
      code = cmd_compare_hn(ha, g, dir, m, out);
    }
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    code = kNumeric;
  } catch (const LeakageError& e) {
    err << "error: " << e.what() << "\n";
    code = kNumeric;
  } catch (const UnreachableError& e) {
    err << "error: " << e.what() << "\n";
    code = kUnreachable;
  } catch (const SchemaError& e) {
    err << "error: malformed input: " << e.what() << "\n";
    code = kBadInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    code = kBadInput;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    code = kBadInput;
  }
  m.exit_code = code;
  m.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  try {
    std::erase_if(m.inputs, [](const fs::path& p) { return !fs::exists(p); });
    m.write(dir);
  } catch (const std::exception& e) {
    err << "warning: manifest not written: " << e.what() << "\n";
  }
  return code;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace spinorlat::cli
