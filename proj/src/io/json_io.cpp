#include <cmath>
#include <fstream>
#include <sstream>

#include "spinorlat/io.hpp"

namespace spinorlat::io {

namespace {

void check_schema(const json& j, const char* expected) {
  if (!j.is_object()) throw SchemaError(std::string("expected a JSON object for ") + expected);
  if (j.contains("schema") && j.at("schema") != expected)
    throw SchemaError("schema mismatch: expected " + std::string(expected) + ", got " + j.at("schema").dump());
}

double get_num(const json& j, const char* key, double fallback, bool required = false) {
  if (!j.contains(key)) {
    if (required) throw SchemaError(std::string("missing field '") + key + "'");
    return fallback;
  }
  const json& v = j.at(key);
  if (!v.is_number()) throw SchemaError(std::string("field '") + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw SchemaError(std::string("field '") + key + "' is not finite");
  return x;
}

int get_int(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) throw SchemaError(std::string("field '") + key + "' must be an integer");
  return j.at(key).get<int>();
}

cplx complex_from(const json& v) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw SchemaError("complex numbers are written as [re, im]");
  return {v[0].get<double>(), v[1].get<double>()};
}

std::vector<cplx> complex_list(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw SchemaError(std::string("field '") + key + "' must be an array");
  std::vector<cplx> out;
  for (const auto& v : j.at(key)) out.push_back(complex_from(v));
  return out;
}

json amps_json(const tb::SpinorState& s) {
  json amps = json::array();
  for (int i = 0; i < s.sites(); ++i) {
    const cplx d = s.amps[static_cast<std::size_t>(2 * i)], u = s.amps[static_cast<std::size_t>(2 * i + 1)];
    amps.push_back({d.real(), d.imag(), u.real(), u.imag()});
  }
  return amps;
}

tb::SpinorState amps_from(const json& j) {
  const int l_min = get_int(j, "l_min");
  if (!j.contains("amps") || !j.at("amps").is_array()) throw SchemaError("field 'amps' must be an array");
  std::vector<cplx> amps;
  for (const auto& row : j.at("amps")) {
    if (!row.is_array() || row.size() != 4) throw SchemaError("each amps row is [re_dn, im_dn, re_up, im_up]");
    for (const auto& x : row)
      if (!x.is_number()) throw SchemaError("amps entries must be numbers");
    amps.emplace_back(row[0].get<double>(), row[1].get<double>());
    amps.emplace_back(row[2].get<double>(), row[3].get<double>());
  }
  if (amps.empty()) throw SchemaError("state has no amplitudes");
  return tb::SpinorState(l_min, std::move(amps));
}

template <class F>
auto rethrow_as_schema(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const json::exception& e) {
    throw SchemaError(e.what());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

}  // namespace

json to_json(const tb::SpinorState& s) {
  return json{{"schema", kStateSchema}, {"l_min", s.l_min}, {"amps", amps_json(s)}};
}

tb::SpinorState state_from_json(const json& j) {
  return rethrow_as_schema([&] {
    check_schema(j, kStateSchema);
    return amps_from(j);
  });
}

json to_json(const tb::ControlSegment& s) {
  return json{{"duration", s.duration}, {"omega", s.omega},     {"phi", s.phi},     {"delta", s.delta},
              {"coupling", to_string(s.coupling)}, {"omega_R", s.omega_r}, {"omega_L", s.omega_l},
              {"force", s.force},       {"delta_l", s.delta_l}};
}

json to_json(const tb::PulseSequence& seq) {
  json segs = json::array();
  for (const auto& s : seq.segments) segs.push_back(to_json(s));
  return json{{"schema", kSequenceSchema}, {"segments", segs}};
}

tb::PulseSequence sequence_from_json(const json& j) {
  return rethrow_as_schema([&] {
    check_schema(j, kSequenceSchema);
    if (!j.contains("segments") || !j.at("segments").is_array()) throw SchemaError("field 'segments' must be an array");
    tb::PulseSequence seq;
    for (const auto& s : j.at("segments")) {
      if (!s.is_object()) throw SchemaError("segments must be objects");
      tb::ControlSegment seg;
      seg.duration = get_num(s, "duration", 0, true);
      seg.omega = get_num(s, "omega", 0);
      seg.phi = get_num(s, "phi", 0);
      seg.delta = get_num(s, "delta", 0);
      if (!s.contains("coupling") || !s.at("coupling").is_string()) throw SchemaError("segment needs a 'coupling' string");
      seg.coupling = tb::coupling_from_string(s.at("coupling").get<std::string>());
      seg.omega_r = get_num(s, "omega_R", 0);
      seg.omega_l = get_num(s, "omega_L", 0);
      seg.force = get_num(s, "force", 0);
      seg.delta_l = get_num(s, "delta_l", 0);
      seg.validate();
      seq.segments.push_back(seg);
    }
    return seq;
  });
}

json to_json(const tb::HNSchedule& s) {
  json segs = json::array();
  for (const auto& x : s.segments) segs.push_back({{"duration", x.duration}, {"omega", x.omega}, {"force", x.force}});
  return json{{"schema", kScheduleSchema}, {"segments", segs}};
}

tb::HNSchedule schedule_from_json(const json& j) {
  return rethrow_as_schema([&] {
    check_schema(j, kScheduleSchema);
    if (!j.contains("segments") || !j.at("segments").is_array()) throw SchemaError("field 'segments' must be an array");
    tb::HNSchedule s;
    for (const auto& x : j.at("segments")) {
      if (!x.is_object()) throw SchemaError("segments must be objects");
      s.segments.push_back({get_num(x, "duration", 0, true), get_num(x, "omega", 0), get_num(x, "force", 0)});
    }
    s.validate();
    return s;
  });
}

json to_json(const control::SynthesisTarget& t) {
  return json{{"schema", kTargetSchema}, {"form", "wannier"}, {"l_min", t.amplitudes.l_min}, {"amps", amps_json(t.amplitudes)}};
}

control::SynthesisTarget target_from_json(const json& j) {
  return rethrow_as_schema([&] {
    check_schema(j, kTargetSchema);
    const std::string form = j.contains("form") ? j.at("form").get<std::string>() : "wannier";
    if (form == "wannier") return control::SynthesisTarget::from_wannier(amps_from(j));
    if (form == "fourier") {
      const auto a = complex_list(j, "alpha"), b = complex_list(j, "beta");
      return control::SynthesisTarget::from_fourier(get_int(j, "l_min"), a, b);
    }
    if (form == "samples") {
      const auto a = complex_list(j, "alpha"), b = complex_list(j, "beta");
      return control::SynthesisTarget::from_samples(a, b);
    }
    throw SchemaError("unknown target form '" + form + "'");
  });
}

json to_json(const control::ReachabilityReport& r) {
  json ov = json::array();
  for (const auto& [j, v] : r.overlaps) ov.push_back({{"j", j}, {"re", v.real()}, {"im", v.imag()}, {"abs", std::abs(v)}});
  return json{{"schema", kReachabilitySchema},
              {"reachable", r.reachable},
              {"worst_j", r.worst_j},
              {"worst_magnitude", r.worst_magnitude},
              {"overlaps", ov}};
}

json to_json(const control::VerificationReport& r) {
  json per_q = json::array();
  for (std::size_t i = 0; i < r.q.size(); ++i) per_q.push_back({{"q", r.q[i]}, {"fidelity", r.fidelity[i]}});
  return json{{"schema", kVerificationSchema},
              {"per_q", per_q},
              {"worst_fidelity", r.worst_fidelity},
              {"worst_q", r.worst_q},
              {"rotation_count", r.rotation_count},
              {"shift", r.shift},
              {"route", r.real_space ? "real-space" : "bloch"}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace spinorlat::io
