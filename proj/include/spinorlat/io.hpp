#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinorlat/bands.hpp"
#include "spinorlat/hn.hpp"
#include "spinorlat/lattice.hpp"
#include "spinorlat/reachability.hpp"
#include "spinorlat/synthesis.hpp"
#include "spinorlat/wannier.hpp"

namespace spinorlat::io {

using json = nlohmann::json;

inline constexpr const char* kStateSchema = "spinorlat.spinor-state/1";
inline constexpr const char* kSequenceSchema = "spinorlat.pulse-sequence/1";
inline constexpr const char* kTargetSchema = "spinorlat.synthesis-target/1";
inline constexpr const char* kScheduleSchema = "spinorlat.hn-schedule/1";
inline constexpr const char* kReachabilitySchema = "spinorlat.reachability-report/1";
inline constexpr const char* kVerificationSchema = "spinorlat.verification-report/1";

// All parsers throw SchemaError on malformed input.
json to_json(const tb::SpinorState& s);
tb::SpinorState state_from_json(const json& j);

json to_json(const tb::ControlSegment& s);
json to_json(const tb::PulseSequence& seq);
tb::PulseSequence sequence_from_json(const json& j);

json to_json(const tb::HNSchedule& s);
tb::HNSchedule schedule_from_json(const json& j);

// Written in Wannier form. Parsing also accepts
// {"form": "fourier", "l_min", "alpha": [[re, im], ...], "beta": [...]} and
// {"form": "samples", "alpha": [...], "beta": [...]} (uniform grid -1/2 + j/n).
json to_json(const control::SynthesisTarget& t);
control::SynthesisTarget target_from_json(const json& j);

json to_json(const control::ReachabilityReport& r);
json to_json(const control::VerificationReport& r);

// Two-space indented JSON plus a trailing newline.
std::string dump(const json& j);
json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// CSV writers; header rows carry units.
void write_bands_csv(std::ostream& os, const model::BlochSpectrum& spectrum);
void write_wannier_csv(std::ostream& os, const std::vector<model::WannierFunction>& functions);
void write_adiabatic_csv(std::ostream& os, const std::vector<double>& x, const model::AdiabaticCurves& curves);
// One row per segment boundary; a column per (site, spin) population.
void write_trajectory_csv(std::ostream& os, const std::vector<tb::SpinorState>& states, const tb::PulseSequence& seq);

// Shortest round-trip text for a double.
std::string num(double x);

}  // namespace spinorlat::io
