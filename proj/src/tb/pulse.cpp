#include "spinorlat/pulse.hpp"

#include <cmath>

namespace spinorlat::tb {

const char* to_string(Coupling c) {
  switch (c) {
    case Coupling::right: return "R";
    case Coupling::left: return "L";
    case Coupling::both: return "both";
  }
  return "?";
}

Coupling coupling_from_string(const std::string& s) {
  if (s == "R") return Coupling::right;
  if (s == "L") return Coupling::left;
  if (s == "both") return Coupling::both;
  throw std::invalid_argument("unknown coupling '" + s + "' (expected R, L or both)");
}

double ControlSegment::rate_right() const {
  switch (coupling) {
    case Coupling::right: return omega;
    case Coupling::left: return 0.0;
    case Coupling::both: return omega_r;
  }
  return 0.0;
}

double ControlSegment::rate_left() const {
  switch (coupling) {
    case Coupling::right: return 0.0;
    case Coupling::left: return omega;
    case Coupling::both: return omega_l;
  }
  return 0.0;
}

void ControlSegment::validate() const {
  for (double v : {duration, omega, phi, delta, omega_r, omega_l, force, delta_l})
    if (!std::isfinite(v)) throw std::invalid_argument("control segment has a non-finite field");
  if (duration < 0) throw std::invalid_argument("control segment duration must be >= 0");
  if (delta_l < 0 || delta_l >= 1) throw std::invalid_argument("delta_l must lie in [0, 1)");
}

double PulseSequence::total_duration() const {
  double t = 0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

bool PulseSequence::has_gradient() const {
  for (const auto& s : segments)
    if (s.force != 0) return true;
  return false;
}

void PulseSequence::validate() const {
  for (const auto& s : segments) s.validate();
}

PulseSequence& PulseSequence::append(const PulseSequence& other) {
  segments.insert(segments.end(), other.segments.begin(), other.segments.end());
  return *this;
}

}  // namespace spinorlat::tb
