#pragma once

#include <string>
#include <vector>

#include "spinorlat/types.hpp"

namespace spinorlat::tb {

// R drives |l,down> <-> |l,up>; L drives |l,down> <-> |l-1,up>.
enum class Coupling { right, left, both };

const char* to_string(Coupling c);
Coupling coupling_from_string(const std::string& s);

// One piecewise-constant control interval. In right/left mode the rate of
// the driven bond is `omega` and the other bond is exactly uncoupled; in
// both mode the bond rates are omega_r and omega_l.
struct ControlSegment {
  double duration = 0;
  double omega = 0;
  double phi = 0;
  double delta = 0;
  Coupling coupling = Coupling::right;
  double omega_r = 0;
  double omega_l = 0;
  double force = 0;    // energy per site
  double delta_l = 0;  // up-lattice offset in sites, [0, 1)

  double rate_right() const;
  double rate_left() const;
  // duration >= 0, finite fields, delta_l in [0, 1).
  void validate() const;

  bool operator==(const ControlSegment&) const = default;
};

struct PulseSequence {
  std::vector<ControlSegment> segments;

  double total_duration() const;
  bool has_gradient() const;
  void validate() const;
  PulseSequence& append(const PulseSequence& other);

  bool operator==(const PulseSequence&) const = default;
};

}  // namespace spinorlat::tb
