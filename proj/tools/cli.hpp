#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinorlat::cli {

// Exit codes shared by all commands.
enum Exit : int {
  kOk = 0,
  kUnreachable = 1,  // check: unreachable state; synth: unreachable target
  kBadInput = 2,     // invalid flags or malformed input files
  kNumeric = 3,      // band convergence failure or open-chain leakage
  kFailed = 4,       // synth below --min-fidelity; compare-hn disagreement
};

int run(int argc, char** argv);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinorlat::cli
