#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spinorlat {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Pseudo-spin label. The numeric value is the offset of the spin inside a
// site when sub-wells are flattened as p = 2 * l + s.
enum class Spin : int { down = 0, up = 1 };

inline Spin flip(Spin s) { return s == Spin::up ? Spin::down : Spin::up; }
inline const char* to_string(Spin s) { return s == Spin::up ? "up" : "down"; }

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Open-chain evolution needed more sites than allowed to keep the boundary
// amplitude negligible.
struct LeakageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnreachableError : std::runtime_error {
  int translation;
  double magnitude;
  UnreachableError(int j, double mag, const std::string& what)
      : std::runtime_error(what), translation(j), magnitude(mag) {}
};

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace spinorlat
