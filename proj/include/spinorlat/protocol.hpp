#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spinorlat/spinor_state.hpp"

namespace spinorlat::control {

enum class PairMode { right, left };

inline PairMode other(PairMode m) { return m == PairMode::right ? PairMode::left : PairMode::right; }
const char* to_string(PairMode m);

// Which member of the driven bond the rotation empties into during
// localization; the inverse rotations of a preparation keep the role of the
// step they undo.
enum class EdgeRole { to_up, to_down };

// 2x2 unitary in the (up, down) basis of every bond of one type. An R bond
// is (|l,up>, |l,down>); an L bond is (|l-1,up>, |l,down>).
struct SU2Rotation {
  Eigen::Matrix2cd matrix = Eigen::Matrix2cd::Identity();
  PairMode mode = PairMode::right;
  EdgeRole role = EdgeRole::to_up;

  SU2Rotation inverse() const { return {matrix.adjoint(), mode, role}; }
};

// Ideal isolated-pair model: applies the rotation to every bond of its type.
void apply_rotation(tb::SpinorState& state, const SU2Rotation& rot, double trim_tol = 1e-12);
tb::SpinorState apply_rotations(tb::SpinorState state, const std::vector<SU2Rotation>& rots);

struct Localization {
  std::vector<SU2Rotation> rotations;
  int site = 0;
  Spin spin = Spin::down;
};

// Rotations (alternating R, L, R, ... with identity steps elided) that move
// all population onto one Wannier ket of the requested spin. Throws
// UnreachableError if the state fails the reachability test.
Localization localize(const tb::SpinorState& state, Spin final_spin, double tol = 1e-9);
std::vector<SU2Rotation> localization_sequence(const tb::SpinorState& state, Spin final_spin, double tol = 1e-9);

struct Preparation {
  std::vector<SU2Rotation> rotations;  // apply in order to |site, spin>
  int site = 0;
  Spin spin = Spin::down;
};

Preparation preparation_sequence(const tb::SpinorState& target, Spin start_spin = Spin::down, double tol = 1e-9);

// pi rotations moving |0,down> to |shift,down>.
std::vector<SU2Rotation> translation_rotations(int shift);

}  // namespace spinorlat::control
