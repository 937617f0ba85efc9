#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "wenott/error.hpp"

namespace wenott {

enum class BcKind {
  periodic,
  /// Zeroth-order extrapolation (outflow).
  extrapolate,
  /// Mirror with the normal momentum negated.
  reflective,
  /// Constant conserved state in the ghosts.
  inflow,
  /// Ghosts from a function of (x, y, z, t).
  dirichlet,
  /// Constant state below `split` along `split_axis`, reflective above.
  split_wall,
};

/// Writes the conserved components at a point.
using PointFunction = std::function<void(double x, double y, double z, double t, double* q)>;

struct FaceBc {
  BcKind kind = BcKind::periodic;
  std::vector<double> state;
  PointFunction function;
  int split_axis = 0;
  double split = 0.0;
};

/// Face index = 2*axis + side, side 0 is the low face.
using BoundarySpec = std::array<FaceBc, 6>;

inline constexpr int face_index(int axis, int side) { return 2 * axis + side; }

inline BoundarySpec all_periodic() { return BoundarySpec{}; }

inline std::string to_string(BcKind k) {
  switch (k) {
    case BcKind::periodic: return "periodic";
    case BcKind::extrapolate: return "extrapolate";
    case BcKind::reflective: return "reflective";
    case BcKind::inflow: return "inflow";
    case BcKind::dirichlet: return "dirichlet";
    case BcKind::split_wall: return "split_wall";
  }
  return "?";
}

/// Periodicity has to hold on both faces of an axis.
inline void validate(const BoundarySpec& bc) {
  for (int a = 0; a < 3; ++a) {
    const bool lo = bc[face_index(a, 0)].kind == BcKind::periodic;
    const bool hi = bc[face_index(a, 1)].kind == BcKind::periodic;
    if (lo != hi) throw Error("periodic boundary must be set on both faces of an axis");
  }
}

}  // namespace wenott
