#pragma once

#include <array>
#include <cmath>
#include <algorithm>
#include <cstddef>

#include "wenott/error.hpp"

namespace wenott {

/// Ghost layers per side; the WENO5 stencil needs three.
inline constexpr int kGhost = 3;

enum class Axis : int { x = 0, y = 1, z = 2 };

/// Uniform cell-centred grid over a box. Interior index i in [0, n) maps to
/// padded index i + kGhost; padded extents are n + 2*kGhost.
struct Grid {
  std::array<int, 3> n{};
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};

  Grid() = default;
  Grid(std::array<int, 3> cells, std::array<double, 3> lower, std::array<double, 3> upper)
      : n(cells), lo(lower), hi(upper) {
    for (int d = 0; d < 3; ++d) {
      if (n[d] < 1) throw ShapeError("grid needs at least one cell per axis");
      if (!(hi[d] > lo[d])) throw ShapeError("grid extents must be positive");
    }
  }

  double h(int axis) const { return (hi[axis] - lo[axis]) / n[axis]; }
  int padded(int axis) const { return n[axis] + 2 * kGhost; }
  std::array<std::size_t, 3> padded_dims() const {
    return {static_cast<std::size_t>(padded(0)), static_cast<std::size_t>(padded(1)),
            static_cast<std::size_t>(padded(2))};
  }
  std::size_t padded_size() const {
    return static_cast<std::size_t>(padded(0)) * padded(1) * padded(2);
  }
  std::size_t interior_size() const { return static_cast<std::size_t>(n[0]) * n[1] * n[2]; }

  /// Coordinate of a padded index (ghosts included).
  double coord(int axis, int p) const { return lo[axis] + (p - kGhost + 0.5) * h(axis); }

  /// An axis with a single cell carries no flux.
  bool active(int axis) const { return n[axis] > 1; }

  double volume() const {
    return (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);
  }

  /// Largest spacing; all catalog problems use equal spacing on every active axis.
  double h_max() const {
    double m = 0.0;
    for (int d = 0; d < 3; ++d)
      if (active(d)) m = std::max(m, h(d));
    return m > 0.0 ? m : h(0);
  }

  /// Weight turning a Frobenius norm of interior values into a discrete L2 norm.
  double l2_weight() const { return std::sqrt(h(0) * h(1) * h(2)); }

  bool interior(int axis, int p) const { return p >= kGhost && p < n[axis] + kGhost; }
};

}  // namespace wenott
