#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "wenott/error.hpp"
#include "wenott/grid.hpp"
#include "wenott/tt/tensor_train.hpp"

namespace wenott::ft {

/// Dense padded 3D field, x slowest (same order as the TT index (i, j, k)).
struct FullField3 {
  Grid grid;
  std::vector<double> data;

  FullField3() = default;
  explicit FullField3(const Grid& g, double fill = 0.0) : grid(g), data(g.padded_size(), fill) {}

  std::size_t index(int p, int q, int r) const {
    return (static_cast<std::size_t>(p) * grid.padded(1) + q) * grid.padded(2) + r;
  }
  double& operator()(int p, int q, int r) { return data[index(p, q, r)]; }
  double operator()(int p, int q, int r) const { return data[index(p, q, r)]; }

  /// Frobenius norm over interior points.
  double interior_norm() const {
    double s = 0.0;
    for (int p = kGhost; p < grid.n[0] + kGhost; ++p)
      for (int q = kGhost; q < grid.n[1] + kGhost; ++q)
        for (int r = kGhost; r < grid.n[2] + kGhost; ++r) s += (*this)(p, q, r) * (*this)(p, q, r);
    return std::sqrt(s);
  }

  bool finite() const {
    for (double v : data)
      if (!std::isfinite(v)) return false;
    return true;
  }

  tt::DenseTensor to_dense() const {
    tt::DenseTensor d(grid.padded_dims());
    d.values = data;
    return d;
  }
};

using FullState = std::vector<FullField3>;

inline FullState make_state(const Grid& g, std::size_t ncomp) { return FullState(ncomp, FullField3(g)); }

}  // namespace wenott::ft
