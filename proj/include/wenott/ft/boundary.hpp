#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "wenott/boundary.hpp"
#include "wenott/ft/field.hpp"

namespace wenott::ft {

/// Normal-momentum component for the Euler system, -1 for scalar laws.
inline int normal_momentum(std::size_t ncomp, int axis) { return ncomp == 5 ? 1 + axis : -1; }

namespace detail {

/// Padded index of ghost layer l (0 nearest the interior) on one side.
inline int ghost_index(int n, int side, int l) { return side == 0 ? kGhost - 1 - l : n + kGhost + l; }

/// Interior index a copy-type BC reads for ghost layer l.
inline int source_index(BcKind kind, int n, int side, int l) {
  switch (kind) {
    case BcKind::periodic: return side == 0 ? ghost_index(n, 0, l) + n : ghost_index(n, 1, l) - n;
    case BcKind::extrapolate: return side == 0 ? kGhost : n + kGhost - 1;
    default: return side == 0 ? kGhost + l : n + kGhost - 1 - l;  // mirror
  }
}

/// Calls fn(p, q, r) over the ghost plane `g` of `axis`.
template <class Fn>
void for_plane(const Grid& grid, int axis, int g, Fn&& fn) {
  const int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
  std::array<int, 3> idx{};
  idx[axis] = g;
  for (int s = 0; s < grid.padded(a1); ++s)
    for (int t = 0; t < grid.padded(a2); ++t) {
      idx[a1] = s;
      idx[a2] = t;
      fn(idx);
    }
}

}  // namespace detail

/// Fills one face's ghost layers at time t.
inline void apply_face(FullState& u, const FaceBc& bc, int axis, int side, double t) {
  const Grid& grid = u.front().grid;
  const int n = grid.n[axis];
  const std::size_t nc = u.size();
  const int nm = normal_momentum(nc, axis);
  std::vector<double> q(nc);
  for (int l = 0; l < kGhost; ++l) {
    const int g = detail::ghost_index(n, side, l);
    switch (bc.kind) {
      case BcKind::periodic:
      case BcKind::extrapolate:
      case BcKind::reflective: {
        const int src = detail::source_index(bc.kind, n, side, l);
        detail::for_plane(grid, axis, g, [&](std::array<int, 3> idx) {
          std::array<int, 3> from = idx;
          from[axis] = src;
          for (std::size_t c = 0; c < nc; ++c) {
            const double sign = (bc.kind == BcKind::reflective && static_cast<int>(c) == nm) ? -1.0 : 1.0;
            u[c](idx[0], idx[1], idx[2]) = sign * u[c](from[0], from[1], from[2]);
          }
        });
        break;
      }
      case BcKind::inflow:
        if (bc.state.size() != nc) throw Error("inflow state has the wrong number of components");
        detail::for_plane(grid, axis, g, [&](std::array<int, 3> idx) {
          for (std::size_t c = 0; c < nc; ++c) u[c](idx[0], idx[1], idx[2]) = bc.state[c];
        });
        break;
      case BcKind::dirichlet:
        detail::for_plane(grid, axis, g, [&](std::array<int, 3> idx) {
          bc.function(grid.coord(0, idx[0]), grid.coord(1, idx[1]), grid.coord(2, idx[2]), t, q.data());
          for (std::size_t c = 0; c < nc; ++c) u[c](idx[0], idx[1], idx[2]) = q[c];
        });
        break;
      case BcKind::split_wall: {
        if (bc.state.size() != nc) throw Error("split wall state has the wrong number of components");
        const int src = detail::source_index(BcKind::reflective, n, side, l);
        detail::for_plane(grid, axis, g, [&](std::array<int, 3> idx) {
          if (grid.coord(bc.split_axis, idx[bc.split_axis]) < bc.split) {
            for (std::size_t c = 0; c < nc; ++c) u[c](idx[0], idx[1], idx[2]) = bc.state[c];
          } else {
            std::array<int, 3> from = idx;
            from[axis] = src;
            for (std::size_t c = 0; c < nc; ++c) {
              const double sign = static_cast<int>(c) == nm ? -1.0 : 1.0;
              u[c](idx[0], idx[1], idx[2]) = sign * u[c](from[0], from[1], from[2]);
            }
          }
        });
        break;
      }
    }
  }
}

/// All faces, x then y then z, low face first.
inline void apply_bc(FullState& u, const BoundarySpec& bc, double t) {
  for (int axis = 0; axis < 3; ++axis)
    for (int side = 0; side < 2; ++side) apply_face(u, bc[face_index(axis, side)], axis, side, t);
}

}  // namespace wenott::ft
