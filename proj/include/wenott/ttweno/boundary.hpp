#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "wenott/boundary.hpp"
#include "wenott/ft/boundary.hpp"
#include "wenott/ft/euler.hpp"
#include "wenott/tt/cross.hpp"
#include "wenott/tt/ops.hpp"
#include "wenott/ttweno/state.hpp"

namespace wenott::ttw {

namespace detail {

/// Rank-1 train: value on the ghost slab of (axis, side), zero elsewhere.
inline TensorTrain3 ghost_indicator(const Grid& g, int axis, int side, double value = 1.0) {
  std::array<std::vector<double>, 3> v;
  for (int d = 0; d < 3; ++d) v[d].assign(static_cast<std::size_t>(g.padded(d)), 1.0);
  std::fill(v[axis].begin(), v[axis].end(), 0.0);
  for (int l = 0; l < kGhost; ++l) v[axis][static_cast<std::size_t>(ft::detail::ghost_index(g.n[axis], side, l))] = 1.0;
  for (double& x : v[0]) x *= value;
  return tt::rank1(v[0], v[1], v[2]);
}

/// Weights zeroing the ghost slab of (axis, side).
inline std::vector<double> keep_weights(const Grid& g, int axis, int side) {
  std::vector<double> w(static_cast<std::size_t>(g.padded(axis)), 1.0);
  for (int l = 0; l < kGhost; ++l) w[static_cast<std::size_t>(ft::detail::ghost_index(g.n[axis], side, l))] = 0.0;
  return w;
}

inline void copy_type(TTConservedState& s, BcKind kind, int axis, int side) {
  const Grid& g = s.grid;
  const int nm = ft::normal_momentum(s.ncomp(), axis);
  for (int l = 0; l < kGhost; ++l) {
    const auto to = static_cast<std::size_t>(ft::detail::ghost_index(g.n[axis], side, l));
    const auto from = static_cast<std::size_t>(ft::detail::source_index(kind, g.n[axis], side, l));
    for (std::size_t c = 0; c < s.ncomp(); ++c) {
      const double sign = (kind == BcKind::reflective && static_cast<int>(c) == nm) ? -1.0 : 1.0;
      tt::copy_slice(s.q[c], axis, from, to, sign);
    }
  }
}

}  // namespace detail

/// Copies ghost slices of the axis core from the opposite side of the domain.
inline void apply_bc_periodic(TensorTrain3& x, const Grid& g, int axis) {
  for (int side = 0; side < 2; ++side)
    for (int l = 0; l < kGhost; ++l)
      tt::copy_slice(x, axis, static_cast<std::size_t>(ft::detail::source_index(BcKind::periodic, g.n[axis], side, l)),
                     static_cast<std::size_t>(ft::detail::ghost_index(g.n[axis], side, l)));
}

inline void apply_bc_extrapolate(TTConservedState& s, int axis, int side) {
  detail::copy_type(s, BcKind::extrapolate, axis, side);
}

/// Mirror ghost slices with the normal momentum negated.
inline void apply_bc_symmetry(TTConservedState& s, int axis, int side) {
  detail::copy_type(s, BcKind::reflective, axis, side);
}

/// Fixed conserved state in the ghosts: ghost slices are zeroed, the boundary
/// fields are assembled from rank-1 primitive trains with Hadamard products,
/// and added back with rounding.
inline void apply_bc_inflow_outflow(TTConservedState& s, int axis, int side, const std::vector<double>& conserved,
                                    double gamma, double eps) {
  const Grid& g = s.grid;
  const std::size_t nc = s.ncomp();
  if (conserved.size() != nc) throw Error("inflow state has the wrong number of components");
  std::vector<TensorTrain3> bc(nc);
  if (nc == 5) {
    const ft::EulerPrimitives w = ft::to_primitives(conserved.data(), gamma);
    const TensorTrain3 rho = detail::ghost_indicator(g, axis, side, w.rho);
    const TensorTrain3 u = detail::ghost_indicator(g, axis, side, w.u);
    const TensorTrain3 v = detail::ghost_indicator(g, axis, side, w.v);
    const TensorTrain3 ww = detail::ghost_indicator(g, axis, side, w.w);
    const TensorTrain3 pe = detail::ghost_indicator(g, axis, side, w.p / (gamma - 1.0));
    bc[0] = rho;
    bc[1] = tt::round(tt::hadamard(rho, u), eps);
    bc[2] = tt::round(tt::hadamard(rho, v), eps);
    bc[3] = tt::round(tt::hadamard(rho, ww), eps);
    const TensorTrain3 speed2 =
        tt::round(tt::add(tt::add(tt::hadamard(u, u), tt::hadamard(v, v)), tt::hadamard(ww, ww)), eps);
    bc[4] = tt::round(tt::add(pe, tt::scale(tt::hadamard(rho, speed2), 0.5)), eps);
  } else {
    for (std::size_t c = 0; c < nc; ++c) bc[c] = detail::ghost_indicator(g, axis, side, conserved[c]);
  }
  const std::vector<double> keep = detail::keep_weights(g, axis, side);
  for (std::size_t c = 0; c < nc; ++c)
    s.q[c] = tt::round(tt::add(tt::scale_slices(s.q[c], axis, keep), bc[c]), eps);
}

/// Ghosts from a point function at time t, built by cross interpolation on
/// the ghost slab and embedded into the padded index space.
inline void apply_bc_dirichlet_function(TTConservedState& s, int axis, int side, const PointFunction& fn, double t,
                                        double eps, const TTOptions& opt, TTDiagnostics* diag) {
  const Grid& g = s.grid;
  const std::size_t nc = s.ncomp();
  std::array<std::size_t, 3> dims = g.padded_dims();
  dims[axis] = kGhost;
  const int n = g.n[axis];
  // Slab index l maps to padded index base + l.
  const int base = side == 0 ? 0 : n + kGhost;
  tt::ElementFunction f = [&](const tt::PointBatch& b, std::span<double> out) {
    std::array<int, 3> idx{};
    for (std::size_t p = 0; p < b.size(); ++p) {
      idx = {static_cast<int>(b.i[p]), static_cast<int>(b.j[p]), static_cast<int>(b.k[p])};
      idx[axis] += base;
      fn(g.coord(0, idx[0]), g.coord(1, idx[1]), g.coord(2, idx[2]), t, out.data() + p * nc);
    }
  };
  const TensorTrain3 guess = tt::ones(dims);
  tt::CrossResult r = tt::cross_interpolate(f, dims, nc, &guess, opt.cross_for(eps));
  if (diag) diag->record(r);
  std::vector<TensorTrain3> parts = tt::unfold_trailing(r.tt);
  const std::vector<double> keep = detail::keep_weights(g, axis, side);
  for (std::size_t c = 0; c < nc; ++c) {
    TensorTrain3 full = tt::embed(tt::round(parts[c], eps), axis, static_cast<std::size_t>(base),
                                  static_cast<std::size_t>(g.padded(axis)));
    s.q[c] = tt::round(tt::add(tt::scale_slices(s.q[c], axis, keep), full), eps);
  }
}

/// Constant state where the split coordinate lies below `split`, mirror
/// (reflective wall) elsewhere.
inline void apply_bc_split_wall(TTConservedState& s, int axis, int side, const FaceBc& bc, double eps) {
  const Grid& g = s.grid;
  const std::size_t nc = s.ncomp();
  if (bc.state.size() != nc) throw Error("split wall state has the wrong number of components");
  const int sa = bc.split_axis;
  std::vector<double> below(static_cast<std::size_t>(g.padded(sa))), above(below.size());
  for (int p = 0; p < g.padded(sa); ++p) {
    const bool lt = g.coord(sa, p) < bc.split;
    below[static_cast<std::size_t>(p)] = lt ? 1.0 : 0.0;
    above[static_cast<std::size_t>(p)] = lt ? 0.0 : 1.0;
  }
  TTConservedState mirror = s;
  detail::copy_type(mirror, BcKind::reflective, axis, side);
  const std::vector<double> keep = detail::keep_weights(g, axis, side);
  std::vector<double> ghost(keep.size());
  for (std::size_t p = 0; p < keep.size(); ++p) ghost[p] = 1.0 - keep[p];
  for (std::size_t c = 0; c < nc; ++c) {
    TensorTrain3 wall = tt::scale_slices(tt::scale_slices(mirror.q[c], axis, ghost), sa, above);
    TensorTrain3 fixed = tt::scale_slices(detail::ghost_indicator(g, axis, side, bc.state[c]), sa, below);
    TensorTrain3 inner = tt::scale_slices(s.q[c], axis, keep);
    s.q[c] = tt::round(tt::add(tt::add(inner, wall), fixed), eps);
  }
}

/// All faces in the order x, y, z and low before high.
inline void apply_bc(TTConservedState& s, const BoundarySpec& bc, double t, double eps, double gamma,
                     const TTOptions& opt, TTDiagnostics* diag) {
  for (int axis = 0; axis < 3; ++axis) {
    if (bc[face_index(axis, 0)].kind == BcKind::periodic) {
      for (auto& c : s.q) apply_bc_periodic(c, s.grid, axis);
      continue;
    }
    for (int side = 0; side < 2; ++side) {
      const FaceBc& f = bc[face_index(axis, side)];
      switch (f.kind) {
        case BcKind::periodic: break;
        case BcKind::extrapolate: apply_bc_extrapolate(s, axis, side); break;
        case BcKind::reflective: apply_bc_symmetry(s, axis, side); break;
        case BcKind::inflow: apply_bc_inflow_outflow(s, axis, side, f.state, gamma, eps); break;
        case BcKind::dirichlet: apply_bc_dirichlet_function(s, axis, side, f.function, t, eps, opt, diag); break;
        case BcKind::split_wall: apply_bc_split_wall(s, axis, side, f, eps); break;
      }
    }
  }
}

}  // namespace wenott::ttw
