#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wenott/error.hpp"
#include "wenott/ft/field.hpp"
#include "wenott/grid.hpp"
#include "wenott/tt/cross.hpp"
#include "wenott/tt/ops.hpp"

namespace wenott::ttw {

using tt::TensorTrain3;

/// Conserved variables as one TT per component, all on the padded grid.
struct TTConservedState {
  Grid grid;
  std::vector<TensorTrain3> q;

  std::size_t ncomp() const { return q.size(); }

  void validate() const {
    for (const auto& c : q) {
      if (c.mode_sizes() != grid.padded_dims()) throw ShapeError("state component has the wrong mode sizes");
      if (!c.finite()) throw NumericalError("state component has non-finite cores");
    }
  }

  std::vector<std::array<std::size_t, 2>> ranks() const {
    std::vector<std::array<std::size_t, 2>> r;
    for (const auto& c : q) r.push_back(c.ranks());
    return r;
  }

  std::size_t element_count() const {
    std::size_t s = 0;
    for (const auto& c : q) s += c.element_count();
    return s;
  }

  /// Index of the component with the largest r1 * r2.
  std::size_t max_rank_component() const {
    std::size_t best = 0;
    for (std::size_t c = 1; c < q.size(); ++c) {
      const auto a = q[c].ranks(), b = q[best].ranks();
      if (a[0] * a[1] > b[0] * b[1]) best = c;
    }
    return best;
  }
};

inline TTConservedState from_full_state(const ft::FullState& u, double eps) {
  TTConservedState s{u.front().grid, {}};
  for (const auto& c : u) s.q.push_back(tt::from_full(c.to_dense(), eps));
  return s;
}

inline ft::FullState to_full_state(const TTConservedState& s) {
  ft::FullState u = ft::make_state(s.grid, s.ncomp());
  for (std::size_t c = 0; c < s.ncomp(); ++c) u[c].data = tt::to_full(s.q[c]).values;
  return u;
}

/// Frobenius norm over interior points.
inline double interior_norm(const TensorTrain3& x, const Grid& g) {
  std::array<std::size_t, 3> lo{}, hi{};
  for (int d = 0; d < 3; ++d) {
    lo[d] = kGhost;
    hi[d] = static_cast<std::size_t>(g.n[d] + kGhost);
  }
  return tt::norm_frobenius(tt::sub_box(x, lo, hi));
}

/// 1 on interior indices of one axis, 0 on ghosts.
inline std::vector<double> interior_mask(const Grid& g, int axis) {
  std::vector<double> w(static_cast<std::size_t>(g.padded(axis)), 0.0);
  for (int p = kGhost; p < g.n[axis] + kGhost; ++p) w[static_cast<std::size_t>(p)] = 1.0;
  return w;
}

inline TensorTrain3 mask_interior(const TensorTrain3& x, const Grid& g) {
  TensorTrain3 y = x;
  for (int d = 0; d < 3; ++d) y = tt::scale_slices(y, d, interior_mask(g, d));
  return y;
}

struct EpsController {
  double c_eps = 10.0;
  double volume = 1.0;
  std::optional<double> fixed;

  static EpsController dynamic(double c_eps, double volume) {
    if (!(c_eps > 0.0) || !(volume > 0.0)) throw Error("C_eps and volume must be positive");
    return {c_eps, volume, std::nullopt};
  }
  static EpsController fixed_value(double eps) {
    if (!(eps > 0.0)) throw Error("fixed eps must be positive");
    EpsController c;
    c.fixed = eps;
    return c;
  }
};

/// eps_TT = C_eps sqrt(V) h^(7/2) / max_q ||q||_F, interior norms.
inline double eps_tt(double max_norm, double h, const EpsController& ctrl) {
  if (ctrl.fixed) return *ctrl.fixed;
  if (!(max_norm > 0.0)) throw StateError("eps_tt: state has zero norm");
  return ctrl.c_eps * std::sqrt(ctrl.volume) * std::pow(h, 3.5) / max_norm;
}

inline double eps_tt(const TTConservedState& s, double h, const EpsController& ctrl) {
  if (ctrl.fixed) return *ctrl.fixed;
  double mx = 0.0;
  for (const auto& c : s.q) mx = std::max(mx, interior_norm(c, s.grid));
  return eps_tt(mx, h, ctrl);
}

/// Trains of a group (the components of a state, the split fluxes) whose norm
/// is below this fraction of the largest one are round-off and set to zero.
inline constexpr double kNoiseFloor = 1e-13;

/// Rounds every train of a group at relative eps, with the absolute floor
/// noise * (largest norm in the group).
inline void round_group(std::vector<TensorTrain3>& parts, double eps, double noise = kNoiseFloor) {
  double scale = 0.0;
  if (noise > 0.0)
    for (const auto& x : parts) scale = std::max(scale, tt::norm_frobenius(x));
  for (auto& x : parts) x = tt::round(x, eps, 0, noise * scale);
}

/// Knobs shared by every cross call of the solver.
struct TTOptions {
  tt::CrossConfig cross;
  /// Opt-in lower bound on eps_cross (0 disables).
  double eps_cross_floor = 0.0;
  double noise_floor = kNoiseFloor;

  tt::CrossConfig cross_for(double eps) const {
    tt::CrossConfig c = cross;
    c.eps = std::max(eps, eps_cross_floor);
    return c;
  }
};

/// Counters filled while the solver runs.
struct TTDiagnostics {
  std::size_t cross_calls = 0;
  std::size_t cross_warnings = 0;
  std::size_t evaluations = 0;
  std::string last_warning;
  /// Component index used as the LF-cross guess in the latest call.
  std::size_t last_lf_guess = 0;

  void record(const tt::CrossResult& r) {
    ++cross_calls;
    evaluations += r.evaluations;
    if (!r.warning.empty()) {
      ++cross_warnings;
      last_warning = r.warning;
    }
  }
};

struct StepRecord {
  std::size_t step = 0;
  double t = 0.0;
  double dt = 0.0;
  double eps_tt = 0.0;
  std::vector<std::array<std::size_t, 2>> ranks;
  double wall_ms = 0.0;

  bool operator==(const StepRecord&) const = default;
};

using TelemetrySink = std::function<void(const StepRecord&)>;

}  // namespace wenott::ttw
