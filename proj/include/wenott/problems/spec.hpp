#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "wenott/boundary.hpp"
#include "wenott/error.hpp"
#include "wenott/ft/laws.hpp"
#include "wenott/ft/solver.hpp"
#include "wenott/grid.hpp"
#include "wenott/ttweno/state.hpp"

namespace wenott::problems {

/// Either dt = c h^p or dt = lambda h / max(|u| + a).
struct DtRule {
  enum class Kind { power_law, cfl };
  Kind kind = Kind::power_law;
  double c = 1.0;
  double p = 5.0 / 3.0;
  double lambda = 0.5;

  static DtRule power_law(double c, double p) { return {Kind::power_law, c, p, 0.5}; }
  static DtRule cfl(double lambda) { return {Kind::cfl, 1.0, 5.0 / 3.0, lambda}; }

  bool well_formed() const {
    return kind == Kind::power_law ? (c > 0.0 && p > 0.0) : (lambda > 0.0 && lambda <= 1.0);
  }
  /// Fixed step for the power law; meaningless for cfl.
  double fixed(double h) const { return c * std::pow(h, p); }
  std::string describe() const {
    return kind == Kind::power_law ? "power_law(" + std::to_string(c) + "," + std::to_string(p) + ")"
                                   : "cfl(" + std::to_string(lambda) + ")";
  }
};

/// Conserved variables at (x, y, z, t) for t in [t_min, t_max].
struct ExactSolution {
  PointFunction eval;
  double t_min = 0.0;
  double t_max = std::numeric_limits<double>::infinity();

  bool valid_at(double t) const { return t >= t_min && t <= t_max; }
};

struct ProblemSpec {
  std::string name;
  std::array<double, 3> lo{0.0, 0.0, 0.0};
  std::array<double, 3> hi{1.0, 1.0, 1.0};
  double gamma = ft::kGammaAir;
  ft::Law law;
  PointFunction initial;
  BoundarySpec bc;
  /// Empty when the system is unforced.
  SourceFunction source;
  double t_final = 1.0;
  DtRule dt;
  double c_eps = 10.0;
  std::optional<ExactSolution> exact;
  /// Cell counts for a nominal resolution N (cells per unit length scale).
  std::function<std::array<int, 3>(int)> cells;
  /// Direct TT construction of the initial state; cross of `initial` otherwise.
  std::function<ttw::TTConservedState(const Grid&, double eps)> tt_initial;

  std::size_t ncomp() const { return ft::law_ncomp(law); }
  double volume() const { return (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]); }

  Grid grid(std::array<int, 3> n) const { return Grid(n, lo, hi); }
  std::array<int, 3> cells_for(int N) const { return cells ? cells(N) : std::array<int, 3>{N, N, N}; }
  Grid grid_for(int N) const { return grid(cells_for(N)); }

  void validate() const {
    if (!(t_final > 0.0)) throw Error(name + ": final time must be positive");
    for (int d = 0; d < 3; ++d)
      if (!(hi[d] > lo[d])) throw Error(name + ": domain extents must be positive");
    if (!dt.well_formed()) throw Error(name + ": malformed dt rule");
    if (!initial) throw Error(name + ": missing initial condition");
    if (!(c_eps > 0.0)) throw Error(name + ": C_eps must be positive");
    wenott::validate(bc);
  }
};

/// Fills every padded point of a full state from a point function.
inline ft::FullState sample(const Grid& g, std::size_t nc, const PointFunction& fn, double t) {
  ft::FullState u = ft::make_state(g, nc);
  std::vector<double> q(nc);
  for (int p = 0; p < g.padded(0); ++p)
    for (int r = 0; r < g.padded(1); ++r)
      for (int s = 0; s < g.padded(2); ++s) {
        fn(g.coord(0, p), g.coord(1, r), g.coord(2, s), t, q.data());
        for (std::size_t c = 0; c < nc; ++c) u[c](p, r, s) = q[c];
      }
  return u;
}

}  // namespace wenott::problems
