#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "wenott/boundary.hpp"
#include "wenott/error.hpp"
#include "wenott/ft/boundary.hpp"
#include "wenott/ft/field.hpp"
#include "wenott/ft/laws.hpp"
#include "wenott/ft/weno.hpp"

namespace wenott {

/// Source term s(x, y, z, t, u) added to the right-hand side at interior points.
using SourceFunction = std::function<void(double x, double y, double z, double t, const double* u, double* s)>;

/// Three-stage SSP Runge-Kutta written with a forward-Euler helper
/// fe(u, c) = u + dt L(u, t + c dt) and a combiner comb(a, x, b, y) = a x + b y.
template <class State, class ForwardEuler, class Combine>
State ssprk3(const State& u, ForwardEuler&& fe, Combine&& comb) {
  State u1 = fe(u, 0.0);
  State u2 = comb(0.75, u, 0.25, fe(u1, 1.0));
  return comb(1.0 / 3.0, u, 2.0 / 3.0, fe(u2, 0.5));
}

}  // namespace wenott

namespace wenott::ft {

namespace detail {

inline std::string index_string(int p, int q, int r) {
  return "(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + ")";
}

template <class L>
void check_state(const L& law, const FullState& u) {
  const Grid& g = u.front().grid;
  const std::size_t nc = u.size();
  std::vector<double> q(nc);
  for (int p = 0; p < g.padded(0); ++p)
    for (int s = 0; s < g.padded(1); ++s)
      for (int r = 0; r < g.padded(2); ++r) {
        const std::size_t id = u[0].index(p, s, r);
        for (std::size_t c = 0; c < nc; ++c) q[c] = u[c].data[id];
        try {
          law.check(q.data());
        } catch (const StateError& e) {
          throw StateError(std::string(e.what()) + " at padded index " + index_string(p, s, r));
        }
      }
}

}  // namespace detail

/// Global Lax-Friedrichs speed along an axis over all padded points.
template <class L>
double lf_alpha(const L& law, const FullState& u, int axis) {
  const std::size_t nc = u.size(), total = u[0].data.size();
  std::vector<double> q(nc);
  double alpha = 0.0;
  for (std::size_t id = 0; id < total; ++id) {
    for (std::size_t c = 0; c < nc; ++c) q[c] = u[c].data[id];
    alpha = std::max(alpha, law.lf_speed(axis, q.data()));
  }
  return alpha;
}

/// Semi-discrete WENO5-JS operator with global Lax-Friedrichs splitting; ghosts
/// must already hold boundary values. Zero at ghost points.
template <class L>
FullState rhs(const L& law, const FullState& u, double t = 0.0, const SourceFunction* source = nullptr) {
  const Grid& g = u.front().grid;
  const std::size_t nc = u.size();
  if (nc != law.ncomp()) throw ShapeError("state has the wrong number of components");
  detail::check_state(law, u);
  FullState out = make_state(g, nc);

  for (int axis = 0; axis < 3; ++axis) {
    if (!g.active(axis)) continue;
    const double alpha = lf_alpha(law, u, axis);
    const double h = g.h(axis), eps = h * h;
    const int n = g.n[axis], len = g.padded(axis);
    const int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
    std::array<std::size_t, 3> stride{static_cast<std::size_t>(g.padded(1)) * g.padded(2),
                                      static_cast<std::size_t>(g.padded(2)), 1};
    std::vector<double> fp(static_cast<std::size_t>(len) * nc), fm(fp.size()), flux(static_cast<std::size_t>(len) * nc);
    std::vector<double> q(nc), f(nc);
    for (int s = kGhost; s < g.n[a1] + kGhost; ++s)
      for (int r = kGhost; r < g.n[a2] + kGhost; ++r) {
        std::array<int, 3> idx{};
        idx[axis] = 0;
        idx[a1] = s;
        idx[a2] = r;
        const std::size_t base = u[0].index(idx[0], idx[1], idx[2]);
        const std::size_t st = stride[axis];
        for (int p = 0; p < len; ++p) {
          const std::size_t id = base + static_cast<std::size_t>(p) * st;
          for (std::size_t c = 0; c < nc; ++c) q[c] = u[c].data[id];
          law.flux(axis, q.data(), f.data());
          for (std::size_t c = 0; c < nc; ++c) {
            fp[p * nc + c] = 0.5 * (f[c] + alpha * q[c]);
            fm[p * nc + c] = 0.5 * (f[c] - alpha * q[c]);
          }
        }
        // Interface c+1/2 for c in [kGhost-1, n+kGhost-1].
        for (int c = kGhost - 1; c < n + kGhost; ++c)
          for (std::size_t k = 0; k < nc; ++k) {
            auto P = [&](int o) { return fp[(c + o) * nc + k]; };
            auto M = [&](int o) { return fm[(c + o) * nc + k]; };
            flux[c * nc + k] = weno5(P(-2), P(-1), P(0), P(1), P(2), eps) + weno5(M(3), M(2), M(1), M(0), M(-1), eps);
          }
        for (int p = kGhost; p < n + kGhost; ++p) {
          const std::size_t id = base + static_cast<std::size_t>(p) * st;
          for (std::size_t k = 0; k < nc; ++k) out[k].data[id] -= (flux[p * nc + k] - flux[(p - 1) * nc + k]) / h;
        }
      }
  }

  if (source) {
    std::vector<double> q(nc), sv(nc);
    for (int p = kGhost; p < g.n[0] + kGhost; ++p)
      for (int s = kGhost; s < g.n[1] + kGhost; ++s)
        for (int r = kGhost; r < g.n[2] + kGhost; ++r) {
          const std::size_t id = u[0].index(p, s, r);
          for (std::size_t c = 0; c < nc; ++c) q[c] = u[c].data[id];
          (*source)(g.coord(0, p), g.coord(1, s), g.coord(2, r), t, q.data(), sv.data());
          for (std::size_t c = 0; c < nc; ++c) out[c].data[id] += sv[c];
        }
  }
  for (const auto& c : out)
    if (!c.finite()) throw NumericalError("non-finite value in the full-tensor right-hand side");
  return out;
}

template <class L>
FullState rhs_scalar(const L& law, const FullState& u, double t = 0.0, const SourceFunction* source = nullptr) {
  if (law.ncomp() != 1) throw ShapeError("rhs_scalar needs a scalar law");
  return rhs(law, u, t, source);
}

inline FullState rhs_euler(const Euler& law, const FullState& u, double t = 0.0, const SourceFunction* source = nullptr) {
  return rhs(law, u, t, source);
}

/// a x + b y over all points, ghosts included.
inline FullState lincomb(double a, const FullState& x, double b, const FullState& y) {
  FullState out = x;
  for (std::size_t c = 0; c < x.size(); ++c)
    for (std::size_t id = 0; id < x[c].data.size(); ++id) out[c].data[id] = a * x[c].data[id] + b * y[c].data[id];
  return out;
}

/// One SSPRK3 step; boundary values are refreshed at t, t + dt and t + dt/2
/// before the corresponding right-hand side evaluation.
template <class L>
FullState ssprk3_step(const L& law, const FullState& u, double t, double dt, const BoundarySpec& bc,
                      const SourceFunction* source = nullptr) {
  if (!(dt > 0.0)) throw Error("time step must be positive");
  auto fe = [&](const FullState& s, double c) {
    FullState w = s;
    apply_bc(w, bc, t + c * dt);
    return lincomb(1.0, w, dt, rhs(law, w, t + c * dt, source));
  };
  return ssprk3(u, fe, lincomb);
}

/// CFL step dt = lambda h / max(|u| + a) over the padded field.
template <class L>
double timestep_cfl(const L& law, const FullState& u, double lambda, double h) {
  const std::size_t nc = u.size(), total = u[0].data.size();
  std::vector<double> q(nc);
  double smax = 0.0;
  for (std::size_t id = 0; id < total; ++id) {
    for (std::size_t c = 0; c < nc; ++c) q[c] = u[c].data[id];
    smax = std::max(smax, law.wave_speed(q.data()));
  }
  if (!(smax > 0.0)) throw Error("zero wave speed, CFL step undefined");
  return lambda * h / smax;
}

}  // namespace wenott::ft
