#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "wenott/ft/euler.hpp"
#include "wenott/problems/riemann.hpp"
#include "wenott/problems/spec.hpp"
#include "wenott/tt/ops.hpp"
#include "wenott/ttweno/solver.hpp"

namespace wenott::problems {

using ft::EulerPrimitives;

inline EulerPrimitives primitives(double rho, double u, double v, double w, double p, double gamma) {
  EulerPrimitives s{rho, u, v, w, p, gamma};
  return s;
}

inline std::vector<double> conserved(const EulerPrimitives& s) {
  std::vector<double> q(5);
  ft::to_conserved(s, q.data());
  return q;
}

/// Rank-1 state for data varying along x only: each component is
/// profile(x) (x) ones (x) ones.
inline ttw::TTConservedState x_profile_state(const Grid& g, std::size_t nc, const PointFunction& fn) {
  const auto dims = g.padded_dims();
  std::vector<std::vector<double>> prof(nc, std::vector<double>(dims[0]));
  std::vector<double> q(nc);
  for (std::size_t i = 0; i < dims[0]; ++i) {
    fn(g.coord(0, static_cast<int>(i)), g.coord(1, kGhost), g.coord(2, kGhost), 0.0, q.data());
    for (std::size_t c = 0; c < nc; ++c) prof[c][i] = q[c];
  }
  ttw::TTConservedState s{g, {}};
  for (std::size_t c = 0; c < nc; ++c)
    s.q.push_back(tt::rank1(prof[c], std::vector<double>(dims[1], 1.0), std::vector<double>(dims[2], 1.0)));
  return s;
}

inline void set_x_outflow(BoundarySpec& bc) {
  bc[face_index(0, 0)].kind = BcKind::extrapolate;
  bc[face_index(0, 1)].kind = BcKind::extrapolate;
}

// ---- Sod ---------------------------------------------------------------

inline EulerPrimitives sod_left(double gamma = ft::kGammaAir) { return primitives(1.0, 0, 0, 0, 1.0, gamma); }
inline EulerPrimitives sod_right(double gamma = ft::kGammaAir) { return primitives(0.125, 0, 0, 0, 0.1, gamma); }

inline ProblemSpec sod_shock_tube() {
  ProblemSpec p;
  p.name = "sod";
  p.gamma = ft::kGammaAir;
  p.law = ft::Euler{p.gamma};
  const EulerPrimitives L = sod_left(), R = sod_right();
  p.initial = [L, R](double x, double, double, double, double* q) { ft::to_conserved(x < 0.5 ? L : R, q); };
  set_x_outflow(p.bc);
  p.t_final = 0.2;
  p.dt = DtRule::cfl(0.5);
  p.c_eps = 10.0;
  const double gamma = p.gamma;
  p.exact = ExactSolution{[L, R, gamma](double x, double, double, double t, double* q) {
    if (t <= 0.0) {
      ft::to_conserved(x < 0.5 ? L : R, q);
      return;
    }
    ft::to_conserved(exact_riemann(L, R, gamma, (x - 0.5) / t), q);
  }};
  const PointFunction ic = p.initial;
  p.tt_initial = [ic](const Grid& g, double) { return x_profile_state(g, 5, ic); };
  return p;
}

// ---- Shu-Osher ---------------------------------------------------------

inline ProblemSpec shu_osher() {
  ProblemSpec p;
  p.name = "shu_osher";
  p.lo = {-5.0, -5.0, -5.0};
  p.hi = {5.0, 5.0, 5.0};
  p.gamma = ft::kGammaAir;
  p.law = ft::Euler{p.gamma};
  const double gamma = p.gamma;
  p.initial = [gamma](double x, double, double, double, double* q) {
    if (x < -4.0)
      ft::to_conserved(primitives(3.857143, 2.629369, 0, 0, 10.33333, gamma), q);
    else
      ft::to_conserved(primitives(1.0 + 0.2 * std::sin(5.0 * x), 0, 0, 0, 1.0, gamma), q);
  };
  set_x_outflow(p.bc);
  p.t_final = 1.8;
  p.dt = DtRule::cfl(0.5);
  p.c_eps = 10.0;
  const PointFunction ic = p.initial;
  p.tt_initial = [ic](const Grid& g, double) { return x_profile_state(g, 5, ic); };
  return p;
}

// ---- double Mach reflection --------------------------------------------

inline EulerPrimitives dmr_post_shock(double gamma = ft::kGammaAir) {
  const double theta = std::numbers::pi / 3.0;
  return primitives(8.0, 8.25 * std::sin(theta), -8.25 * std::cos(theta), 0.0, 116.5, gamma);
}
inline EulerPrimitives dmr_pre_shock(double gamma = ft::kGammaAir) { return primitives(1.4, 0, 0, 0, 1.0, gamma); }

/// Shock position x_s(y, t) = 1/6 + (y + 20 t)/sqrt(3).
inline double dmr_shock_x(double y, double t) { return 1.0 / 6.0 + (y + 20.0 * t) / std::sqrt(3.0); }

inline ProblemSpec double_mach_reflection() {
  ProblemSpec p;
  p.name = "dmr";
  p.lo = {0.0, 0.0, 0.0};
  p.hi = {4.0, 1.0, 1.0};
  p.gamma = ft::kGammaAir;
  p.law = ft::Euler{p.gamma};
  const EulerPrimitives post = dmr_post_shock(), pre = dmr_pre_shock();
  PointFunction shock = [post, pre](double x, double y, double, double t, double* q) {
    ft::to_conserved(x < dmr_shock_x(y, t) ? post : pre, q);
  };
  p.initial = [shock](double x, double y, double z, double, double* q) { shock(x, y, z, 0.0, q); };
  p.bc[face_index(0, 0)].kind = BcKind::extrapolate;
  p.bc[face_index(0, 1)].kind = BcKind::inflow;
  p.bc[face_index(0, 1)].state = conserved(pre);
  FaceBc& bottom = p.bc[face_index(1, 0)];
  bottom.kind = BcKind::split_wall;
  bottom.state = conserved(post);
  bottom.split_axis = 0;
  bottom.split = 1.0 / 6.0;
  p.bc[face_index(1, 1)].kind = BcKind::dirichlet;
  p.bc[face_index(1, 1)].function = shock;
  p.t_final = 0.2;
  p.dt = DtRule::cfl(0.5);
  p.c_eps = 100.0;
  p.cells = [](int N) { return std::array<int, 3>{4 * N, N, N}; };
  p.tt_initial = [shock](const Grid& g, double eps) {
    const auto dims = g.padded_dims();
    std::vector<std::vector<double>> profiles(dims[1], std::vector<double>(5 * dims[0]));
    double q[5];
    for (std::size_t j = 0; j < dims[1]; ++j)
      for (std::size_t i = 0; i < dims[0]; ++i) {
        shock(g.coord(0, static_cast<int>(i)), g.coord(1, static_cast<int>(j)), 0.0, 0.0, q);
        for (std::size_t c = 0; c < 5; ++c) profiles[j][c * dims[0] + i] = q[c];
      }
    return ttw::rank1_superposition_ic(g, 5, profiles, eps);
  };
  return p;
}

// ---- Rayleigh-Taylor ---------------------------------------------------

struct RayleighTaylorParams {
  double amplitude = 0.025;
  double gamma = 5.0 / 3.0;
};

inline EulerPrimitives rayleigh_taylor_primitives(double x, double y, const RayleighTaylorParams& rp = {}) {
  const bool heavy = y <= 0.5;
  const double rho = heavy ? 2.0 : 1.0;
  const double p = heavy ? 2.0 * y + 1.0 : y + 1.5;
  const double a = std::sqrt(rp.gamma * p / rho);
  return primitives(rho, 0.0, -rp.amplitude * a * std::cos(8.0 * std::numbers::pi * x), 0.0, p, rp.gamma);
}

/// Gravity g = +1 along y: S = (0, 0, rho, 0, rho v).
inline void gravity_source(double, double, double, double, const double* u, double* s) {
  s[0] = 0.0;
  s[1] = 0.0;
  s[2] = u[0];
  s[3] = 0.0;
  s[4] = u[2];
}

inline ProblemSpec rayleigh_taylor(RayleighTaylorParams rp = {}) {
  ProblemSpec p;
  p.name = "rayleigh_taylor";
  p.lo = {0.0, 0.0, 0.0};
  p.hi = {0.25, 1.0, 0.25};
  p.gamma = rp.gamma;
  p.law = ft::Euler{p.gamma};
  p.initial = [rp](double x, double y, double, double, double* q) {
    ft::to_conserved(rayleigh_taylor_primitives(x, y, rp), q);
  };
  p.bc[face_index(0, 0)].kind = BcKind::reflective;
  p.bc[face_index(0, 1)].kind = BcKind::reflective;
  for (int side = 0; side < 2; ++side) {
    p.bc[face_index(1, side)].kind = BcKind::dirichlet;
    p.bc[face_index(1, side)].function = p.initial;
  }
  p.source = gravity_source;
  p.t_final = 1.95;
  p.dt = DtRule::cfl(0.5);
  p.c_eps = 100.0;
  p.cells = [](int N) { return std::array<int, 3>{std::max(1, N / 4), N, std::max(1, N / 4)}; };
  return p;
}

}  // namespace wenott::problems
