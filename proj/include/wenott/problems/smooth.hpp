#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "wenott/error.hpp"
#include "wenott/ft/euler.hpp"
#include "wenott/problems/spec.hpp"

namespace wenott::problems {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ---- linear advection --------------------------------------------------

inline double advection_exact(double x, double y, double z, double t) {
  return std::sin(kTwoPi * (x + y + z - 3.0 * t));
}

inline ProblemSpec linear_advection_3d() {
  ProblemSpec p;
  p.name = "advection";
  p.law = ft::LinearAdvection{};
  p.gamma = 0.0;
  p.initial = [](double x, double y, double z, double, double* q) { q[0] = advection_exact(x, y, z, 0.0); };
  p.bc = all_periodic();
  p.t_final = 0.1;
  p.dt = DtRule::power_law(1.0, 5.0 / 3.0);
  p.c_eps = 500.0;
  p.exact = ExactSolution{[](double x, double y, double z, double t, double* q) { q[0] = advection_exact(x, y, z, t); }};
  return p;
}

// ---- Burgers -----------------------------------------------------------

inline double burgers_initial(double s) { return 0.5 + 0.5 * std::sin(kTwoPi * s); }

/// Root of u = u0(s - 3 u t), s = x + y + z, by Newton iteration started
/// from u0(s). Valid before the breaking time 1/(3 pi).
inline double burgers_exact(double s, double t) {
  double u = burgers_initial(s);
  for (int it = 0; it < 100; ++it) {
    const double a = kTwoPi * (s - 3.0 * u * t);
    const double g = u - 0.5 - 0.5 * std::sin(a);
    const double dg = 1.0 + 3.0 * std::numbers::pi * t * std::cos(a);
    const double step = g / dg;
    u -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(u))) return u;
  }
  throw NumericalError("burgers_exact: Newton iteration did not converge");
}

inline ProblemSpec burgers_3d() {
  ProblemSpec p;
  p.name = "burgers";
  p.law = ft::Burgers{};
  p.gamma = 0.0;
  p.initial = [](double x, double y, double z, double, double* q) { q[0] = burgers_initial(x + y + z); };
  p.bc = all_periodic();
  p.t_final = 1.0 / (12.0 * std::numbers::pi);
  p.dt = DtRule::power_law(1.0, 5.0 / 3.0);
  p.c_eps = 10.0;
  p.exact = ExactSolution{[](double x, double y, double z, double t, double* q) { q[0] = burgers_exact(x + y + z, t); },
                          0.0, 1.0 / (3.0 * std::numbers::pi)};
  return p;
}

// ---- isentropic vortex -------------------------------------------------

struct VortexParams {
  double beta = 5.0;
  double x0 = 5.0, y0 = 5.0;
  double gamma = ft::kGammaAir;
};

/// Vortex centred at (x0 + t, y0 + t) on the freestream (1, 1, 1, 0, 1):
/// du = -beta/(2 pi) e^((1-r^2)/2) dy, dv = beta/(2 pi) e^((1-r^2)/2) dx,
/// dT = -(gamma-1) beta^2/(8 gamma pi^2) e^(1-r^2), rho = T^(1/(gamma-1)),
/// p = rho^gamma.
inline ft::EulerPrimitives vortex_primitives(double x, double y, double t, const VortexParams& v = {}) {
  const double pi = std::numbers::pi;
  const double dx = x - v.x0 - t, dy = y - v.y0 - t;
  const double r2 = dx * dx + dy * dy;
  const double e = std::exp(0.5 * (1.0 - r2));
  const double T = 1.0 - (v.gamma - 1.0) * v.beta * v.beta / (8.0 * v.gamma * pi * pi) * e * e;
  ft::EulerPrimitives s;
  s.gamma = v.gamma;
  s.rho = std::pow(T, 1.0 / (v.gamma - 1.0));
  s.u = 1.0 - v.beta / (2.0 * pi) * e * dy;
  s.v = 1.0 + v.beta / (2.0 * pi) * e * dx;
  s.w = 0.0;
  s.p = std::pow(s.rho, v.gamma);
  return s;
}

inline ProblemSpec isentropic_vortex() {
  ProblemSpec p;
  p.name = "vortex";
  p.lo = {0.0, 0.0, 0.0};
  p.hi = {10.0, 10.0, 10.0};
  p.gamma = ft::kGammaAir;
  p.law = ft::Euler{p.gamma};
  PointFunction exact = [](double x, double y, double, double t, double* q) {
    ft::to_conserved(vortex_primitives(x, y, t), q);
  };
  p.initial = [exact](double x, double y, double z, double, double* q) { exact(x, y, z, 0.0, q); };
  for (int axis = 0; axis < 2; ++axis)
    for (int side = 0; side < 2; ++side) {
      FaceBc& f = p.bc[face_index(axis, side)];
      f.kind = BcKind::dirichlet;
      f.function = exact;
    }
  p.t_final = 1.0;
  p.dt = DtRule::power_law(0.5, 5.0 / 3.0);
  p.c_eps = 2.0 / std::sqrt(p.volume());
  p.cells = [](int N) { return std::array<int, 3>{N, N, N}; };
  p.exact = ExactSolution{exact};
  return p;
}

// ---- manufactured solution ---------------------------------------------

/// Which thermodynamic variable the fifth prescribed field stands for.
enum class MmsEnergy { internal_energy, pressure };

namespace detail {

/// Value and derivative with respect to the phase.
struct Jet {
  double v = 0.0, d = 0.0;
};
inline Jet operator+(Jet a, Jet b) { return {a.v + b.v, a.d + b.d}; }
inline Jet operator-(Jet a, Jet b) { return {a.v - b.v, a.d - b.d}; }
inline Jet operator*(Jet a, Jet b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
inline Jet operator*(double s, Jet a) { return {s * a.v, s * a.d}; }

struct MmsFields {
  std::array<Jet, 5> U;
  std::array<std::array<Jet, 5>, 3> F;
};

inline MmsFields mms_fields(double x, double y, double z, double t, double gamma, MmsEnergy kind) {
  const double phi = kTwoPi * (x + y + z - t);
  const double s = std::sin(phi), c = std::cos(phi);
  const Jet rho{1.0 + 0.1 * s, 0.1 * c};
  const std::array<Jet, 3> vel{Jet{1.0 + 0.1 * s, 0.1 * c}, Jet{1.0 + 0.1 * c, -0.1 * s}, Jet{1.0 + 0.1 * c, -0.1 * s}};
  const Jet e{1.0 + 0.1 * c, -0.1 * s};
  const Jet ke = 0.5 * (vel[0] * vel[0] + vel[1] * vel[1] + vel[2] * vel[2]);
  Jet p, rhoE;
  if (kind == MmsEnergy::internal_energy) {
    p = (gamma - 1.0) * (rho * e);
    rhoE = rho * (e + ke);
  } else {
    p = e;
    rhoE = (1.0 / (gamma - 1.0)) * e + rho * ke;
  }
  MmsFields f;
  f.U = {rho, rho * vel[0], rho * vel[1], rho * vel[2], rhoE};
  for (int d = 0; d < 3; ++d) {
    f.F[d][0] = rho * vel[d];
    for (int k = 0; k < 3; ++k) f.F[d][1 + k] = rho * vel[k] * vel[d];
    f.F[d][1 + d] = f.F[d][1 + d] + p;
    f.F[d][4] = (rhoE + p) * vel[d];
  }
  return f;
}

}  // namespace detail

/// Conserved manufactured fields; every field depends on x + y + z - t only.
inline void mms_conserved(double x, double y, double z, double t, double gamma, MmsEnergy kind, double* q) {
  const auto f = detail::mms_fields(x, y, z, t, gamma, kind);
  for (int c = 0; c < 5; ++c) q[c] = f.U[c].v;
}

/// S = dU/dt + dF/dx + dG/dy + dH/dz. With d/dt = -2 pi d/dphi and
/// d/dx = d/dy = d/dz = 2 pi d/dphi this is 2 pi (F' + G' + H' - U').
inline void mms_source(double x, double y, double z, double t, double gamma, MmsEnergy kind, double* s) {
  const auto f = detail::mms_fields(x, y, z, t, gamma, kind);
  for (int c = 0; c < 5; ++c) s[c] = kTwoPi * (f.F[0][c].d + f.F[1][c].d + f.F[2][c].d - f.U[c].d);
}

inline ProblemSpec manufactured_solution(MmsEnergy kind = MmsEnergy::internal_energy) {
  ProblemSpec p;
  p.name = "manufactured";
  p.gamma = ft::kGammaAir;
  p.law = ft::Euler{p.gamma};
  const double gamma = p.gamma;
  PointFunction exact = [gamma, kind](double x, double y, double z, double t, double* q) {
    mms_conserved(x, y, z, t, gamma, kind, q);
  };
  p.initial = [exact](double x, double y, double z, double, double* q) { exact(x, y, z, 0.0, q); };
  p.bc = all_periodic();
  p.source = [gamma, kind](double x, double y, double z, double t, const double*, double* s) {
    mms_source(x, y, z, t, gamma, kind, s);
  };
  p.t_final = 0.1;
  p.dt = DtRule::power_law(0.5, 5.0 / 3.0);
  p.c_eps = 10.0;
  p.exact = ExactSolution{exact};
  return p;
}

}  // namespace wenott::problems
