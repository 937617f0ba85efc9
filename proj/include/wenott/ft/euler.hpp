#pragma once

#include <cmath>
#include <string>

#include "wenott/error.hpp"

namespace wenott::ft {

inline constexpr double kGammaAir = 1.4;

struct EulerPrimitives {
  double rho = 1.0, u = 0.0, v = 0.0, w = 0.0, p = 1.0;
  double gamma = kGammaAir;

  double sound_speed() const { return std::sqrt(gamma * p / rho); }
  double velocity(int axis) const { return axis == 0 ? u : axis == 1 ? v : w; }
  double speed() const { return std::sqrt(u * u + v * v + w * w); }
};

/// Ideal-gas pressure of (rho, rho u, rho v, rho w, rho E).
inline double pressure(const double* q, double gamma) {
  if (!(q[0] > 0.0)) throw StateError("nonpositive density " + std::to_string(q[0]));
  const double kin = 0.5 * (q[1] * q[1] + q[2] * q[2] + q[3] * q[3]) / q[0];
  return (gamma - 1.0) * (q[4] - kin);
}

inline EulerPrimitives to_primitives(const double* q, double gamma) {
  EulerPrimitives s;
  s.gamma = gamma;
  s.p = pressure(q, gamma);
  s.rho = q[0];
  s.u = q[1] / q[0];
  s.v = q[2] / q[0];
  s.w = q[3] / q[0];
  return s;
}

inline void to_conserved(const EulerPrimitives& s, double* q) {
  q[0] = s.rho;
  q[1] = s.rho * s.u;
  q[2] = s.rho * s.v;
  q[3] = s.rho * s.w;
  q[4] = s.p / (s.gamma - 1.0) + 0.5 * s.rho * (s.u * s.u + s.v * s.v + s.w * s.w);
}

/// Physical flux along `axis`.
inline void euler_flux(int axis, const double* q, double gamma, double* f) {
  const double rho = q[0];
  const double vn = q[1 + axis] / rho;
  const double p = pressure(q, gamma);
  f[0] = q[1 + axis];
  f[1] = q[1] * vn;
  f[2] = q[2] * vn;
  f[3] = q[3] * vn;
  f[1 + axis] += p;
  f[4] = (q[4] + p) * vn;
}

}  // namespace wenott::ft
