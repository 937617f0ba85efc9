#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <variant>

#include "wenott/error.hpp"
#include "wenott/ft/euler.hpp"

namespace wenott::ft {

// A law provides ncomp, flux(axis, u, f), lf_speed(axis, u) (|f'| along an
// axis), wave_speed(u) (for the CFL rule), check(u) and normal_momentum(axis).

struct LinearAdvection {
  std::array<double, 3> velocity{1.0, 1.0, 1.0};

  std::size_t ncomp() const { return 1; }
  void flux(int axis, const double* u, double* f) const { f[0] = velocity[axis] * u[0]; }
  double lf_speed(int axis, const double*) const { return std::abs(velocity[axis]); }
  double wave_speed(const double*) const {
    return std::sqrt(velocity[0] * velocity[0] + velocity[1] * velocity[1] + velocity[2] * velocity[2]);
  }
  void check(const double*) const {}
  int normal_momentum(int) const { return -1; }
  std::string name() const { return "advection"; }
};

/// f(u) = u^2/2 along every axis.
struct Burgers {
  std::size_t ncomp() const { return 1; }
  void flux(int, const double* u, double* f) const { f[0] = 0.5 * u[0] * u[0]; }
  double lf_speed(int, const double* u) const { return std::abs(u[0]); }
  double wave_speed(const double* u) const { return std::sqrt(3.0) * std::abs(u[0]); }
  void check(const double*) const {}
  int normal_momentum(int) const { return -1; }
  std::string name() const { return "burgers"; }
};

struct Euler {
  double gamma = kGammaAir;

  std::size_t ncomp() const { return 5; }
  void flux(int axis, const double* q, double* f) const { euler_flux(axis, q, gamma, f); }
  double lf_speed(int axis, const double* q) const {
    const EulerPrimitives s = to_primitives(q, gamma);
    return std::abs(s.velocity(axis)) + s.sound_speed();
  }
  double wave_speed(const double* q) const {
    const EulerPrimitives s = to_primitives(q, gamma);
    return s.speed() + s.sound_speed();
  }
  void check(const double* q) const {
    if (!(q[0] > 0.0)) throw StateError("nonpositive density " + std::to_string(q[0]));
    const double p = pressure(q, gamma);
    if (!(p > 0.0)) throw StateError("nonpositive pressure " + std::to_string(p));
  }
  int normal_momentum(int axis) const { return 1 + axis; }
  std::string name() const { return "euler"; }
};

using Law = std::variant<LinearAdvection, Burgers, Euler>;

inline std::size_t law_ncomp(const Law& law) {
  return std::visit([](const auto& l) { return l.ncomp(); }, law);
}

}  // namespace wenott::ft
