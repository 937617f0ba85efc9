#pragma once

#include <algorithm>
#include <cmath>

#include "wenott/error.hpp"
#include "wenott/ft/euler.hpp"

namespace wenott::problems {

using ft::EulerPrimitives;

struct RiemannStar {
  double p = 0.0;
  double u = 0.0;
  int iterations = 0;
};

namespace detail {

/// Pressure function of one side and its derivative (shock branch for p > pk,
/// rarefaction otherwise).
inline void pressure_function(double p, const EulerPrimitives& k, double gamma, double& f, double& df) {
  const double a = std::sqrt(gamma * k.p / k.rho);
  if (p > k.p) {
    const double A = 2.0 / ((gamma + 1.0) * k.rho);
    const double B = (gamma - 1.0) / (gamma + 1.0) * k.p;
    const double root = std::sqrt(A / (p + B));
    f = (p - k.p) * root;
    df = root * (1.0 - 0.5 * (p - k.p) / (B + p));
  } else {
    const double r = p / k.p;
    f = 2.0 * a / (gamma - 1.0) * (std::pow(r, (gamma - 1.0) / (2.0 * gamma)) - 1.0);
    df = 1.0 / (k.rho * a) * std::pow(r, -(gamma + 1.0) / (2.0 * gamma));
  }
}

}  // namespace detail

/// Star pressure and velocity by Newton iteration on f_L(p) + f_R(p) + du = 0.
inline RiemannStar riemann_star(const EulerPrimitives& L, const EulerPrimitives& R, double gamma) {
  if (!(L.rho > 0.0 && R.rho > 0.0 && L.p > 0.0 && R.p > 0.0))
    throw StateError("exact_riemann: states need positive density and pressure");
  const double aL = std::sqrt(gamma * L.p / L.rho), aR = std::sqrt(gamma * R.p / R.rho);
  const double du = R.u - L.u;
  if (2.0 / (gamma - 1.0) * (aL + aR) <= du) throw StateError("exact_riemann: initial data generate vacuum");

  // primitive-variable guess
  double p = std::max(1e-12, 0.5 * (L.p + R.p) - 0.125 * du * (L.rho + R.rho) * (aL + aR));
  RiemannStar s;
  for (s.iterations = 1; s.iterations <= 100; ++s.iterations) {
    double fL, dfL, fR, dfR;
    detail::pressure_function(p, L, gamma, fL, dfL);
    detail::pressure_function(p, R, gamma, fR, dfR);
    double next = p - (fL + fR + du) / (dfL + dfR);
    if (next <= 0.0) next = 0.5 * p;
    const double change = 2.0 * std::abs(next - p) / (next + p);
    p = next;
    if (change < 1e-15) break;
  }
  if (s.iterations > 100) throw NumericalError("exact_riemann: Newton iteration did not converge");
  double fL, dfL, fR, dfR;
  detail::pressure_function(p, L, gamma, fL, dfL);
  detail::pressure_function(p, R, gamma, fR, dfR);
  s.p = p;
  s.u = 0.5 * (L.u + R.u) + 0.5 * (fR - fL);
  return s;
}

/// Self-similar solution at xi = x/t of the Riemann problem normal to x.
/// Tangential velocities are carried by the contact.
inline EulerPrimitives exact_riemann(const EulerPrimitives& L, const EulerPrimitives& R, double gamma, double xi) {
  const RiemannStar st = riemann_star(L, R, gamma);
  const double g1 = (gamma - 1.0) / (gamma + 1.0);
  const double g2 = (gamma - 1.0) / (2.0 * gamma);
  EulerPrimitives out;
  out.gamma = gamma;

  const bool left = xi <= st.u;
  const EulerPrimitives& K = left ? L : R;
  const double sgn = left ? 1.0 : -1.0;
  const double a = std::sqrt(gamma * K.p / K.rho);
  out.v = K.v;
  out.w = K.w;

  auto set = [&](double rho, double u, double p) {
    out.rho = rho;
    out.u = u;
    out.p = p;
  };

  if (st.p > K.p) {
    // shock
    const double r = st.p / K.p;
    const double speed = K.u - sgn * a * std::sqrt((gamma + 1.0) / (2.0 * gamma) * r + g2);
    const bool outside = left ? xi <= speed : xi >= speed;
    if (outside)
      set(K.rho, K.u, K.p);
    else
      set(K.rho * (r + g1) / (g1 * r + 1.0), st.u, st.p);
  } else {
    // rarefaction
    const double a_star = a * std::pow(st.p / K.p, g2);
    const double head = K.u - sgn * a, tail = st.u - sgn * a_star;
    const bool outside = left ? xi <= head : xi >= head;
    const bool inside_star = left ? xi >= tail : xi <= tail;
    if (outside) {
      set(K.rho, K.u, K.p);
    } else if (inside_star) {
      set(K.rho * std::pow(st.p / K.p, 1.0 / gamma), st.u, st.p);
    } else {
      // inside the fan
      const double c = 2.0 / (gamma + 1.0) + sgn * g1 / a * (K.u - xi);
      const double rho = K.rho * std::pow(c, 2.0 / (gamma - 1.0));
      const double u = 2.0 / (gamma + 1.0) * (sgn * a + 0.5 * (gamma - 1.0) * K.u + xi);
      set(rho, u, K.p * std::pow(c, 2.0 * gamma / (gamma - 1.0)));
    }
  }
  return out;
}

}  // namespace wenott::problems
