#pragma once

#include <array>
#include <utility>

namespace wenott::ft {

/// v_{i-2}, ..., v_{i+2}.
struct Stencil5 {
  std::array<double, 5> v{};
};

/// Plus reconstructs at i+1/2 from the left-biased stencil; minus reconstructs
/// at i-1/2 from the mirrored stencil.
enum class Side { plus, minus };

struct WenoResult {
  double value = 0.0;
  std::array<double, 3> omega{};
};

inline constexpr std::array<double, 3> kWenoLinearWeights{0.3, 0.6, 0.1};

/// WENO5-JS at i+1/2 for values a..e = v_{i-2}..v_{i+2}.
inline WenoResult weno5_detail(double a, double b, double c, double d, double e, double eps) {
  const double q0 = (2.0 * c + 5.0 * d - e) / 6.0;
  const double q1 = (-b + 5.0 * c + 2.0 * d) / 6.0;
  const double q2 = (2.0 * a - 7.0 * b + 11.0 * c) / 6.0;
  const double t0 = c - 2.0 * d + e, s0 = 3.0 * c - 4.0 * d + e;
  const double t1 = b - 2.0 * c + d, s1 = b - d;
  const double t2 = a - 2.0 * b + c, s2 = a - 4.0 * b + 3.0 * c;
  const double b0 = 13.0 / 12.0 * t0 * t0 + 0.25 * s0 * s0;
  const double b1 = 13.0 / 12.0 * t1 * t1 + 0.25 * s1 * s1;
  const double b2 = 13.0 / 12.0 * t2 * t2 + 0.25 * s2 * s2;
  const double a0 = kWenoLinearWeights[0] / ((b0 + eps) * (b0 + eps));
  const double a1 = kWenoLinearWeights[1] / ((b1 + eps) * (b1 + eps));
  const double a2 = kWenoLinearWeights[2] / ((b2 + eps) * (b2 + eps));
  const double sum = a0 + a1 + a2;
  WenoResult r;
  r.omega = {a0 / sum, a1 / sum, a2 / sum};
  r.value = r.omega[0] * q0 + r.omega[1] * q1 + r.omega[2] * q2;
  return r;
}

inline double weno5(double a, double b, double c, double d, double e, double eps) {
  return weno5_detail(a, b, c, d, e, eps).value;
}

inline WenoResult weno5_reconstruct_detail(const Stencil5& s, double eps, Side side) {
  const auto& v = s.v;
  return side == Side::plus ? weno5_detail(v[0], v[1], v[2], v[3], v[4], eps)
                            : weno5_detail(v[4], v[3], v[2], v[1], v[0], eps);
}

inline double weno5_reconstruct(const Stencil5& s, double eps, Side side) {
  return weno5_reconstruct_detail(s, eps, side).value;
}

/// Lax-Friedrichs splitting f = f+ + f-, f± = (f ± alpha u)/2.
inline std::pair<double, double> lf_split(double f, double u, double alpha) {
  return {0.5 * (f + alpha * u), 0.5 * (f - alpha * u)};
}

}  // namespace wenott::ft
