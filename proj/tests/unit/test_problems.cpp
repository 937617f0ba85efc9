#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "wenott/problems.hpp"
#include "wenott/weno_ft.hpp"

using namespace wenott;
using namespace wenott::problems;

namespace {

/// Max over components of |dU/dt + div F - S| by central differences of
/// width delta at (x, y, z, t).
double euler_residual(const ProblemSpec& p, double x, double y, double z, double t, double delta) {
  const double gamma = p.gamma;
  double res[5] = {0, 0, 0, 0, 0};
  double a[5], b[5], fa[5], fb[5];
  p.exact->eval(x, y, z, t + delta, a);
  p.exact->eval(x, y, z, t - delta, b);
  for (int c = 0; c < 5; ++c) res[c] += (a[c] - b[c]) / (2 * delta);
  for (int axis = 0; axis < 3; ++axis) {
    std::array<double, 3> lo{x, y, z}, hi{x, y, z};
    lo[axis] -= delta;
    hi[axis] += delta;
    p.exact->eval(hi[0], hi[1], hi[2], t, a);
    p.exact->eval(lo[0], lo[1], lo[2], t, b);
    ft::euler_flux(axis, a, gamma, fa);
    ft::euler_flux(axis, b, gamma, fb);
    for (int c = 0; c < 5; ++c) res[c] += (fa[c] - fb[c]) / (2 * delta);
  }
  if (p.source) {
    double q[5], s[5];
    p.exact->eval(x, y, z, t, q);
    p.source(x, y, z, t, q, s);
    for (int c = 0; c < 5; ++c) res[c] -= s[c];
  }
  double m = 0.0;
  for (double r : res) m = std::max(m, std::abs(r));
  return m;
}

}  // namespace

TEST(LinearAdvection, ExactIsShiftedSine) {
  const ProblemSpec p = linear_advection_3d();
  double q[1];
  p.exact->eval(0.1, 0.25, 0.7, 0.1, q);
  EXPECT_NEAR(q[0], std::sin(kTwoPi * (0.1 + 0.25 + 0.7 - 0.3)), 1e-14);
}

TEST(Burgers, InitialAndNewtonAgainstBisection) {
  const ProblemSpec p = burgers_3d();
  double q[1];
  p.exact->eval(0.2, 0.3, 0.4, 0.0, q);
  EXPECT_NEAR(q[0], burgers_initial(0.9), 1e-15);
  for (double s : {0.13, 0.61, 1.37}) {
    const double t = 0.08;
    // u = u0(s - 3 u t) has a unique root in [0, 1] before breaking.
    auto g = [&](double u) { return u - burgers_initial(s - 3.0 * u * t); };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (g(lo) * g(mid) <= 0.0 ? hi : lo) = mid;
    }
    EXPECT_NEAR(burgers_exact(s, t), 0.5 * (lo + hi), 1e-12);
  }
}

TEST(Burgers, ExactSatisfiesPde) {
  const ProblemSpec p = burgers_3d();
  const double d = 1e-5, x = 0.3, y = 0.1, z = 0.45, t = 0.05;
  double a[1], b[1], sum = 0.0;
  p.exact->eval(x, y, z, t + d, a);
  p.exact->eval(x, y, z, t - d, b);
  sum += (a[0] - b[0]) / (2 * d);
  for (int axis = 0; axis < 3; ++axis) {
    std::array<double, 3> lo{x, y, z}, hi{x, y, z};
    lo[axis] -= d;
    hi[axis] += d;
    p.exact->eval(hi[0], hi[1], hi[2], t, a);
    p.exact->eval(lo[0], lo[1], lo[2], t, b);
    sum += (0.5 * a[0] * a[0] - 0.5 * b[0] * b[0]) / (2 * d);
  }
  EXPECT_LT(std::abs(sum), 1e-6);
}

TEST(Vortex, FreestreamFarFromCore) {
  for (auto [x, y] : {std::pair{0.0, 0.0}, std::pair{10.0, 0.0}, std::pair{0.0, 10.0}}) {
    const ft::EulerPrimitives s = vortex_primitives(x, y, 0.0);
    EXPECT_NEAR(s.rho, 1.0, 1e-10);
    EXPECT_NEAR(s.u, 1.0, 1e-10);
    EXPECT_NEAR(s.v, 1.0, 1e-10);
    EXPECT_EQ(s.w, 0.0);
    EXPECT_NEAR(s.p, 1.0, 1e-10);
  }
}

TEST(Vortex, ExactSatisfiesPde) {
  const ProblemSpec p = isentropic_vortex();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(3.0, 8.0), time(0.0, 1.0);
  for (int k = 0; k < 64; ++k) EXPECT_LE(euler_residual(p, pos(rng), pos(rng), pos(rng), time(rng), 1e-4), 1e-6);
}

TEST(Manufactured, SourceMatchesFiniteDifferenceDivergence) {
  const ProblemSpec p = manufactured_solution();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pos(0.0, 1.0), time(0.0, 0.1);
  for (int k = 0; k < 64; ++k) {
    const double x = pos(rng), y = pos(rng), z = pos(rng), t = time(rng);
    const double r3 = euler_residual(p, x, y, z, t, 1e-3), r4 = euler_residual(p, x, y, z, t, 1e-4);
    EXPECT_LT(r4, 1e-5);
    // O(delta^2) until round-off takes over.
    EXPECT_TRUE(r4 < 0.05 * r3 || r4 < 1e-8) << r3 << " " << r4;
  }
}

TEST(Manufactured, PressureVariantAlsoConsistent) {
  ProblemSpec p = manufactured_solution(MmsEnergy::pressure);
  EXPECT_LT(euler_residual(p, 0.3, 0.6, 0.2, 0.05, 1e-4), 1e-5);
}

TEST(Riemann, EqualStatesGiveConstant) {
  const ft::EulerPrimitives s{0.7, 0.2, 0.1, -0.3, 1.3, 1.4};
  for (double xi : {-3.0, -0.1, 0.0, 0.4, 5.0}) {
    const ft::EulerPrimitives r = exact_riemann(s, s, 1.4, xi);
    EXPECT_NEAR(r.rho, s.rho, 1e-12);
    EXPECT_NEAR(r.u, s.u, 1e-12);
    EXPECT_NEAR(r.p, s.p, 1e-12);
  }
}

TEST(Riemann, SodStarState) {
  const RiemannStar st = riemann_star(sod_left(), sod_right(), 1.4);
  EXPECT_NEAR(st.p, 0.30313, 1e-5);
  EXPECT_NEAR(st.u, 0.92745, 1e-5);
  // Bisection on the pressure function.
  auto f = [&](double p) {
    double fl, dl, fr, dr;
    detail::pressure_function(p, sod_left(), 1.4, fl, dl);
    detail::pressure_function(p, sod_right(), 1.4, fr, dr);
    return fl + fr + (sod_right().u - sod_left().u);
  };
  double lo = 1e-6, hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (f(lo) * f(mid) <= 0.0 ? hi : lo) = mid;
  }
  EXPECT_NEAR(st.p, 0.5 * (lo + hi), 1e-10);
  // Left of the contact: isentropic from the left state.
  const ft::EulerPrimitives l = exact_riemann(sod_left(), sod_right(), 1.4, 0.5 * st.u);
  EXPECT_NEAR(l.rho, 0.42632, 1e-5);
  EXPECT_NEAR(l.rho, std::pow(st.p, 1.0 / 1.4), 1e-12);
}

TEST(Riemann, IntegralConservation) {
  const double t = 0.2, gamma = 1.4;
  const int n = 2000000;
  const double dx = 1.0 / n;
  double mass = 0.0, mom = 0.0, energy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = -0.5 + (i + 0.5) * dx;
    double q[5];
    ft::to_conserved(exact_riemann(sod_left(), sod_right(), gamma, x / t), q);
    mass += q[0] * dx;
    mom += q[1] * dx;
    energy += q[4] * dx;
  }
  // Waves stay inside [-0.5, 0.5]; the boundary fluxes are (0, p, 0, 0, 0).
  EXPECT_NEAR(mass, 0.5 * (1.0 + 0.125), 1e-6);
  EXPECT_NEAR(mom, t * (1.0 - 0.1), 1e-6);
  EXPECT_NEAR(energy, 0.5 * (2.5 + 0.25), 1e-6);
}

TEST(Riemann, RejectsVacuum) {
  EXPECT_THROW(riemann_star({1, -20, 0, 0, 1, 1.4}, {1, 20, 0, 0, 1, 1.4}, 1.4), StateError);
}

TEST(ShuOsher, InitialCondition) {
  const ProblemSpec p = shu_osher();
  double q[5];
  p.initial(1.3, 0.0, 0.0, 0.0, q);
  EXPECT_NEAR(q[0], 1.0 + 0.2 * std::sin(5.0 * 1.3), 1e-14);
  // Post-shock state: Mach 3 into rho = 1, p = 1 at rest.
  const double g = 1.4, m2 = 9.0;
  const double rho2 = (g + 1) * m2 / ((g - 1) * m2 + 2), p2 = 1.0 + 2 * g / (g + 1) * (m2 - 1);
  const double u2 = 3.0 * std::sqrt(g) * (1.0 - 1.0 / rho2);
  p.initial(-4.5, 0.0, 0.0, 0.0, q);
  const ft::EulerPrimitives s = ft::to_primitives(q, g);
  EXPECT_NEAR(s.rho, rho2, 1e-6);
  EXPECT_NEAR(s.u, u2, 1e-6);
  EXPECT_NEAR(s.p, p2, 1e-5);
}

TEST(ShuOsher, InitialTtRanksSmall) {
  const ProblemSpec p = shu_osher();
  const ttw::TTConservedState s = p.tt_initial(p.grid({64, 8, 8}), 1e-12);
  for (const auto& c : s.q) {
    EXPECT_LE(c.ranks()[0], 4u);
    EXPECT_LE(c.ranks()[1], 4u);
  }
}

TEST(DoubleMach, InitialStates) {
  const ProblemSpec p = double_mach_reflection();
  double q[5];
  p.initial(0.1, 0.5, 0.0, 0.0, q);
  EXPECT_DOUBLE_EQ(q[0], 8.0);
  p.initial(3.9, 0.1, 0.0, 0.0, q);
  const ft::EulerPrimitives r = ft::to_primitives(q, 1.4);
  EXPECT_DOUBLE_EQ(r.rho, 1.4);
  EXPECT_NEAR(r.p, 1.0, 1e-14);
  EXPECT_EQ(r.u, 0.0);
}

TEST(DoubleMach, RankineHugoniotMachTen) {
  // Normal Mach 10 shock into rho = 1.4, p = 1 (sound speed 1).
  const double g = 1.4, m2 = 100.0;
  const ft::EulerPrimitives post = dmr_post_shock();
  EXPECT_NEAR(post.rho, 1.4 * (g + 1) * m2 / ((g - 1) * m2 + 2), 1e-12);
  EXPECT_NEAR(post.p, 1.0 + 2 * g / (g + 1) * (m2 - 1), 1e-12);
  EXPECT_NEAR(std::hypot(post.u, post.v), 10.0 * (1.0 - 1.4 / post.rho), 1e-12);
  // The shock foot moves along the wall at 10 / sin(60 deg).
  EXPECT_NEAR((dmr_shock_x(0.0, 0.1) - dmr_shock_x(0.0, 0.0)) / 0.1, 10.0 / std::sin(std::numbers::pi / 3), 1e-12);
  EXPECT_NEAR(10.0 / std::sin(std::numbers::pi / 3), 11.547, 1e-3);
}

TEST(RayleighTaylor, HydrostaticProfile) {
  RayleighTaylorParams rp;
  rp.amplitude = 0.0;
  for (double y : {0.1, 0.3, 0.7, 0.9}) {
    const double d = 1e-6;
    const double dp =
        (rayleigh_taylor_primitives(0.1, y + d, rp).p - rayleigh_taylor_primitives(0.1, y - d, rp).p) / (2 * d);
    EXPECT_NEAR(dp, rayleigh_taylor_primitives(0.1, y, rp).rho, 1e-8);
    EXPECT_EQ(rayleigh_taylor_primitives(0.1, y, rp).v, 0.0);
  }
  EXPECT_EQ(rayleigh_taylor_primitives(0.1, 0.5 - 1e-9).rho, 2.0);
  EXPECT_EQ(rayleigh_taylor_primitives(0.1, 0.5 + 1e-9).rho, 1.0);
  EXPECT_NEAR(rayleigh_taylor_primitives(0.1, 0.5).p, 2.0, 1e-15);
  EXPECT_NEAR(rayleigh_taylor_primitives(0.1, 0.5 + 1e-12).p, 2.0, 1e-11);
}

TEST(RayleighTaylor, PerturbationMirrorSymmetric) {
  for (double x : {0.01, 0.05, 0.1}) {
    EXPECT_NEAR(rayleigh_taylor_primitives(x, 0.4).v, rayleigh_taylor_primitives(0.25 - x, 0.4).v, 1e-15);
  }
}

TEST(Catalog, AllProblemsValidateAndArePositive) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& name : problem_names()) {
    const ProblemSpec p = problem_by_name(name);
    EXPECT_EQ(p.name, name);
    EXPECT_GT(p.t_final, 0.0);
    if (p.ncomp() != 5) continue;
    for (int k = 0; k < 200; ++k) {
      double q[5];
      p.initial(p.lo[0] + unit(rng) * (p.hi[0] - p.lo[0]), p.lo[1] + unit(rng) * (p.hi[1] - p.lo[1]),
                p.lo[2] + unit(rng) * (p.hi[2] - p.lo[2]), 0.0, q);
      const ft::EulerPrimitives s = ft::to_primitives(q, p.gamma);
      EXPECT_GT(s.rho, 0.0) << name;
      EXPECT_GT(s.p, 0.0) << name;
    }
  }
  EXPECT_THROW(problem_by_name("nope"), Error);
  EXPECT_EQ(problem_by_name("rt").name, "rayleigh_taylor");
}

TEST(Catalog, GridRules) {
  EXPECT_EQ(double_mach_reflection().cells_for(60), (std::array<int, 3>{240, 60, 60}));
  EXPECT_EQ(rayleigh_taylor().cells_for(120), (std::array<int, 3>{30, 120, 30}));
  EXPECT_EQ(sod_shock_tube().cells_for(50), (std::array<int, 3>{50, 50, 50}));
}

TEST(DtRuleTest, PowerLawAndCfl) {
  const DtRule a = DtRule::power_law(0.5, 5.0 / 3.0);
  EXPECT_NEAR(a.fixed(0.1), 0.5 * std::pow(0.1, 5.0 / 3.0), 1e-15);
  EXPECT_TRUE(DtRule::cfl(0.5).well_formed());
  EXPECT_FALSE(DtRule::cfl(-1.0).well_formed());
}
