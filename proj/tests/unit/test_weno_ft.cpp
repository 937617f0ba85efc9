#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "wenott/problems.hpp"
#include "wenott/weno_ft.hpp"

using namespace wenott;
using namespace wenott::ft;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Grid cube(int n, double lo = 0.0, double hi = 1.0) { return Grid({n, n, n}, {lo, lo, lo}, {hi, hi, hi}); }

FullState scalar_field(const Grid& g, auto&& fn) {
  FullState u = make_state(g, 1);
  for (int p = 0; p < g.padded(0); ++p)
    for (int q = 0; q < g.padded(1); ++q)
      for (int r = 0; r < g.padded(2); ++r) u[0](p, q, r) = fn(g.coord(0, p), g.coord(1, q), g.coord(2, r));
  return u;
}

double interior_l2(const FullField3& a, auto&& exact) {
  const Grid& g = a.grid;
  double s = 0.0;
  for (int p = kGhost; p < g.n[0] + kGhost; ++p)
    for (int q = kGhost; q < g.n[1] + kGhost; ++q)
      for (int r = kGhost; r < g.n[2] + kGhost; ++r) {
        const double d = a(p, q, r) - exact(g.coord(0, p), g.coord(1, q), g.coord(2, r));
        s += d * d;
      }
  return g.l2_weight() * std::sqrt(s);
}

}  // namespace

TEST(Pressure, HandValue) {
  const double q[5] = {1, 0, 0, 0, 2.5};
  EXPECT_DOUBLE_EQ(pressure(q, 1.4), 1.0);
}

TEST(Pressure, ZeroKineticEnergy) {
  const double q[5] = {0.7, 0, 0, 0, 3.0};
  EXPECT_DOUBLE_EQ(pressure(q, 1.4), 0.4 * 3.0);
}

TEST(Pressure, SodStates) {
  const double l[5] = {1, 0, 0, 0, 2.5}, r[5] = {0.125, 0, 0, 0, 0.25};
  EXPECT_NEAR(pressure(l, 1.4), 1.0, 1e-15);
  EXPECT_NEAR(pressure(r, 1.4), 0.1, 1e-15);
}

TEST(Pressure, PrimitiveRoundTrip) {
  const EulerPrimitives s{1.3, 0.2, -0.4, 0.7, 2.1, 1.4};
  double q[5];
  to_conserved(s, q);
  const EulerPrimitives b = to_primitives(q, 1.4);
  EXPECT_NEAR(b.rho, s.rho, 1e-14);
  EXPECT_NEAR(b.u, s.u, 1e-14);
  EXPECT_NEAR(b.v, s.v, 1e-14);
  EXPECT_NEAR(b.w, s.w, 1e-14);
  EXPECT_NEAR(b.p, s.p, 1e-14);
}

TEST(EulerLaw, RejectsNonphysicalStates) {
  const Euler law;
  const double neg_rho[5] = {-1, 0, 0, 0, 1}, neg_p[5] = {1, 2, 0, 0, 1};
  EXPECT_THROW(law.check(neg_rho), StateError);
  EXPECT_THROW(law.check(neg_p), StateError);
}

TEST(LfSplit, BurgersExample) {
  const auto [fp, fm] = lf_split(0.5, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(fp, 0.75);
  EXPECT_DOUBLE_EQ(fm, -0.25);
}

TEST(LfSplit, DegenerateCases) {
  auto s = lf_split(0.8, 3.0, 0.0);
  EXPECT_DOUBLE_EQ(s.first, 0.4);
  EXPECT_DOUBLE_EQ(s.second, 0.4);
  s = lf_split(0.8, 0.0, 2.0);
  EXPECT_DOUBLE_EQ(s.first, 0.4);
  EXPECT_DOUBLE_EQ(s.second, 0.4);
}

TEST(Weno5, ConstantStencilUsesLinearWeights) {
  const WenoResult r = weno5_reconstruct_detail({{2.5, 2.5, 2.5, 2.5, 2.5}}, 1e-6, Side::plus);
  EXPECT_DOUBLE_EQ(r.value, 2.5);
  EXPECT_DOUBLE_EQ(r.omega[0], 0.3);
  EXPECT_DOUBLE_EQ(r.omega[1], 0.6);
  EXPECT_DOUBLE_EQ(r.omega[2], 0.1);
}

TEST(Weno5, LinearDataIsExact) {
  EXPECT_NEAR(weno5_reconstruct({{0, 1, 2, 3, 4}}, 1e-6, Side::plus), 2.5, 1e-14);
  // Mirrored side: value at i-1/2.
  EXPECT_NEAR(weno5_reconstruct({{0, 1, 2, 3, 4}}, 1e-6, Side::minus), 1.5, 1e-14);
}

TEST(Weno5, StepSuppressesDiscontinuousStencil) {
  const WenoResult r = weno5_reconstruct_detail({{0, 0, 0, 1, 1}}, 1e-6, Side::plus);
  EXPECT_GE(r.value, 0.0);
  EXPECT_LE(r.value, 1.0);
  // The only smooth stencil is the upwind one (0, 0, 0).
  EXPECT_LT(r.omega[0], 1e-6 * r.omega[2]);
  EXPECT_LT(r.omega[1], 1e-6 * r.omega[2]);
}

TEST(Weno5, ApproachesOptimalLinearSchemeOnSmoothData) {
  // Optimal-weight combination (2a - 13b + 47c + 27d - 3e) / 60.
  auto gap = [](double h) {
    auto f = [](double x) { return std::sin(x); };
    const double x0 = 0.3, a = f(x0 - 2 * h), b = f(x0 - h), c = f(x0), d = f(x0 + h), e = f(x0 + 2 * h);
    return std::abs(weno5(a, b, c, d, e, h * h) - (2 * a - 13 * b + 47 * c + 27 * d - 3 * e) / 60.0);
  };
  EXPECT_GT(gap(0.05) / gap(0.025), 8.0);
}

TEST(BoundaryFt, PeriodicGhostsCopyOppositeInterior) {
  const Grid g = cube(8);
  FullState u = scalar_field(g, [](double x, double y, double z) { return x + 10 * y + 100 * z; });
  apply_bc(u, all_periodic(), 0.0);
  for (int l = 0; l < kGhost; ++l) EXPECT_DOUBLE_EQ(u[0](l, 4, 4), u[0](8 + l, 4, 4));
  for (int l = 0; l < kGhost; ++l) EXPECT_DOUBLE_EQ(u[0](4, 4, 8 + kGhost + l), u[0](4, 4, kGhost + l));
}

TEST(BoundaryFt, Idempotent) {
  const Grid g = cube(8);
  FullState u = make_state(g, 5);
  for (std::size_t c = 0; c < 5; ++c)
    for (std::size_t i = 0; i < u[c].data.size(); ++i) u[c].data[i] = (c == 0 || c == 4 ? 2.0 : 0.1) + 0.01 * (i % 7);
  BoundarySpec bc;
  bc[0].kind = bc[1].kind = BcKind::reflective;
  bc[2].kind = bc[3].kind = BcKind::extrapolate;
  apply_bc(u, bc, 0.0);
  const FullState once = u;
  apply_bc(u, bc, 0.0);
  for (std::size_t c = 0; c < 5; ++c) EXPECT_EQ(u[c].data, once[c].data);
}

TEST(BoundaryFt, ReflectiveMirrorsAndFlipsNormalMomentum) {
  const Grid g = cube(8);
  FullState u = make_state(g, 5);
  for (std::size_t c = 0; c < 5; ++c)
    for (int p = 0; p < g.padded(0); ++p)
      for (int q = 0; q < g.padded(1); ++q)
        for (int r = 0; r < g.padded(2); ++r) u[c](p, q, r) = 1.0 + c + 0.1 * p;
  BoundarySpec bc;
  bc[0].kind = bc[1].kind = BcKind::reflective;
  apply_bc(u, bc, 0.0);
  for (int l = 0; l < kGhost; ++l) {
    EXPECT_DOUBLE_EQ(u[0](kGhost - 1 - l, 4, 4), u[0](kGhost + l, 4, 4));
    EXPECT_DOUBLE_EQ(u[1](kGhost - 1 - l, 4, 4), -u[1](kGhost + l, 4, 4));
    EXPECT_DOUBLE_EQ(u[2](kGhost - 1 - l, 4, 4), u[2](kGhost + l, 4, 4));
  }
}

TEST(BoundaryFt, InflowWritesState) {
  const Grid g = cube(8);
  FullState u = make_state(g, 5);
  BoundarySpec bc;
  bc[0].kind = BcKind::inflow;
  bc[0].state = {1.4, 0, 0, 0, 2.5};
  bc[1].kind = BcKind::extrapolate;
  apply_bc(u, bc, 0.0);
  for (int l = 0; l < kGhost; ++l) {
    EXPECT_DOUBLE_EQ(u[0](l, 5, 5), 1.4);
    EXPECT_DOUBLE_EQ(u[4](l, 5, 5), 2.5);
  }
}

TEST(BoundaryFt, MismatchedPeriodicRejected) {
  BoundarySpec bc;
  bc[0].kind = BcKind::extrapolate;
  EXPECT_THROW(validate(bc), Error);
}

TEST(RhsScalar, ConstantGivesZero) {
  const Grid g = cube(10);
  FullState u = scalar_field(g, [](double, double, double) { return 0.7; });
  const FullState r = rhs_scalar(Burgers{}, u);
  for (double v : r[0].data) EXPECT_EQ(v, 0.0);
}

TEST(RhsScalar, AdvectionMatchesDerivativeAtFifthOrder) {
  auto exact = [](double x, double y, double z) { return -3.0 * kTwoPi * std::cos(kTwoPi * (x + y + z)); };
  double prev = 0.0;
  for (int n : {20, 40}) {
    const Grid g = cube(n);
    FullState u = scalar_field(g, [](double x, double y, double z) { return std::sin(kTwoPi * (x + y + z)); });
    const double e = interior_l2(rhs_scalar(LinearAdvection{}, u)[0], exact);
    if (prev > 0.0) {
      EXPECT_GT(prev / e, 20.0);
    }
    prev = e;
  }
}

TEST(RhsScalar, BurgersMatchesAnalyticRhs) {
  auto f = [](double x, double y, double z) { return 0.5 + 0.25 * std::sin(kTwoPi * (x + y + z)); };
  auto exact = [&](double x, double y, double z) {
    return -3.0 * f(x, y, z) * 0.25 * kTwoPi * std::cos(kTwoPi * (x + y + z));
  };
  double prev = 0.0;
  for (int n : {20, 40}) {
    const Grid g = cube(n);
    FullState u = scalar_field(g, f);
    const double e = interior_l2(rhs_scalar(Burgers{}, u)[0], exact);
    if (prev > 0.0) {
      EXPECT_GT(prev / e, 16.0);
    }
    prev = e;
  }
}

TEST(RhsEuler, UniformFlowIsSteady) {
  const Grid g = cube(10);
  const EulerPrimitives s{1, 0.1, 0.2, 0.3, 1, 1.4};
  double q[5];
  to_conserved(s, q);
  FullState u = make_state(g, 5);
  for (int c = 0; c < 5; ++c) std::fill(u[c].data.begin(), u[c].data.end(), q[c]);
  const FullState r = rhs_euler(Euler{}, u);
  for (const auto& c : r)
    for (double v : c.data) EXPECT_NEAR(v, 0.0, 1e-13);
}

TEST(RhsEuler, VortexMatchesTimeDerivative) {
  const problems::ProblemSpec spec = problems::isentropic_vortex();
  auto dqdt = [&](double x, double y, double z, int c) {
    const double dt = 1e-5;
    double a[5], b[5];
    spec.exact->eval(x, y, z, dt, a);
    spec.exact->eval(x, y, z, -dt, b);
    return (a[c] - b[c]) / (2 * dt);
  };
  double prev = 0.0;
  for (int n : {20, 40}) {
    const Grid g = spec.grid({n, n, 8});
    FullState u = problems::sample(g, 5, spec.initial, 0.0);
    const FullState r = rhs_euler(Euler{}, u);
    const double e = interior_l2(r[0], [&](double x, double y, double z) { return dqdt(x, y, z, 0); });
    if (prev > 0.0) {
      EXPECT_GT(prev / e, 16.0);
    }
    prev = e;
  }
}

TEST(RhsEuler, ManufacturedSourceIsConsistent) {
  const problems::ProblemSpec spec = problems::manufactured_solution();
  double prev = 0.0;
  for (int n : {20, 40}) {
    const Grid g = spec.grid({n, n, n});
    FullState u = problems::sample(g, 5, spec.initial, 0.0);
    const FullState r = rhs_euler(Euler{}, u, 0.0, &spec.source);
    auto dqdt = [&](double x, double y, double z) {
      const double dt = 1e-5;
      double a[5], b[5];
      spec.exact->eval(x, y, z, dt, a);
      spec.exact->eval(x, y, z, -dt, b);
      return (a[4] - b[4]) / (2 * dt);
    };
    const double e = interior_l2(r[4], dqdt);
    if (prev > 0.0) {
      EXPECT_GT(prev / e, 16.0);
    }
    prev = e;
  }
}

TEST(Ssprk3, ZeroRhsLeavesStateUnchanged) {
  const Grid g = cube(8);
  FullState u = scalar_field(g, [](double, double, double) { return 1.25; });
  const FullState v = ssprk3_step(LinearAdvection{}, u, 0.0, 0.1, all_periodic());
  for (std::size_t i = 0; i < u[0].data.size(); ++i) EXPECT_DOUBLE_EQ(v[0].data[i], 1.25);
}

TEST(Ssprk3, DecayOdeMatchesTaylor) {
  auto fe = [](double u, double) { return u + 0.1 * (-u); };
  auto comb = [](double a, double x, double b, double y) { return a * x + b * y; };
  // 1 - 0.1 + 0.005 - 0.000166..., within 5e-6 of exp(-0.1).
  EXPECT_NEAR(ssprk3(1.0, fe, comb), 1.0 - 0.1 + 0.005 - 0.1 * 0.1 * 0.1 / 6.0, 1e-15);
  EXPECT_NEAR(ssprk3(1.0, fe, comb), std::exp(-0.1), 5e-6);
}

TEST(Ssprk3, RejectsNonpositiveStep) {
  const Grid g = cube(8);
  FullState u = make_state(g, 1);
  EXPECT_THROW(ssprk3_step(LinearAdvection{}, u, 0.0, 0.0, all_periodic()), Error);
}

TEST(TimestepCfl, EulerAtRest) {
  const Grid g = cube(10);
  FullState u = make_state(g, 5);
  std::fill(u[0].data.begin(), u[0].data.end(), 1.0);
  std::fill(u[4].data.begin(), u[4].data.end(), 2.5);
  // a = sqrt(1.4), dt = 0.5 * 0.1 / a.
  EXPECT_NEAR(timestep_cfl(Euler{}, u, 0.5, 0.1), 0.05 / std::sqrt(1.4), 1e-15);
}

TEST(RhsEuler, NamesBadPoint) {
  const Grid g = cube(8);
  FullState u = make_state(g, 5);
  std::fill(u[0].data.begin(), u[0].data.end(), 1.0);
  std::fill(u[4].data.begin(), u[4].data.end(), 2.5);
  u[0](4, 5, 6) = -1.0;
  try {
    rhs_euler(Euler{}, u);
    FAIL() << "expected StateError";
  } catch (const StateError& e) {
    EXPECT_NE(std::string(e.what()).find("(4,5,6)"), std::string::npos);
  }
}
