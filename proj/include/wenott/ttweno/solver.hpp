#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "wenott/boundary.hpp"
#include "wenott/error.hpp"
#include "wenott/ft/laws.hpp"
#include "wenott/ft/solver.hpp"
#include "wenott/ft/weno.hpp"
#include "wenott/tt/cross.hpp"
#include "wenott/tt/max_abs.hpp"
#include "wenott/tt/ops.hpp"
#include "wenott/ttweno/boundary.hpp"
#include "wenott/ttweno/state.hpp"

namespace wenott::ttw {

template <class L>
double law_gamma(const L& law) {
  if constexpr (std::is_same_v<L, ft::Euler>)
    return law.gamma;
  else
    return 0.0;
}

namespace detail {

inline std::string point_string(const tt::PointBatch& b, std::size_t p) {
  return "(" + std::to_string(b.i[p]) + "," + std::to_string(b.j[p]) + "," + std::to_string(b.k[p]) + ")";
}

/// Runs law.check on every sampled state and names the first bad point.
template <class L>
void check_points(const L& law, const tt::PointBatch& b, std::size_t nc) {
  for (std::size_t p = 0; p < b.size(); ++p) {
    try {
      law.check(b.inputs.data() + p * nc);
    } catch (const StateError& e) {
      throw StateError(std::string(e.what()) + " at padded index " + point_string(b, p));
    }
  }
}

template <class Fn>
tt::CrossResult run_cross(Fn&& f, std::array<std::size_t, 3> dims, std::size_t m, const std::vector<TensorTrain3>& in,
                          const TensorTrain3* guess, double eps, const TTOptions& opt, TTDiagnostics* diag) {
  tt::CrossResult r = tt::cross_interpolate(tt::ElementFunction(std::forward<Fn>(f)), dims, m, in, guess,
                                            opt.cross_for(eps));
  if (diag) diag->record(r);
  return r;
}

/// Cross of a pointwise scalar function of the conserved state.
template <class L, class PointFn>
TensorTrain3 pointwise_cross(const L& law, const TTConservedState& s, PointFn&& fn, double eps, const TTOptions& opt,
                             TTDiagnostics* diag) {
  const std::size_t nc = s.ncomp();
  auto f = [&](const tt::PointBatch& b, std::span<double> out) {
    check_points(law, b, nc);
    for (std::size_t p = 0; p < b.size(); ++p) out[p] = fn(b.inputs.data() + p * nc);
  };
  const TensorTrain3& guess = s.q[s.max_rank_component()];
  return run_cross(f, s.grid.padded_dims(), 1, s.q, &guess, eps, opt, diag).tt;
}

}  // namespace detail

/// Global LF speed along an axis: cross of |f'| (|u_axis| + a for Euler),
/// then max_abs.
template <class L>
double lf_alpha_tt(const L& law, const TTConservedState& s, int axis, double eps, const TTOptions& opt,
                   TTDiagnostics* diag = nullptr) {
  TensorTrain3 a =
      detail::pointwise_cross(law, s, [&](const double* q) { return law.lf_speed(axis, q); }, eps, opt, diag);
  return tt::max_abs(a);
}

/// Split fluxes along an axis from one stacked cross (trailing size 2*ncomp,
/// f+ components first), unfolded into scalar trains and rounded.
template <class L>
std::vector<TensorTrain3> lf_cross(const L& law, const TTConservedState& s, int axis, double eps, const TTOptions& opt,
                                   TTDiagnostics* diag = nullptr, double* alpha_out = nullptr) {
  const std::size_t nc = s.ncomp();
  const double alpha = lf_alpha_tt(law, s, axis, eps, opt, diag);
  if (alpha_out) *alpha_out = alpha;
  auto f = [&](const tt::PointBatch& b, std::span<double> out) {
    detail::check_points(law, b, nc);
    std::vector<double> fl(nc);
    for (std::size_t p = 0; p < b.size(); ++p) {
      const double* q = b.inputs.data() + p * nc;
      law.flux(axis, q, fl.data());
      for (std::size_t c = 0; c < nc; ++c) {
        out[p * 2 * nc + c] = 0.5 * (fl[c] + alpha * q[c]);
        out[p * 2 * nc + nc + c] = 0.5 * (fl[c] - alpha * q[c]);
      }
    }
  };
  const std::size_t g = s.max_rank_component();
  if (diag) diag->last_lf_guess = g;
  tt::CrossResult r = detail::run_cross(f, s.grid.padded_dims(), 2 * nc, s.q, &s.q[g], eps, opt, diag);
  std::vector<TensorTrain3> parts = tt::unfold_trailing(r.tt);
  round_group(parts, eps, opt.noise_floor);
  return parts;
}

/// WENO5 reconstruction of one split flux along an axis. The plus side gives
/// the value at c+1/2 for centres [kGhost-1, n+kGhost-1]; the minus side the
/// value at c-1/2 for centres [kGhost, n+kGhost]. Zero elsewhere.
inline TensorTrain3 weno_cross_side(const TensorTrain3& v, const Grid& g, int axis, ft::Side side, double eps,
                                    const TTOptions& opt, TTDiagnostics* diag = nullptr) {
  std::vector<TensorTrain3> stencil;
  for (int o = -2; o <= 2; ++o) stencil.push_back(tt::shift(v, axis, o));
  const double h = g.h(axis), ew = h * h;
  const int lo = side == ft::Side::plus ? kGhost - 1 : kGhost;
  const int hi = lo + g.n[axis];
  auto f = [&](const tt::PointBatch& b, std::span<double> out) {
    const std::span<const std::size_t> idx = axis == 0 ? b.i : axis == 1 ? b.j : b.k;
    for (std::size_t p = 0; p < b.size(); ++p) {
      const int c = static_cast<int>(idx[p]);
      if (c < lo || c > hi) {
        out[p] = 0.0;
        continue;
      }
      const double* s = b.inputs.data() + p * 5;
      out[p] = side == ft::Side::plus ? ft::weno5(s[0], s[1], s[2], s[3], s[4], ew)
                                      : ft::weno5(s[4], s[3], s[2], s[1], s[0], ew);
    }
  };
  return tt::round(detail::run_cross(f, g.padded_dims(), 1, stencil, &v, eps, opt, diag).tt, eps);
}

inline std::pair<TensorTrain3, TensorTrain3> weno_cross(const TensorTrain3& v, const Grid& g, int axis, double eps,
                                                        const TTOptions& opt, TTDiagnostics* diag = nullptr) {
  return {weno_cross_side(v, g, axis, ft::Side::plus, eps, opt, diag),
          weno_cross_side(v, g, axis, ft::Side::minus, eps, opt, diag)};
}

/// Pointwise source as trains, one per component.
template <class L>
std::vector<TensorTrain3> source_cross(const L& law, const TTConservedState& s, const SourceFunction& src, double t,
                                       double eps, const TTOptions& opt, TTDiagnostics* diag = nullptr) {
  const std::size_t nc = s.ncomp();
  const Grid& g = s.grid;
  auto f = [&](const tt::PointBatch& b, std::span<double> out) {
    detail::check_points(law, b, nc);
    for (std::size_t p = 0; p < b.size(); ++p)
      src(g.coord(0, static_cast<int>(b.i[p])), g.coord(1, static_cast<int>(b.j[p])),
          g.coord(2, static_cast<int>(b.k[p])), t, b.inputs.data() + p * nc, out.data() + p * nc);
  };
  const TensorTrain3& guess = s.q[s.max_rank_component()];
  tt::CrossResult r = detail::run_cross(f, g.padded_dims(), nc, s.q, &guess, eps, opt, diag);
  std::vector<TensorTrain3> parts = tt::unfold_trailing(r.tt);
  round_group(parts, eps, opt.noise_floor);
  return parts;
}

/// TT right-hand side; ghosts must hold boundary values. Per active axis:
/// LF-cross, WENO-cross per split component, flux difference by shifts on the
/// axis core, scaled by -1/h, summed with rounding. Zero at ghost points.
template <class L>
TTConservedState rhs_tt(const L& law, const TTConservedState& s, double eps, double t = 0.0,
                        const SourceFunction* source = nullptr, const TTOptions& opt = {},
                        TTDiagnostics* diag = nullptr) {
  const Grid& g = s.grid;
  const std::size_t nc = s.ncomp();
  if (nc != law.ncomp()) throw ShapeError("state has the wrong number of components");
  TTConservedState out{g, std::vector<TensorTrain3>(nc, tt::zeros(g.padded_dims()))};
  std::vector<bool> empty(nc, true);
  for (int axis = 0; axis < 3; ++axis) {
    if (!g.active(axis)) continue;
    std::vector<TensorTrain3> split = lf_cross(law, s, axis, eps, opt, diag);
    for (std::size_t c = 0; c < nc; ++c) {
      TensorTrain3 P = weno_cross_side(split[c], g, axis, ft::Side::plus, eps, opt, diag);
      TensorTrain3 M = weno_cross_side(split[nc + c], g, axis, ft::Side::minus, eps, opt, diag);
      // fhat(c) = F_{c+1/2} = P(c) + M(c+1)
      TensorTrain3 fhat = tt::round(tt::add(P, tt::shift(M, axis, 1)), eps);
      TensorTrain3 d = tt::round(tt::add(fhat, tt::scale(tt::shift(fhat, axis, -1), -1.0)), eps);
      TensorTrain3 contrib = tt::scale(d, -1.0 / g.h(axis));
      out.q[c] = empty[c] ? contrib : tt::round(tt::add(out.q[c], contrib), eps);
      empty[c] = false;
    }
  }
  for (auto& c : out.q) c = mask_interior(c, g);
  if (source) {
    std::vector<TensorTrain3> sv = source_cross(law, s, *source, t, eps, opt, diag);
    for (std::size_t c = 0; c < nc; ++c) out.q[c] = tt::round(tt::add(out.q[c], mask_interior(sv[c], g)), eps);
  }
  return out;
}

/// Componentwise round(a x + b y), with the group noise floor.
inline TTConservedState lincomb(double a, const TTConservedState& x, double b, const TTConservedState& y, double eps,
                                double noise = kNoiseFloor) {
  TTConservedState out{x.grid, {}};
  for (std::size_t c = 0; c < x.ncomp(); ++c) out.q.push_back(tt::add(tt::scale(x.q[c], a), tt::scale(y.q[c], b)));
  round_group(out.q, eps, noise);
  return out;
}

/// One TT-SSPRK3 step: F(u) = round(u + dt L(u)) with boundary values set at
/// the stage time, stages combined with rounding. The ghosts of u + dt L(u)
/// are refreshed before the rounding; otherwise they lag the interior by
/// dt L and the mismatch costs rank.
template <class L>
TTConservedState tt_ssprk3_step(const L& law, const TTConservedState& u, double t, double dt, double eps,
                                const BoundarySpec& bc, const SourceFunction* source = nullptr,
                                const TTOptions& opt = {}, TTDiagnostics* diag = nullptr) {
  if (!(dt > 0.0)) throw Error("time step must be positive");
  const double gamma = law_gamma(law);
  auto fe = [&](const TTConservedState& s, double c) {
    TTConservedState w = s;
    apply_bc(w, bc, t + c * dt, eps, gamma, opt, diag);
    const TTConservedState r = rhs_tt(law, w, eps, t + c * dt, source, opt, diag);
    for (std::size_t k = 0; k < w.ncomp(); ++k) w.q[k] = tt::add(w.q[k], tt::scale(r.q[k], dt));
    apply_bc(w, bc, t + c * dt, eps, gamma, opt, diag);
    round_group(w.q, eps, opt.noise_floor);
    return w;
  };
  auto comb = [&](double a, const TTConservedState& x, double b, const TTConservedState& y) {
    return lincomb(a, x, b, y, eps, opt.noise_floor);
  };
  return ssprk3(u, fe, comb);
}

/// dt = lambda h / max(|u| + a) with the speed field from cross and its max
/// from max_abs.
template <class L>
double timestep_cfl(const L& law, const TTConservedState& s, double lambda, double h, double eps,
                    const TTOptions& opt = {}, TTDiagnostics* diag = nullptr) {
  TensorTrain3 a = detail::pointwise_cross(law, s, [&](const double* q) { return law.wave_speed(q); }, eps, opt, diag);
  const double amax = tt::max_abs(a);
  if (!(amax > 0.0)) throw Error("zero wave speed, CFL step undefined");
  return lambda * h / amax;
}

/// State from a point function by one stacked cross over the padded grid.
inline TTConservedState cross_initial_state(const Grid& g, std::size_t nc, const PointFunction& fn, double eps,
                                            const TTOptions& opt = {}, TTDiagnostics* diag = nullptr) {
  auto f = [&](const tt::PointBatch& b, std::span<double> out) {
    for (std::size_t p = 0; p < b.size(); ++p)
      fn(g.coord(0, static_cast<int>(b.i[p])), g.coord(1, static_cast<int>(b.j[p])),
         g.coord(2, static_cast<int>(b.k[p])), 0.0, out.data() + p * nc);
  };
  const TensorTrain3 guess = tt::ones(g.padded_dims());
  tt::CrossResult r = detail::run_cross(f, g.padded_dims(), nc, {}, &guess, eps, opt, diag);
  TTConservedState s{g, tt::unfold_trailing(r.tt)};
  round_group(s.q, eps, opt.noise_floor);
  return s;
}

/// Sum over y-indices j of rank-1 trains profile_j(x) (x) e_j (x) ones(z),
/// rounded after each addition. profiles[j] holds nc * n_x values
/// (component-major) over the padded x-index.
inline TTConservedState rank1_superposition_ic(const Grid& g, std::size_t nc,
                                               const std::vector<std::vector<double>>& profiles, double eps) {
  const auto dims = g.padded_dims();
  if (profiles.size() != dims[1]) throw ShapeError("need one profile per padded y-index");
  TTConservedState s{g, std::vector<TensorTrain3>(nc, tt::zeros(dims))};
  const std::vector<double> ones(dims[2], 1.0);
  for (std::size_t c = 0; c < nc; ++c) {
    bool first = true;
    for (std::size_t j = 0; j < dims[1]; ++j) {
      if (profiles[j].size() != nc * dims[0]) throw ShapeError("profile has the wrong length");
      std::vector<double> px(profiles[j].begin() + static_cast<long>(c * dims[0]),
                             profiles[j].begin() + static_cast<long>((c + 1) * dims[0]));
      std::vector<double> ey(dims[1], 0.0);
      ey[j] = 1.0;
      TensorTrain3 term = tt::rank1(px, ey, ones);
      s.q[c] = first ? term : tt::round(tt::add(s.q[c], term), eps);
      first = false;
    }
  }
  return s;
}

}  // namespace wenott::ttw
