#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wenott/error.hpp"
#include "wenott/ft/boundary.hpp"
#include "wenott/ft/solver.hpp"
#include "wenott/problems/catalog.hpp"
#include "wenott/ttweno/boundary.hpp"
#include "wenott/ttweno/solver.hpp"
#include "wenott/ttweno/state.hpp"

namespace wenott::harness {

enum class Backend { full, tt };

inline std::string to_string(Backend b) { return b == Backend::full ? "full" : "tt"; }
inline Backend parse_backend(const std::string& s) {
  if (s == "full" || s == "ft") return Backend::full;
  if (s == "tt") return Backend::tt;
  throw Error("unknown backend '" + s + "' (expected full or tt)");
}

struct RunConfig {
  std::string problem;
  std::array<int, 3> grid{20, 20, 20};
  Backend backend = Backend::full;
  /// At most one of c_eps / eps; neither means the problem default C_eps.
  std::optional<double> c_eps;
  std::optional<double> eps;
  std::optional<problems::DtRule> dt;
  std::optional<double> t_final;
  std::string out_dir;
  std::uint64_t seed = 0x5eed5eed;
  double eps_cross_floor = 0.0;
  /// Stop after this many steps (0: run to the final time).
  std::size_t max_steps = 0;

  void validate() const {
    for (int d = 0; d < 3; ++d)
      if (grid[d] != 1 && grid[d] < 8)
        throw Error("grid needs at least 8 cells per active axis (or 1 for an inactive axis)");
    if (c_eps && eps) throw Error("give either C_eps or a fixed eps_TT, not both");
    if (c_eps && !(*c_eps > 0.0)) throw Error("C_eps must be positive");
    if (eps && !(*eps > 0.0)) throw Error("eps_TT must be positive");
    if (dt && !dt->well_formed()) throw Error("malformed dt rule");
    if (t_final && !(*t_final > 0.0)) throw Error("final time must be positive");
  }
};

struct RunReport {
  std::string problem;
  std::string backend;
  std::array<int, 3> grid{};
  double h = 0.0;
  double t_final = 0.0;
  std::size_t steps = 0;
  /// Per component, empty without an exact solution.
  std::vector<double> l2_error;
  /// Observed order against a coarser grid, filled by studies.
  std::vector<double> order;
  /// TT ranks per component at the end (empty for the full backend).
  std::vector<std::array<std::size_t, 2>> ranks;
  /// Stored elements / dense padded elements, per component.
  std::vector<double> compression;
  double compression_ratio = 1.0;
  double wall_seconds = 0.0;
  double last_eps_tt = 0.0;
  std::size_t cross_warnings = 0;
  std::vector<ttw::StepRecord> telemetry;

  bool operator==(const RunReport&) const = default;
};

struct RunResult {
  RunReport report;
  /// Final state (dense copy of the TT state for the tt backend).
  ft::FullState state;
  std::optional<ttw::TTConservedState> tt_state;
};

/// sqrt(hx hy hz) times the Frobenius norm of interior differences.
inline double l2_error(const ft::FullField3& u, const ft::FullField3& exact) {
  const Grid& g = u.grid;
  double s = 0.0;
  for (int p = kGhost; p < g.n[0] + kGhost; ++p)
    for (int q = kGhost; q < g.n[1] + kGhost; ++q)
      for (int r = kGhost; r < g.n[2] + kGhost; ++r) {
        const double d = u(p, q, r) - exact(p, q, r);
        s += d * d;
      }
  return g.l2_weight() * std::sqrt(s);
}

/// Volume-weighted sum of |u - exact| over interior points, divided by the
/// extent of the inactive-free transverse box (a 1D L1 norm for extruded data).
inline double l1_error(const ft::FullField3& u, const ft::FullField3& exact) {
  const Grid& g = u.grid;
  double s = 0.0;
  for (int p = kGhost; p < g.n[0] + kGhost; ++p)
    for (int q = kGhost; q < g.n[1] + kGhost; ++q)
      for (int r = kGhost; r < g.n[2] + kGhost; ++r) s += std::abs(u(p, q, r) - exact(p, q, r));
  return s * g.h(0) / (static_cast<double>(g.n[1]) * g.n[2]);
}

inline std::vector<double> l2_errors(const ft::FullState& u, const ft::FullState& exact) {
  std::vector<double> e;
  for (std::size_t c = 0; c < u.size(); ++c) e.push_back(l2_error(u[c], exact[c]));
  return e;
}

/// TT storage over dense storage of the padded grid.
inline double compression_ratio(const tt::TensorTrain3& x) {
  const auto n = x.mode_sizes();
  return static_cast<double>(x.element_count()) / (static_cast<double>(n[0]) * n[1] * n[2] * x.trailing());
}

namespace detail {

inline double step_size(const problems::DtRule& rule, double h, double t, double T, auto&& cfl_speed_dt) {
  double dt = rule.kind == problems::DtRule::Kind::power_law ? rule.fixed(h) : cfl_speed_dt();
  if (t + dt >= T * (1.0 - 1e-12)) dt = T - t;
  return dt;
}

inline double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

struct StepHooks {
  /// Called after every full-backend step.
  std::function<void(std::size_t, double, const ft::FullState&)> on_full_step;
  /// Called after every TT step.
  std::function<void(std::size_t, double, const ttw::TTConservedState&)> on_tt_step;
  ttw::TelemetrySink telemetry;
};

/// Runs a problem to its final time on one backend and fills the report.
inline RunResult simulate(const problems::ProblemSpec& spec, const RunConfig& cfg, const StepHooks& hooks = {}) {
  cfg.validate();
  spec.validate();
  const Grid g = spec.grid(cfg.grid);
  const std::size_t nc = spec.ncomp();
  const double T = cfg.t_final.value_or(spec.t_final);
  const problems::DtRule rule = cfg.dt.value_or(spec.dt);
  const double h = g.h_max();
  const SourceFunction* src = spec.source ? &spec.source : nullptr;

  RunResult res;
  RunReport& rep = res.report;
  rep.problem = spec.name;
  rep.backend = to_string(cfg.backend);
  rep.grid = cfg.grid;
  rep.h = h;
  rep.t_final = T;

  std::size_t step = 0;
  double t = 0.0;
  auto fail = [&](const std::exception& e) -> Error {
    return Error(spec.name + ": step " + std::to_string(step) + " (t=" + std::to_string(t) + "): " + e.what());
  };
  auto more = [&] { return t < T * (1.0 - 1e-12) && (cfg.max_steps == 0 || step < cfg.max_steps); };

  std::visit(
      [&](const auto& law) {
        if (cfg.backend == Backend::full) {
          ft::FullState u = problems::sample(g, nc, spec.initial, 0.0);
          const auto t0 = std::chrono::steady_clock::now();
          try {
            while (more()) {
              const double dt = detail::step_size(rule, h, t, T, [&] {
                ft::apply_bc(u, spec.bc, t);
                return ft::timestep_cfl(law, u, rule.lambda, h);
              });
              u = ft::ssprk3_step(law, u, t, dt, spec.bc, src);
              t += dt;
              ++step;
              ttw::StepRecord r{step, t, dt, 0.0, {}, detail::elapsed_ms(t0)};
              if (hooks.telemetry) hooks.telemetry(r);
              if (hooks.on_full_step) hooks.on_full_step(step, t, u);
              rep.telemetry.push_back(std::move(r));
            }
          } catch (const Error& e) {
            throw fail(e);
          }
          rep.wall_seconds = detail::elapsed_ms(t0) / 1000.0;
          ft::apply_bc(u, spec.bc, t);
          res.state = std::move(u);
          rep.compression.assign(nc, 1.0);
          rep.compression_ratio = 1.0;
        } else {
          const double c_eps = cfg.c_eps.value_or(spec.c_eps);
          const ttw::EpsController ctrl =
              cfg.eps ? ttw::EpsController::fixed_value(*cfg.eps) : ttw::EpsController::dynamic(c_eps, g.volume());
          ttw::TTOptions opt;
          opt.cross.seed = cfg.seed;
          opt.eps_cross_floor = cfg.eps_cross_floor;
          ttw::TTDiagnostics diag;
          const double eps0 = std::min(1e-12, ctrl.fixed.value_or(1e-12));
          ttw::TTConservedState s = spec.tt_initial ? spec.tt_initial(g, eps0)
                                                    : ttw::cross_initial_state(g, nc, spec.initial, eps0, opt, &diag);
          {
            const double e = ttw::eps_tt(s, h, ctrl);
            for (auto& x : s.q) x = tt::round(x, e);
          }
          const auto t0 = std::chrono::steady_clock::now();
          try {
            while (more()) {
              const double eps = ttw::eps_tt(s, h, ctrl);
              const double dt = detail::step_size(rule, h, t, T, [&] {
                ttw::apply_bc(s, spec.bc, t, eps, ttw::law_gamma(law), opt, &diag);
                return ttw::timestep_cfl(law, s, rule.lambda, h, eps, opt, &diag);
              });
              s = ttw::tt_ssprk3_step(law, s, t, dt, eps, spec.bc, src, opt, &diag);
              t += dt;
              ++step;
              rep.last_eps_tt = eps;
              ttw::StepRecord r{step, t, dt, eps, s.ranks(), detail::elapsed_ms(t0)};
              if (hooks.telemetry) hooks.telemetry(r);
              if (hooks.on_tt_step) hooks.on_tt_step(step, t, s);
              rep.telemetry.push_back(std::move(r));
            }
          } catch (const Error& e) {
            throw fail(e);
          }
          rep.wall_seconds = detail::elapsed_ms(t0) / 1000.0;
          ttw::apply_bc(s, spec.bc, t, ttw::eps_tt(s, h, ctrl), ttw::law_gamma(law), opt, &diag);
          rep.ranks = s.ranks();
          std::size_t elems = 0;
          for (const auto& x : s.q) {
            rep.compression.push_back(compression_ratio(x));
            elems += x.element_count();
          }
          rep.compression_ratio = static_cast<double>(elems) / (static_cast<double>(g.padded_size()) * nc);
          rep.cross_warnings = diag.cross_warnings;
          res.state = ttw::to_full_state(s);
          res.tt_state = std::move(s);
        }
      },
      spec.law);

  rep.steps = step;
  rep.t_final = t;
  if (spec.exact && spec.exact->valid_at(t)) {
    const ft::FullState ex = problems::sample(g, nc, spec.exact->eval, t);
    rep.l2_error = l2_errors(res.state, ex);
  }
  return res;
}

inline RunResult simulate(const RunConfig& cfg, const StepHooks& hooks = {}) {
  return simulate(problems::problem_by_name(cfg.problem), cfg, hooks);
}

}  // namespace wenott::harness
