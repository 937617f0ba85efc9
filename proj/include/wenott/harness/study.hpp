#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "wenott/error.hpp"
#include "wenott/harness/report.hpp"
#include "wenott/harness/run.hpp"
#include "wenott/tt/ops.hpp"

namespace wenott::harness {

/// log(e_prev / e) / log(N / N_prev), per component.
inline std::vector<double> observed_order(const std::vector<double>& e_prev, const std::vector<double>& e, int n_prev,
                                          int n) {
  std::vector<double> o;
  const double r = std::log(static_cast<double>(n) / n_prev);
  for (std::size_t c = 0; c < std::min(e.size(), e_prev.size()); ++c) o.push_back(std::log(e_prev[c] / e[c]) / r);
  return o;
}

struct ConvergenceRow {
  int n = 0;
  RunReport report;
};

struct ConvergenceTable {
  std::string problem;
  std::string backend;
  std::vector<ConvergenceRow> rows;

  void write_csv(std::ostream& os) const {
    const std::size_t nc = rows.empty() ? 0 : rows.front().report.l2_error.size();
    const auto names = component_names(nc);
    os << "n,grid,h,steps,wall_seconds,compression_ratio";
    for (const auto& s : names) os << ",l2_" << s << ",order_" << s;
    os << '\n';
    for (const auto& r : rows) {
      const RunReport& p = r.report;
      os << r.n << ',' << grid_string(p.grid) << ',' << fmt(p.h) << ',' << p.steps << ',' << fmt(p.wall_seconds) << ','
         << fmt(p.compression_ratio);
      for (std::size_t c = 0; c < nc; ++c) {
        os << ',' << (c < p.l2_error.size() ? fmt(p.l2_error[c]) : "") << ',';
        if (c < p.order.size()) os << fmt(p.order[c]);
      }
      os << '\n';
    }
  }

  void write_text(std::ostream& os) const {
    const std::size_t nc = rows.empty() ? 0 : rows.front().report.l2_error.size();
    const auto names = component_names(nc);
    char buf[64];
    os << problem << " (" << backend << ")\n";
    std::snprintf(buf, sizeof buf, "%-12s %8s %9s", "grid", "steps", "wall[s]");
    os << buf;
    for (const auto& s : names) {
      std::snprintf(buf, sizeof buf, " %11s %6s", ("L2 " + s).c_str(), "order");
      os << buf;
    }
    os << '\n';
    for (const auto& r : rows) {
      const RunReport& p = r.report;
      std::snprintf(buf, sizeof buf, "%-12s %8zu %9.2f", grid_string(p.grid).c_str(), p.steps, p.wall_seconds);
      os << buf;
      for (std::size_t c = 0; c < nc; ++c) {
        const double e = c < p.l2_error.size() ? p.l2_error[c] : std::numeric_limits<double>::quiet_NaN();
        if (c < p.order.size())
          std::snprintf(buf, sizeof buf, " %11.3e %6.2f", e, p.order[c]);
        else
          std::snprintf(buf, sizeof buf, " %11.3e %6s", e, "-");
        os << buf;
      }
      os << '\n';
    }
  }
};

/// One run per N (cells from the problem's grid rule); orders against the
/// previous row.
inline ConvergenceTable convergence_study(const problems::ProblemSpec& spec, const std::vector<int>& ns, Backend backend,
                                          const RunConfig& base = {}) {
  if (ns.empty()) throw Error("convergence study needs at least one grid");
  ConvergenceTable t{spec.name, to_string(backend), {}};
  for (int n : ns) {
    RunConfig cfg = base;
    cfg.problem = spec.name;
    cfg.backend = backend;
    cfg.grid = spec.cells_for(n);
    ConvergenceRow row{n, simulate(spec, cfg).report};
    if (row.report.l2_error.empty()) throw Error(spec.name + ": no exact solution at the final time");
    if (!t.rows.empty()) row.report.order = observed_order(t.rows.back().report.l2_error, row.report.l2_error,
                                                           t.rows.back().n, n);
    t.rows.push_back(std::move(row));
  }
  return t;
}

struct SweepCell {
  int n = 0;
  double h = 0.0;
  double eps = 0.0;
  std::size_t rank = 0;        // max bond rank of the first component
  std::size_t exact_rank = 0;  // same, for the exact field (dense TT-SVD)
  double rank_ratio = 0.0;
  double l2 = 0.0;     // first component
  double ft_l2 = 0.0;  // full-tensor error on the same grid
};

struct SweepTable {
  std::string problem;
  std::vector<SweepCell> cells;

  /// Axes of the error map: log10 h^5 against log10 eps.
  void write_csv(std::ostream& os) const {
    os << "n,h,log10_h5,eps,log10_eps,rank,exact_rank,rank_ratio,l2,ft_l2\n";
    for (const auto& c : cells)
      os << c.n << ',' << fmt(c.h) << ',' << fmt(5.0 * std::log10(c.h)) << ',' << fmt(c.eps) << ','
         << fmt(std::log10(c.eps)) << ',' << c.rank << ',' << c.exact_rank << ',' << fmt(c.rank_ratio) << ','
         << fmt(c.l2) << ',' << fmt(c.ft_l2) << '\n';
  }

  const SweepCell* find(int n, double eps) const {
    for (const auto& c : cells)
      if (c.n == n && c.eps == eps) return &c;
    return nullptr;
  }
};

inline std::size_t max_rank(const std::array<std::size_t, 2>& r) { return std::max(r[0], r[1]); }

/// Ranks of the exact first component at the final time, by dense TT-SVD at
/// 1e-12 on the padded grid.
inline std::array<std::size_t, 2> exact_ranks(const problems::ProblemSpec& spec, const Grid& g, double t) {
  if (!spec.exact || !spec.exact->valid_at(t)) throw Error(spec.name + ": no exact solution for rank oracle");
  const ft::FullState ex = problems::sample(g, spec.ncomp(), spec.exact->eval, t);
  return ttw::from_full_state(ex, 1e-12).q[0].ranks();
}

/// Fixed-eps TT runs on the listed (N, eps) cells, in order. Each N gets one
/// FT reference run and one exact-rank oracle.
inline SweepTable eps_sweep_cells(const problems::ProblemSpec& spec, const std::vector<std::pair<int, double>>& cells,
                                  const RunConfig& base = {}) {
  SweepTable t{spec.name, {}};
  struct Ref {
    int n;
    double ft_l2;
    std::size_t exact_rank;
  };
  std::vector<Ref> refs;
  RunConfig cfg = base;
  cfg.problem = spec.name;
  cfg.c_eps.reset();
  cfg.eps.reset();
  for (const auto& [n, eps] : cells) {
    cfg.grid = spec.cells_for(n);
    auto it = std::find_if(refs.begin(), refs.end(), [n = n](const Ref& r) { return r.n == n; });
    if (it == refs.end()) {
      cfg.backend = Backend::full;
      cfg.eps.reset();
      const RunReport ft = simulate(spec, cfg).report;
      if (ft.l2_error.empty()) throw Error(spec.name + ": no exact solution at the final time");
      refs.push_back({n, ft.l2_error.at(0), max_rank(exact_ranks(spec, spec.grid(cfg.grid), ft.t_final))});
      it = refs.end() - 1;
    }
    cfg.backend = Backend::tt;
    cfg.eps = eps;
    const RunReport r = simulate(spec, cfg).report;
    SweepCell c;
    c.n = n;
    c.h = r.h;
    c.eps = eps;
    c.rank = max_rank(r.ranks.at(0));
    c.exact_rank = it->exact_rank;
    c.rank_ratio = static_cast<double>(c.rank) / static_cast<double>(c.exact_rank);
    c.l2 = r.l2_error.at(0);
    c.ft_l2 = it->ft_l2;
    t.cells.push_back(c);
  }
  return t;
}

/// Fixed-eps TT runs over every (N, eps) pair, each with its FT reference.
inline SweepTable eps_sweep(const problems::ProblemSpec& spec, const std::vector<int>& ns,
                            const std::vector<double>& eps_list, const RunConfig& base = {}) {
  std::vector<std::pair<int, double>> cells;
  for (int n : ns)
    for (double eps : eps_list) cells.emplace_back(n, eps);
  return eps_sweep_cells(spec, cells, base);
}

struct BenchRow {
  int n = 0;
  std::array<int, 3> grid{};
  std::size_t steps = 0;
  double tt_seconds = 0.0;
  double ft_seconds = 0.0;
  bool ft_extrapolated = false;
  double speedup = 0.0;  // ft / tt
  double compression = 0.0;
};

struct BenchTable {
  std::string problem;
  std::vector<BenchRow> rows;

  void write_csv(std::ostream& os) const {
    os << "n,grid,steps,tt_seconds,ft_seconds,ft_extrapolated,speedup,compression\n";
    for (const auto& r : rows)
      os << r.n << ',' << grid_string(r.grid) << ',' << r.steps << ',' << fmt(r.tt_seconds) << ','
         << fmt(r.ft_seconds) << ',' << (r.ft_extrapolated ? 1 : 0) << ',' << fmt(r.speedup) << ','
         << fmt(r.compression) << '\n';
  }

  void write_text(std::ostream& os) const {
    char buf[160];
    os << problem << '\n';
    std::snprintf(buf, sizeof buf, "%-14s %7s %10s %10s %9s %11s\n", "grid", "steps", "TT[s]", "FT[s]", "FT/TT",
                  "compression");
    os << buf;
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof buf, "%-14s %7zu %10.3f %10.3f%s %9.2f %11.3e\n", grid_string(r.grid).c_str(), r.steps,
                    r.tt_seconds, r.ft_seconds, r.ft_extrapolated ? "*" : " ", r.speedup, r.compression);
      os << buf;
    }
    if (std::any_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.ft_extrapolated; }))
      os << "* extrapolated from the largest measured full-tensor run (cost per cell-step)\n";
  }
};

/// Best-of-`repetitions` wall times for both backends. Full-tensor runs above
/// ft_max_cells interior cells are not executed; their time is the measured
/// cost per cell-step of the largest executed run times cells times steps.
inline BenchTable bench(const problems::ProblemSpec& spec, const std::vector<int>& ns, int repetitions = 1,
                        double ft_max_cells = std::numeric_limits<double>::infinity(), const RunConfig& base = {}) {
  if (repetitions < 1) throw Error("bench needs at least one repetition");
  BenchTable t{spec.name, {}};
  std::optional<double> ft_rate;  // seconds per cell-step
  for (int n : ns) {
    BenchRow row;
    row.n = n;
    RunConfig cfg = base;
    cfg.problem = spec.name;
    cfg.grid = spec.cells_for(n);
    row.grid = cfg.grid;
    const double cells = static_cast<double>(cfg.grid[0]) * cfg.grid[1] * cfg.grid[2];
    cfg.backend = Backend::tt;
    row.tt_seconds = std::numeric_limits<double>::infinity();
    for (int k = 0; k < repetitions; ++k) {
      const RunReport r = simulate(spec, cfg).report;
      row.tt_seconds = std::min(row.tt_seconds, r.wall_seconds);
      row.steps = r.steps;
      row.compression = r.compression_ratio;
    }
    if (cells <= ft_max_cells) {
      cfg.backend = Backend::full;
      row.ft_seconds = std::numeric_limits<double>::infinity();
      std::size_t steps = 0;
      for (int k = 0; k < repetitions; ++k) {
        const RunReport r = simulate(spec, cfg).report;
        row.ft_seconds = std::min(row.ft_seconds, r.wall_seconds);
        steps = r.steps;
      }
      ft_rate = row.ft_seconds / (cells * static_cast<double>(std::max<std::size_t>(steps, 1)));
    } else {
      if (!ft_rate) throw Error("bench: no full-tensor run below the cell cutoff to extrapolate from");
      row.ft_seconds = *ft_rate * cells * static_cast<double>(row.steps);
      row.ft_extrapolated = true;
    }
    row.speedup = row.ft_seconds / row.tt_seconds;
    t.rows.push_back(row);
  }
  return t;
}

}  // namespace wenott::harness
