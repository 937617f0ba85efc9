// Command-line front end: run, convergence, sweep, bench, shu-osher.
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wenott/harness.hpp"

namespace fs = std::filesystem;
using namespace wenott;
using namespace wenott::harness;

namespace {

struct Common {
  std::string problem;
  std::string backend = "full";
  double ceps = 0.0;
  double eps = 0.0;
  double tfinal = 0.0;
  std::string out;
  std::uint64_t seed = RunConfig{}.seed;
  std::size_t max_steps = 0;
};

void add_common(CLI::App* app, Common& c, bool with_backend = true) {
  app->add_option("--problem", c.problem, "problem name")->required();
  if (with_backend) app->add_option("--backend", c.backend, "full or tt");
  auto* ce = app->add_option("--ceps", c.ceps, "C_eps of the dynamic TT tolerance");
  auto* e = app->add_option("--eps", c.eps, "fixed TT tolerance");
  ce->excludes(e);
  app->add_option("--tfinal", c.tfinal, "override the final time");
  app->add_option("--out", c.out, "output directory for CSV files");
  app->add_option("--seed", c.seed, "seed for cross validation sampling");
  app->add_option("--max-steps", c.max_steps, "stop after this many steps");
}

RunConfig base_config(const Common& c) {
  RunConfig cfg;
  cfg.problem = c.problem;
  cfg.backend = parse_backend(c.backend);
  if (c.ceps > 0.0) cfg.c_eps = c.ceps;
  if (c.eps > 0.0) cfg.eps = c.eps;
  if (c.tfinal > 0.0) cfg.t_final = c.tfinal;
  cfg.out_dir = c.out;
  cfg.seed = c.seed;
  cfg.max_steps = c.max_steps;
  return cfg;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> v;
  for (const auto& p : split(s, ',')) v.push_back(static_cast<int>(parse_size(trim(p))));
  return v;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> v;
  for (const auto& p : split(s, ',')) v.push_back(parse_double(trim(p)));
  return v;
}

template <class Table>
void emit(const Table& t, const std::string& dir, const std::string& name) {
  if (dir.empty()) return;
  fs::create_directories(dir);
  std::ofstream os(fs::path(dir) / name);
  if (!os) throw Error("cannot write " + (fs::path(dir) / name).string());
  t.write_csv(os);
  std::cout << "wrote " << (fs::path(dir) / name).string() << '\n';
}

void print_report(const RunReport& r) {
  std::cout << r.problem << " [" << r.backend << "] " << grid_string(r.grid) << "  steps " << r.steps << "  t "
            << r.t_final << "  wall " << r.wall_seconds << " s\n";
  const auto names = component_names(std::max(r.l2_error.size(), r.ranks.size()));
  for (std::size_t c = 0; c < r.l2_error.size(); ++c)
    std::cout << "  L2 " << names[c] << " = " << r.l2_error[c] << '\n';
  for (std::size_t c = 0; c < r.ranks.size(); ++c)
    std::cout << "  ranks " << names[c] << " = (" << r.ranks[c][0] << "," << r.ranks[c][1] << ")\n";
  if (!r.ranks.empty())
    std::cout << "  compression " << r.compression_ratio << "  last eps_TT " << r.last_eps_tt << "  cross warnings "
              << r.cross_warnings << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"WENO5 full-tensor and tensor-train solver"};
  app.require_subcommand(1);

  Common rc;
  std::string grid = "20", config;
  auto* run_cmd = app.add_subcommand("run", "run one problem on one backend");
  run_cmd->add_option("--config", config, "key-value config file (command-line options are ignored)");
  run_cmd->add_option("--grid", grid, "N or NxNyNz");
  run_cmd->add_option("--problem", rc.problem, "problem name");
  run_cmd->add_option("--backend", rc.backend, "full or tt");
  auto* ce = run_cmd->add_option("--ceps", rc.ceps, "C_eps of the dynamic TT tolerance");
  ce->excludes(run_cmd->add_option("--eps", rc.eps, "fixed TT tolerance"));
  run_cmd->add_option("--tfinal", rc.tfinal, "override the final time");
  run_cmd->add_option("--out", rc.out, "output directory for CSV files");
  run_cmd->add_option("--seed", rc.seed, "seed for cross validation sampling");
  run_cmd->add_option("--max-steps", rc.max_steps, "stop after this many steps");

  Common cc;
  std::string grids = "10,20,40";
  auto* conv_cmd = app.add_subcommand("convergence", "L2 errors and observed orders over grids");
  add_common(conv_cmd, cc);
  conv_cmd->add_option("--grids", grids, "comma-separated N values");

  Common sc;
  std::string h_list = "0.1,0.05,0.025", eps_list = "1e-3,1e-4,1e-5,1e-6,1e-7,1e-8,1e-9,1e-10,1e-11,1e-12";
  auto* sweep_cmd = app.add_subcommand("sweep", "fixed eps_TT runs over grid spacings and tolerances");
  add_common(sweep_cmd, sc, false);
  sweep_cmd->add_option("--h-list", h_list, "comma-separated grid spacings (x extent / N)");
  sweep_cmd->add_option("--eps-list", eps_list, "comma-separated eps_TT values");

  Common bc;
  std::string bench_grids = "25,50,100";
  int reps = 1;
  double ft_max = 2.0e7;
  auto* bench_cmd = app.add_subcommand("bench", "wall time and compression, both backends");
  add_common(bench_cmd, bc, false);
  bench_cmd->add_option("--grids", bench_grids, "comma-separated N values");
  bench_cmd->add_option("--reps", reps, "repetitions (best time is kept)");
  bench_cmd->add_option("--ft-max-cells", ft_max, "extrapolate full-tensor time above this many cells");

  std::string ref_cache = "reference_cache", so_backend = "tt";
  int ref_nx = 2000, so_n = 200;
  auto* so_cmd = app.add_subcommand("shu-osher", "Shu-Osher run against a cached fine-grid reference");
  so_cmd->add_option("--cache", ref_cache, "directory holding the reference CSV");
  so_cmd->add_option("--ref-nx", ref_nx, "reference cells in x");
  so_cmd->add_option("--nx", so_n, "cells in x for the compared run");
  so_cmd->add_option("--backend", so_backend, "full or tt");

  auto* list_cmd = app.add_subcommand("list", "list problems");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list_cmd) {
      for (const auto& n : problems::problem_names()) std::cout << n << '\n';
    } else if (*run_cmd) {
      RunConfig cfg;
      if (!config.empty()) {
        cfg = load_config(config);
      } else {
        if (rc.problem.empty()) throw Error("--problem is required without --config");
        cfg = base_config(rc);
        // A bare N goes through the problem's cell rule (e.g. 4N x N x N).
        cfg.grid = grid.find('x') == std::string::npos
                       ? problems::problem_by_name(cfg.problem).cells_for(static_cast<int>(parse_size(grid)))
                       : parse_grid(grid);
      }
      const RunReport r = run(cfg);
      print_report(r);
      if (!cfg.out_dir.empty()) std::cout << "wrote " << (fs::path(cfg.out_dir) / run_stem(r)).string() << "_*.csv\n";
    } else if (*conv_cmd) {
      const auto spec = problems::problem_by_name(cc.problem);
      const RunConfig base = base_config(cc);
      const ConvergenceTable t = convergence_study(spec, parse_ints(grids), base.backend, base);
      t.write_text(std::cout);
      emit(t, cc.out, spec.name + "_" + to_string(base.backend) + "_convergence.csv");
    } else if (*sweep_cmd) {
      const auto spec = problems::problem_by_name(sc.problem);
      std::vector<int> ns;
      for (double h : parse_doubles(h_list)) ns.push_back(static_cast<int>(std::lround((spec.hi[0] - spec.lo[0]) / h)));
      const SweepTable t = eps_sweep(spec, ns, parse_doubles(eps_list), base_config(sc));
      t.write_csv(std::cout);
      emit(t, sc.out, spec.name + "_sweep.csv");
    } else if (*so_cmd) {
      const Profile1D ref = shu_osher_reference(ref_cache, ref_nx);
      const auto spec = problems::shu_osher();
      RunConfig cfg;
      cfg.problem = spec.name;
      cfg.grid = {so_n, 1, 1};
      cfg.backend = parse_backend(so_backend);
      const RunResult res = simulate(spec, cfg);
      print_report(res.report);
      std::cout << "  L1 rho against the " << ref_nx << "-cell reference = " << l1_against(res.state[0], ref) << '\n';
    } else if (*bench_cmd) {
      const auto spec = problems::problem_by_name(bc.problem);
      const BenchTable t = bench(spec, parse_ints(bench_grids), reps, ft_max, base_config(bc));
      t.write_text(std::cout);
      emit(t, bc.out, spec.name + "_bench.csv");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
