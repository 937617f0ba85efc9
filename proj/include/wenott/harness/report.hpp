#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "wenott/error.hpp"
#include "wenott/harness/run.hpp"

namespace wenott::harness {

/// Shortest text that parses back to the same double.
inline std::string fmt(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

inline double parse_double(const std::string& s) {
  double x = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw Error("not a number: '" + s + "'");
  return x;
}

inline std::size_t parse_size(const std::string& s) {
  std::size_t x = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw Error("not a count: '" + s + "'");
  return x;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

/// "20" -> 20x20x20, "80x20x20" -> as given.
inline std::array<int, 3> parse_grid(const std::string& s) {
  const auto parts = split(s, 'x');
  std::array<int, 3> g{};
  if (parts.size() == 1) {
    g.fill(static_cast<int>(parse_size(trim(parts[0]))));
  } else if (parts.size() == 3) {
    for (int d = 0; d < 3; ++d) g[d] = static_cast<int>(parse_size(trim(parts[d])));
  } else {
    throw Error("grid must be N or NxNyNz, got '" + s + "'");
  }
  return g;
}

inline std::string grid_string(const std::array<int, 3>& g) {
  return std::to_string(g[0]) + "x" + std::to_string(g[1]) + "x" + std::to_string(g[2]);
}

inline std::vector<std::string> component_names(std::size_t nc) {
  if (nc == 5) return {"rho", "rhou", "rhov", "rhow", "E"};
  std::vector<std::string> n;
  for (std::size_t c = 0; c < nc; ++c) n.push_back(nc == 1 ? "u" : "q" + std::to_string(c));
  return n;
}

// Report CSV: one "field,index,value" row per entry; index is the component
// (or -1 for scalars).

inline void write_report_csv(std::ostream& os, const RunReport& r) {
  os << "field,index,value\n";
  auto row = [&](const std::string& f, long i, const std::string& v) { os << f << ',' << i << ',' << v << '\n'; };
  row("problem", -1, r.problem);
  row("backend", -1, r.backend);
  for (int d = 0; d < 3; ++d) row("grid", d, std::to_string(r.grid[d]));
  row("h", -1, fmt(r.h));
  row("t_final", -1, fmt(r.t_final));
  row("steps", -1, std::to_string(r.steps));
  row("wall_seconds", -1, fmt(r.wall_seconds));
  row("compression_ratio", -1, fmt(r.compression_ratio));
  row("last_eps_tt", -1, fmt(r.last_eps_tt));
  row("cross_warnings", -1, std::to_string(r.cross_warnings));
  for (std::size_t c = 0; c < r.l2_error.size(); ++c) row("l2_error", static_cast<long>(c), fmt(r.l2_error[c]));
  for (std::size_t c = 0; c < r.order.size(); ++c) row("order", static_cast<long>(c), fmt(r.order[c]));
  for (std::size_t c = 0; c < r.ranks.size(); ++c) {
    row("rank1", static_cast<long>(c), std::to_string(r.ranks[c][0]));
    row("rank2", static_cast<long>(c), std::to_string(r.ranks[c][1]));
  }
  for (std::size_t c = 0; c < r.compression.size(); ++c)
    row("compression", static_cast<long>(c), fmt(r.compression[c]));
}

/// Columns: step, t, dt, eps_tt, r1_<comp>, r2_<comp>, ..., wall_ms.
inline void write_telemetry_csv(std::ostream& os, const std::vector<ttw::StepRecord>& tel, std::size_t nc) {
  os << "step,t,dt,eps_tt";
  for (const auto& n : component_names(nc)) os << ",r1_" << n << ",r2_" << n;
  os << ",wall_ms\n";
  for (const auto& s : tel) {
    os << s.step << ',' << fmt(s.t) << ',' << fmt(s.dt) << ',' << fmt(s.eps_tt);
    for (std::size_t c = 0; c < nc; ++c) {
      if (c < s.ranks.size())
        os << ',' << s.ranks[c][0] << ',' << s.ranks[c][1];
      else
        os << ",,";
    }
    os << ',' << fmt(s.wall_ms) << '\n';
  }
}

inline std::vector<ttw::StepRecord> read_telemetry_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error("telemetry CSV: missing header");
  const auto head = split(trim(line), ',');
  if (head.size() < 5 || (head.size() - 5) % 2 != 0 || head[0] != "step")
    throw Error("telemetry CSV: bad header '" + line + "'");
  const std::size_t nc = (head.size() - 5) / 2;
  std::vector<ttw::StepRecord> out;
  while (std::getline(is, line)) {
    if (trim(line).empty()) continue;
    const auto f = split(trim(line), ',');
    if (f.size() != head.size()) throw Error("telemetry CSV: wrong field count in '" + line + "'");
    ttw::StepRecord s;
    s.step = parse_size(f[0]);
    s.t = parse_double(f[1]);
    s.dt = parse_double(f[2]);
    s.eps_tt = parse_double(f[3]);
    for (std::size_t c = 0; c < nc; ++c)
      if (!f[4 + 2 * c].empty()) s.ranks.push_back({parse_size(f[4 + 2 * c]), parse_size(f[5 + 2 * c])});
    s.wall_ms = parse_double(f.back());
    out.push_back(std::move(s));
  }
  return out;
}

/// Inverse of write_report_csv; telemetry comes from its own file.
inline RunReport read_report_csv(std::istream& is, std::istream* telemetry = nullptr) {
  std::string line;
  if (!std::getline(is, line) || trim(line) != "field,index,value") throw Error("report CSV: bad header");
  RunReport r;
  auto put = [](auto& v, long i, auto x) {
    if (i < 0) throw Error("report CSV: per-component field without index");
    if (v.size() <= static_cast<std::size_t>(i)) v.resize(i + 1);
    v[i] = x;
  };
  while (std::getline(is, line)) {
    if (trim(line).empty()) continue;
    const auto first = line.find(','), second = line.find(',', first + 1);
    if (first == std::string::npos || second == std::string::npos) throw Error("report CSV: bad row '" + line + "'");
    const std::string key = line.substr(0, first);
    const long idx = std::stol(line.substr(first + 1, second - first - 1));
    const std::string val = trim(line.substr(second + 1));
    if (key == "problem") r.problem = val;
    else if (key == "backend") r.backend = val;
    else if (key == "grid" && idx >= 0 && idx < 3) r.grid[idx] = static_cast<int>(parse_size(val));
    else if (key == "h") r.h = parse_double(val);
    else if (key == "t_final") r.t_final = parse_double(val);
    else if (key == "steps") r.steps = parse_size(val);
    else if (key == "wall_seconds") r.wall_seconds = parse_double(val);
    else if (key == "compression_ratio") r.compression_ratio = parse_double(val);
    else if (key == "last_eps_tt") r.last_eps_tt = parse_double(val);
    else if (key == "cross_warnings") r.cross_warnings = parse_size(val);
    else if (key == "l2_error") put(r.l2_error, idx, parse_double(val));
    else if (key == "order") put(r.order, idx, parse_double(val));
    else if (key == "rank1" || key == "rank2") {
      if (idx < 0) throw Error("report CSV: rank without index");
      if (r.ranks.size() <= static_cast<std::size_t>(idx)) r.ranks.resize(idx + 1);
      r.ranks[idx][key == "rank1" ? 0 : 1] = parse_size(val);
    } else if (key == "compression") put(r.compression, idx, parse_double(val));
    else throw Error("report CSV: unknown field '" + key + "'");
  }
  if (telemetry) r.telemetry = read_telemetry_csv(*telemetry);
  return r;
}

/// Writes <stem>_report.csv and <stem>_telemetry.csv into dir.
inline void write_report_files(const std::string& dir, const std::string& stem, const RunReport& r, std::size_t nc) {
  std::filesystem::create_directories(dir);
  std::ofstream a(std::filesystem::path(dir) / (stem + "_report.csv"));
  std::ofstream b(std::filesystem::path(dir) / (stem + "_telemetry.csv"));
  if (!a || !b) throw Error("cannot write reports into '" + dir + "'");
  write_report_csv(a, r);
  write_telemetry_csv(b, r.telemetry, nc);
}

inline std::string run_stem(const RunReport& r) { return r.problem + "_" + r.backend + "_" + grid_string(r.grid); }

/// Runs and, when cfg.out_dir is set, writes the report and telemetry CSVs.
inline RunReport run(const RunConfig& cfg) {
  const problems::ProblemSpec spec = problems::problem_by_name(cfg.problem);
  RunResult res = simulate(spec, cfg);
  if (!cfg.out_dir.empty()) write_report_files(cfg.out_dir, run_stem(res.report), res.report, spec.ncomp());
  return std::move(res.report);
}

/// Key-value config ("key = value", '#' comments). Keys: problem, grid,
/// backend, ceps, eps, tfinal, out, seed, max_steps.
inline RunConfig parse_config(std::istream& is) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "problem") cfg.problem = val;
    else if (key == "grid") cfg.grid = parse_grid(val);
    else if (key == "backend") cfg.backend = parse_backend(val);
    else if (key == "ceps") cfg.c_eps = parse_double(val);
    else if (key == "eps") cfg.eps = parse_double(val);
    else if (key == "tfinal") cfg.t_final = parse_double(val);
    else if (key == "out") cfg.out_dir = val;
    else if (key == "seed") cfg.seed = parse_size(val);
    else if (key == "max_steps") cfg.max_steps = parse_size(val);
    else throw Error("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  if (cfg.problem.empty()) throw Error("config: missing problem");
  cfg.validate();
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open config '" + path + "'");
  return parse_config(is);
}

}  // namespace wenott::harness
