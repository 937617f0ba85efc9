#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "wenott/error.hpp"
#include "wenott/harness/report.hpp"
#include "wenott/harness/run.hpp"
#include "wenott/problems/shocks.hpp"

namespace wenott::harness {

/// Cell-centred x profile of density, velocity and pressure.
struct Profile1D {
  std::vector<double> x, rho, u, p;

  std::size_t size() const { return x.size(); }
  bool operator==(const Profile1D&) const = default;

  /// Linear interpolation of rho; constant beyond the end points.
  double rho_at(double xs) const {
    if (x.empty()) throw Error("empty profile");
    if (xs <= x.front()) return rho.front();
    if (xs >= x.back()) return rho.back();
    const auto k = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), xs) - x.begin());
    const double w = (xs - x[k - 1]) / (x[k] - x[k - 1]);
    return (1.0 - w) * rho[k - 1] + w * rho[k];
  }
};

inline void write_profile_csv(std::ostream& os, const Profile1D& pr) {
  os << "x,rho,u,p\n";
  for (std::size_t i = 0; i < pr.size(); ++i)
    os << fmt(pr.x[i]) << ',' << fmt(pr.rho[i]) << ',' << fmt(pr.u[i]) << ',' << fmt(pr.p[i]) << '\n';
}

inline Profile1D read_profile_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || trim(line) != "x,rho,u,p") throw Error("profile CSV: bad header");
  Profile1D pr;
  while (std::getline(is, line)) {
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 4) throw Error("profile CSV: expected 4 fields in '" + line + "'");
    pr.x.push_back(parse_double(f[0]));
    pr.rho.push_back(parse_double(f[1]));
    pr.u.push_back(parse_double(f[2]));
    pr.p.push_back(parse_double(f[3]));
  }
  if (!std::is_sorted(pr.x.begin(), pr.x.end())) throw Error("profile CSV: x is not sorted");
  return pr;
}

/// Interior x profile of an extruded state (first y, z cell).
inline Profile1D x_profile(const ft::FullState& u, double gamma) {
  const Grid& g = u[0].grid;
  Profile1D pr;
  for (int i = kGhost; i < g.n[0] + kGhost; ++i) {
    double q[5];
    for (int c = 0; c < 5; ++c) q[c] = u[c](i, kGhost, kGhost);
    const auto s = ft::to_primitives(q, gamma);
    pr.x.push_back(g.coord(0, i));
    pr.rho.push_back(s.rho);
    pr.u.push_back(s.u);
    pr.p.push_back(s.p);
  }
  return pr;
}

/// Full-tensor Shu-Osher run on nx x 1 x 1 cells.
inline Profile1D compute_shu_osher_reference(int nx = 2000) {
  const auto spec = problems::shu_osher();
  RunConfig cfg;
  cfg.problem = spec.name;
  cfg.grid = {nx, 1, 1};
  cfg.backend = Backend::full;
  return x_profile(simulate(spec, cfg).state, spec.gamma);
}

/// Loads <dir>/shu_osher_ref_<nx>.csv, generating and saving it first if absent.
inline Profile1D shu_osher_reference(const std::string& dir, int nx = 2000) {
  namespace fs = std::filesystem;
  const fs::path path = fs::path(dir) / ("shu_osher_ref_" + std::to_string(nx) + ".csv");
  if (fs::exists(path)) {
    std::ifstream is(path);
    Profile1D pr = read_profile_csv(is);
    if (pr.size() == static_cast<std::size_t>(nx)) return pr;
  }
  Profile1D pr = compute_shu_osher_reference(nx);
  fs::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path.string());
  write_profile_csv(os, pr);
  return pr;
}

/// L1 density distance between an x-extruded field and a reference profile.
inline double l1_against(const ft::FullField3& rho, const Profile1D& ref) {
  const Grid& g = rho.grid;
  double s = 0.0;
  for (int p = kGhost; p < g.n[0] + kGhost; ++p) {
    const double r = ref.rho_at(g.coord(0, p));
    for (int q = kGhost; q < g.n[1] + kGhost; ++q)
      for (int k = kGhost; k < g.n[2] + kGhost; ++k) s += std::abs(rho(p, q, k) - r);
  }
  return s * g.h(0) / (static_cast<double>(g.n[1]) * g.n[2]);
}

}  // namespace wenott::harness
