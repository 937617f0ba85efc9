#pragma once

#include <string>
#include <vector>

#include "wenott/error.hpp"
#include "wenott/problems/shocks.hpp"
#include "wenott/problems/smooth.hpp"

namespace wenott::problems {

inline const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names{"advection", "burgers",   "vortex", "manufactured",
                                              "sod",       "shu_osher", "dmr",    "rayleigh_taylor"};
  return names;
}

inline ProblemSpec problem_by_name(const std::string& name) {
  ProblemSpec p;
  if (name == "advection")
    p = linear_advection_3d();
  else if (name == "burgers")
    p = burgers_3d();
  else if (name == "vortex")
    p = isentropic_vortex();
  else if (name == "manufactured")
    p = manufactured_solution();
  else if (name == "sod")
    p = sod_shock_tube();
  else if (name == "shu_osher")
    p = shu_osher();
  else if (name == "dmr")
    p = double_mach_reflection();
  else if (name == "rayleigh_taylor" || name == "rt")
    p = rayleigh_taylor();
  else
    throw Error("unknown problem '" + name + "'");
  p.validate();
  return p;
}

}  // namespace wenott::problems
