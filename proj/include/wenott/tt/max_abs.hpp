#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "wenott/tt/ops.hpp"
#include "wenott/tt/tensor_train.hpp"

namespace wenott::tt {

struct MaxAbsOptions {
  int max_iterations = 50;
  double stagnation = 1e-10;
  /// Power iteration on the Hadamard square is skipped above this rank.
  std::size_t power_rank_limit = 6;
  int random_seeds = 8;
};

namespace detail {

using Index3 = std::array<std::size_t, 3>;

/// Values along one mode with the other two indices fixed; third mode is the
/// combined (k, trailing) index.
inline std::vector<double> fiber(const TensorTrain3& tt, int axis, const Index3& at) {
  const Core& g1 = tt.core(0);
  const Core& g2 = tt.core(1);
  const Core& g3 = tt.core(2);
  const std::size_t r1 = g1.right, r2 = g2.right;
  std::vector<double> out;
  if (axis == 0) {
    std::vector<double> w(r1, 0.0);
    for (std::size_t a = 0; a < r1; ++a)
      for (std::size_t b = 0; b < r2; ++b) w[a] += g2(a, at[1], b) * g3(b, at[2], 0);
    out.assign(g1.mode, 0.0);
    for (std::size_t i = 0; i < g1.mode; ++i)
      for (std::size_t a = 0; a < r1; ++a) out[i] += g1(0, i, a) * w[a];
  } else if (axis == 1) {
    out.assign(g2.mode, 0.0);
    for (std::size_t j = 0; j < g2.mode; ++j)
      for (std::size_t a = 0; a < r1; ++a) {
        const double x = g1(0, at[0], a);
        for (std::size_t b = 0; b < r2; ++b) out[j] += x * g2(a, j, b) * g3(b, at[2], 0);
      }
  } else {
    std::vector<double> l(r2, 0.0);
    for (std::size_t a = 0; a < r1; ++a)
      for (std::size_t b = 0; b < r2; ++b) l[b] += g1(0, at[0], a) * g2(a, at[1], b);
    out.assign(g3.mode, 0.0);
    for (std::size_t k = 0; k < g3.mode; ++k)
      for (std::size_t b = 0; b < r2; ++b) out[k] += l[b] * g3(b, k, 0);
  }
  return out;
}

/// Coordinate ascent of |x| along fibers; returns the best |value| reached.
inline double fiber_search(const TensorTrain3& tt, Index3& at, int rounds = 12) {
  double best = -1.0;
  for (int it = 0; it < rounds; ++it) {
    const double before = best;
    for (int axis = 0; axis < 3; ++axis) {
      std::vector<double> f = fiber(tt, axis, at);
      std::size_t arg = 0;
      for (std::size_t p = 1; p < f.size(); ++p)
        if (std::abs(f[p]) > std::abs(f[arg])) arg = p;
      at[static_cast<std::size_t>(axis)] = arg;
      best = std::max(best, std::abs(f[arg]));
    }
    if (best <= before) break;
  }
  return best;
}

/// Location of the largest entry of the dominant rank-1 term.
inline Index3 rank1_argmax(const TensorTrain3& tt) {
  TensorTrain3 r1 = round(tt, 0.0, 1);
  Index3 at{};
  for (std::size_t d = 0; d < 3; ++d) {
    const auto& v = r1.core(d).data;
    at[d] = static_cast<std::size_t>(std::distance(
        v.begin(), std::max_element(v.begin(), v.end(), [](double a, double b) { return std::abs(a) < std::abs(b); })));
  }
  return at;
}

}  // namespace detail

/// Estimate of max |element|. Exact for rank-(1,1) trains; otherwise the
/// largest value found by fiber-wise coordinate ascent seeded from the
/// dominant rank-1 term, squared power iterates and fixed pseudo-random points.
inline double max_abs(const TensorTrain3& tt, const MaxAbsOptions& opt = {}) {
  const auto [r1, r2] = tt.ranks();
  if (r1 == 1 && r2 == 1) {
    double prod = 1.0;
    for (std::size_t d = 0; d < 3; ++d) {
      double mx = 0.0;
      for (double v : tt.core(d).data) mx = std::max(mx, std::abs(v));
      prod *= mx;
    }
    return prod;
  }
  double best = 0.0;
  auto refine = [&](detail::Index3 at) { best = std::max(best, detail::fiber_search(tt, at)); };

  refine(detail::rank1_argmax(tt));

  if (std::max(r1, r2) <= opt.power_rank_limit) {
    TensorTrain3 y = tt;
    double last = best;
    for (int it = 0; it < opt.max_iterations; ++it) {
      y = round(hadamard(y, y), 1e-8, opt.power_rank_limit);
      const double nrm = norm_frobenius(y);
      if (nrm == 0.0 || !std::isfinite(nrm)) break;
      y = scale(y, 1.0 / nrm);
      refine(detail::rank1_argmax(y));
      if (std::abs(best - last) <= opt.stagnation * std::max(best, 1e-300) && it > 0) break;
      last = best;
    }
  }

  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  const std::array<std::size_t, 3> n{tt.core(0).mode, tt.core(1).mode, tt.core(2).mode};
  for (int s = 0; s < opt.random_seeds; ++s) {
    detail::Index3 at{rng() % n[0], rng() % n[1], rng() % n[2]};
    refine(at);
  }
  return best;
}

}  // namespace wenott::tt
