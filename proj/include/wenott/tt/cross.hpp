#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wenott/error.hpp"
#include "wenott/tt/linalg.hpp"
#include "wenott/tt/maxvol.hpp"
#include "wenott/tt/ops.hpp"
#include "wenott/tt/tensor_train.hpp"

namespace wenott::tt {

inline constexpr double kCrossEpsFloor = 1e-13;

struct CrossConfig {
  double eps = 1e-10;
  /// Upper bound on half-sweeps (one left-to-right or right-to-left pass each).
  int max_sweeps = 12;
  /// Random fibers added to every sampled index set.
  std::size_t rank_increment = 3;
  std::size_t validation_samples = 256;
  std::size_t max_rank = 0;
  std::uint64_t seed = 0x5eed5eedULL;
  double maxvol_tol = 1e-2;
};

/// Points handed to an element function. `inputs` holds, per point, the
/// values of every input TT (trailing entries of each input in order).
struct PointBatch {
  std::span<const std::size_t> i, j, k;
  std::span<const double> inputs;
  std::size_t input_width = 0;

  std::size_t size() const { return i.size(); }
  double input(std::size_t p, std::size_t q) const { return inputs[p * input_width + q]; }
};

/// Writes size() x m outputs, point-major.
using ElementFunction = std::function<void(const PointBatch&, std::span<double>)>;

struct CrossResult {
  TensorTrain3 tt;
  int sweeps = 0;
  bool converged = false;
  double last_change = 0.0;
  double validation_error = 0.0;
  std::size_t evaluations = 0;
  std::string warning;
  /// Final pivot sets: I1 rows of core 1, I2 (i,j) rows, J2 combined k*m+c columns.
  std::vector<std::size_t> rows1;
  std::vector<std::array<std::size_t, 2>> rows2;
  std::vector<std::size_t> cols2;
};

namespace detail {

using Pair = std::array<std::size_t, 2>;

/// Evaluates inputs and the element function on the structured point sets
/// a cross sweep needs.
class CrossSampler {
 public:
  CrossSampler(const ElementFunction& f, std::array<std::size_t, 3> n, std::size_t m,
               std::span<const TensorTrain3> inputs)
      : f_(f), n_(n), m_(m), inputs_(inputs) {
    for (const TensorTrain3& x : inputs_) {
      if (x.mode_sizes() != n_) throw ShapeError("cross input has different mode sizes");
      offsets_.push_back(width_);
      width_ += x.trailing();
    }
  }

  std::size_t evaluations() const { return evaluations_; }

  /// Points (i, jk[p]) for every i; output row p*n1 + i.
  RowMatrix fibers1(const std::vector<Pair>& jk) {
    const std::size_t np = jk.size(), n1 = n_[0];
    Points pts(np * n1, width_);
    for (std::size_t p = 0; p < np; ++p)
      for (std::size_t i = 0; i < n1; ++i) pts.set(p * n1 + i, i, jk[p][0], jk[p][1]);
    for (std::size_t q = 0; q < inputs_.size(); ++q) {
      const TensorTrain3& x = inputs_[q];
      const Core& h1 = x.core(0);
      const Core& h2 = x.core(1);
      const Core& h3 = x.core(2);
      const std::size_t mx = x.trailing();
      const auto s1 = static_cast<Eigen::Index>(h1.right), s2 = static_cast<Eigen::Index>(h2.right);
      ConstRowMap g1 = h1.left_unfolding();  // n1 x s1
      for (std::size_t p = 0; p < np; ++p) {
        RowMatrix w(s1, static_cast<Eigen::Index>(mx));
        for (std::size_t c = 0; c < mx; ++c) {
          Eigen::VectorXd col(s2);
          for (Eigen::Index b = 0; b < s2; ++b) col(b) = h3(static_cast<std::size_t>(b), jk[p][1] * mx + c, 0);
          w.col(static_cast<Eigen::Index>(c)) = h2.slice(jk[p][0]) * col;
        }
        RowMatrix vals = g1 * w;  // n1 x mx
        for (std::size_t i = 0; i < n1; ++i)
          for (std::size_t c = 0; c < mx; ++c)
            pts.in[(p * n1 + i) * width_ + offsets_[q] + c] = vals(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c));
      }
    }
    return call(pts);
  }

  /// Points (is[a], j, ks[b]) for every j; output row (a*n2 + j)*|ks| + b.
  RowMatrix grid2(const std::vector<std::size_t>& is, const std::vector<std::size_t>& ks) {
    const std::size_t na = is.size(), nb = ks.size(), n2 = n_[1];
    Points pts(na * n2 * nb, width_);
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t j = 0; j < n2; ++j)
        for (std::size_t b = 0; b < nb; ++b) pts.set((a * n2 + j) * nb + b, is[a], j, ks[b]);
    for (std::size_t q = 0; q < inputs_.size(); ++q) {
      const TensorTrain3& x = inputs_[q];
      const Core& h1 = x.core(0);
      const Core& h2 = x.core(1);
      const Core& h3 = x.core(2);
      const std::size_t mx = x.trailing();
      const auto s1 = static_cast<Eigen::Index>(h1.right), s2 = static_cast<Eigen::Index>(h2.right);
      RowMatrix rows(static_cast<Eigen::Index>(na), s1);
      for (std::size_t a = 0; a < na; ++a)
        for (Eigen::Index r = 0; r < s1; ++r) rows(static_cast<Eigen::Index>(a), r) = h1(0, is[a], static_cast<std::size_t>(r));
      RowMatrix left = rows * h2.right_unfolding();  // na x n2 s2
      Eigen::Map<RowMatrix> lmat(left.data(), static_cast<Eigen::Index>(na * n2), s2);
      RowMatrix right(s2, static_cast<Eigen::Index>(nb * mx));
      for (Eigen::Index r = 0; r < s2; ++r)
        for (std::size_t b = 0; b < nb; ++b)
          for (std::size_t c = 0; c < mx; ++c)
            right(r, static_cast<Eigen::Index>(b * mx + c)) = h3(static_cast<std::size_t>(r), ks[b] * mx + c, 0);
      RowMatrix vals = lmat * right;  // (na n2) x (nb mx)
      for (std::size_t aj = 0; aj < na * n2; ++aj)
        for (std::size_t b = 0; b < nb; ++b)
          for (std::size_t c = 0; c < mx; ++c)
            pts.in[(aj * nb + b) * width_ + offsets_[q] + c] =
                vals(static_cast<Eigen::Index>(aj), static_cast<Eigen::Index>(b * mx + c));
    }
    return call(pts);
  }

  /// Points (ij[p], k) for every k; output row p*n3 + k.
  RowMatrix fibers3(const std::vector<Pair>& ij) {
    const std::size_t np = ij.size(), n3 = n_[2];
    Points pts(np * n3, width_);
    for (std::size_t p = 0; p < np; ++p)
      for (std::size_t k = 0; k < n3; ++k) pts.set(p * n3 + k, ij[p][0], ij[p][1], k);
    for (std::size_t q = 0; q < inputs_.size(); ++q) {
      const TensorTrain3& x = inputs_[q];
      const Core& h1 = x.core(0);
      const Core& h2 = x.core(1);
      const Core& h3 = x.core(2);
      const std::size_t mx = x.trailing();
      const auto s1 = static_cast<Eigen::Index>(h1.right);
      ConstRowMap g3 = h3.right_unfolding();  // s2 x n3 mx
      for (std::size_t p = 0; p < np; ++p) {
        Eigen::RowVectorXd row(s1);
        for (Eigen::Index r = 0; r < s1; ++r) row(r) = h1(0, ij[p][0], static_cast<std::size_t>(r));
        Eigen::RowVectorXd l = row * h2.slice(ij[p][1]);
        Eigen::RowVectorXd vals = l * g3;
        for (std::size_t k = 0; k < n3; ++k)
          for (std::size_t c = 0; c < mx; ++c)
            pts.in[(p * n3 + k) * width_ + offsets_[q] + c] = vals(static_cast<Eigen::Index>(k * mx + c));
      }
    }
    return call(pts);
  }

  /// Arbitrary points, one row each.
  RowMatrix points(const std::vector<std::array<std::size_t, 3>>& ijk) {
    Points pts(ijk.size(), width_);
    for (std::size_t p = 0; p < ijk.size(); ++p) pts.set(p, ijk[p][0], ijk[p][1], ijk[p][2]);
    for (std::size_t q = 0; q < inputs_.size(); ++q) {
      const TensorTrain3& x = inputs_[q];
      for (std::size_t p = 0; p < ijk.size(); ++p)
        for (std::size_t c = 0; c < x.trailing(); ++c)
          pts.in[p * width_ + offsets_[q] + c] = x.at(ijk[p][0], ijk[p][1], ijk[p][2], c);
    }
    return call(pts);
  }

 private:
  struct Points {
    std::vector<std::size_t> i, j, k;
    std::vector<double> in;
    Points(std::size_t np, std::size_t width) : i(np), j(np), k(np), in(np * width, 0.0) {}
    void set(std::size_t p, std::size_t a, std::size_t b, std::size_t c) {
      i[p] = a;
      j[p] = b;
      k[p] = c;
    }
  };

  RowMatrix call(Points& pts) {
    const std::size_t np = pts.i.size();
    RowMatrix out(static_cast<Eigen::Index>(np), static_cast<Eigen::Index>(m_));
    if (np == 0) return out;
    PointBatch batch{pts.i, pts.j, pts.k, pts.in, width_};
    f_(batch, std::span<double>(out.data(), np * m_));
    evaluations_ += np;
    if (!out.allFinite()) throw NumericalError("cross: element function returned a non-finite value");
    return out;
  }

  const ElementFunction& f_;
  std::array<std::size_t, 3> n_;
  std::size_t m_;
  std::span<const TensorTrain3> inputs_;
  std::vector<std::size_t> offsets_;
  std::size_t width_ = 0;
  std::size_t evaluations_ = 0;
};

template <class T>
std::vector<T> unique_sorted(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

template <class T>
std::size_t position(const std::vector<T>& sorted, const T& x) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
}

}  // namespace detail

/// Builds a TT of the n1 x n2 x n3 (x m) tensor f by alternating one-site
/// interpolative sweeps. Each core comes from a truncated SVD of sampled
/// fibers (current pivots plus `rank_increment` random ones) and maxvol
/// picks the next pivots. Stops when two consecutive half-sweeps differ by at
/// most eps in relative Frobenius norm and a random-point check passes.
inline CrossResult cross_interpolate(const ElementFunction& f, std::array<std::size_t, 3> n, std::size_t m,
                                     std::span<const TensorTrain3> inputs, const TensorTrain3* guess,
                                     const CrossConfig& cfg) {
  using detail::Pair;
  if (m == 0) throw ShapeError("cross: trailing size must be positive");
  if (cfg.max_sweeps < 1) throw ShapeError("cross: max_sweeps must be at least 1");
  if (!(cfg.eps > 0.0)) throw ShapeError("cross: eps must be positive");
  if (guess && guess->mode_sizes() != n) throw ShapeError("cross: guess has different mode sizes");

  const double eps = std::max(cfg.eps, kCrossEpsFloor);
  const double rel_tol = eps / std::sqrt(2.0);
  const std::size_t n1 = n[0], n2 = n[1], n3 = n[2], n3m = n3 * m;
  const auto cap = static_cast<Eigen::Index>(cfg.max_rank);
  const std::size_t p = cfg.rank_increment;

  detail::CrossSampler sampler(f, n, m, inputs);
  std::mt19937_64 rng(cfg.seed);
  auto rnd = [&](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };

  std::vector<std::size_t> I1;
  std::vector<Pair> I2;   // (i, j)
  std::vector<Pair> J1;   // (j, k*m+c)
  std::vector<std::size_t> J2;  // k*m+c

  // Right index sets from the guess; all trailing entries are taken when the
  // guess carries a different trailing size.
  if (guess) {
    const std::size_t mg = guess->trailing();
    auto [g1, q2t, q3t] = detail::right_orthogonalize(*guess);
    (void)g1;
    MaxvolResult mv3 = maxvol(q3t.transpose(), cfg.maxvol_tol);
    std::vector<std::size_t> j2g;
    for (auto r : mv3.rows) j2g.push_back(static_cast<std::size_t>(r));
    const Eigen::Index r1g = q2t.rows(), r2g = q3t.rows();
    const auto r2sel = static_cast<Eigen::Index>(j2g.size());
    RowMatrix q3sel(r2g, r2sel);
    for (Eigen::Index b = 0; b < r2sel; ++b) q3sel.col(b) = q3t.col(static_cast<Eigen::Index>(j2g[static_cast<std::size_t>(b)]));
    RowMatrix w(r1g, static_cast<Eigen::Index>(n2) * r2sel);
    for (std::size_t j = 0; j < n2; ++j)
      w.middleCols(static_cast<Eigen::Index>(j) * r2sel, r2sel) =
          q2t.middleCols(static_cast<Eigen::Index>(j) * r2g, r2g) * q3sel;
    MaxvolResult mv2 = maxvol(w.transpose(), cfg.maxvol_tol);
    auto expand = [&](std::size_t kg) {
      std::vector<std::size_t> out;
      if (mg == m) {
        out.push_back(kg);
      } else {
        const std::size_t k = kg / mg;
        for (std::size_t c = 0; c < m; ++c) out.push_back(k * m + c);
      }
      return out;
    };
    for (std::size_t kg : j2g)
      for (std::size_t kp : expand(kg)) J2.push_back(kp);
    for (auto r : mv2.rows) {
      const auto q = static_cast<std::size_t>(r);
      const std::size_t j = q / static_cast<std::size_t>(r2sel), b = q % static_cast<std::size_t>(r2sel);
      for (std::size_t kp : expand(j2g[b])) J1.push_back({j, kp});
    }
    J2 = detail::unique_sorted(J2);
    J1 = detail::unique_sorted(J1);
  } else {
    for (std::size_t t = 0; t < std::max<std::size_t>(p, 1); ++t) {
      J2.push_back(rnd(n3m));
      J1.push_back({rnd(n2), rnd(n3m)});
    }
    J2 = detail::unique_sorted(J2);
    J1 = detail::unique_sorted(J1);
  }

  CrossResult res;
  TensorTrain3 previous;
  bool have_previous = false;
  if (guess && guess->trailing() == m) {
    previous = *guess;
    have_previous = true;
  }

  auto left_to_right = [&]() {
    // Core 1 from mode-1 fibers at J1 plus random (j, k') pairs.
    std::vector<Pair> cols = J1;
    for (std::size_t t = 0; t < p; ++t) cols.push_back({rnd(n2), rnd(n3m)});
    cols = detail::unique_sorted(cols);
    std::vector<Pair> jk;
    for (const Pair& c : cols) jk.push_back({c[0], c[1] / m});
    jk = detail::unique_sorted(jk);
    RowMatrix s1 = sampler.fibers1(jk);
    RowMatrix c1(static_cast<Eigen::Index>(n1), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t a = 0; a < cols.size(); ++a) {
      const std::size_t pj = detail::position(jk, Pair{cols[a][0], cols[a][1] / m});
      for (std::size_t i = 0; i < n1; ++i)
        c1(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) =
            s1(static_cast<Eigen::Index>(pj * n1 + i), static_cast<Eigen::Index>(cols[a][1] % m));
    }
    detail::TruncatedSvd sv1 = detail::truncated_svd(c1, rel_tol * c1.norm(), cap);
    MaxvolResult mv1 = maxvol(sv1.u, cfg.maxvol_tol);
    I1.clear();
    for (auto r : mv1.rows) I1.push_back(static_cast<std::size_t>(r));
    const std::size_t r1 = I1.size();

    // Core 2 from I1 x all j x (J2 plus random k').
    std::vector<std::size_t> kc = J2;
    for (std::size_t t = 0; t < p; ++t) kc.push_back(rnd(n3m));
    kc = detail::unique_sorted(kc);
    std::vector<std::size_t> ks;
    for (std::size_t kp : kc) ks.push_back(kp / m);
    ks = detail::unique_sorted(ks);
    RowMatrix s2 = sampler.grid2(I1, ks);
    const std::size_t nb = ks.size();
    RowMatrix c2(static_cast<Eigen::Index>(r1 * n2), static_cast<Eigen::Index>(kc.size()));
    for (std::size_t b = 0; b < kc.size(); ++b) {
      const std::size_t pk = detail::position(ks, kc[b] / m);
      for (std::size_t aj = 0; aj < r1 * n2; ++aj)
        c2(static_cast<Eigen::Index>(aj), static_cast<Eigen::Index>(b)) =
            s2(static_cast<Eigen::Index>(aj * nb + pk), static_cast<Eigen::Index>(kc[b] % m));
    }
    detail::TruncatedSvd sv2 = detail::truncated_svd(c2, rel_tol * c2.norm(), cap);
    MaxvolResult mv2 = maxvol(sv2.u, cfg.maxvol_tol);
    I2.clear();
    for (auto r : mv2.rows) {
      const auto q = static_cast<std::size_t>(r);
      I2.push_back({I1[q / n2], q % n2});
    }
    const std::size_t r2 = I2.size();

    // Core 3 is the raw sample at the I2 fibers.
    RowMatrix s3 = sampler.fibers3(I2);
    RowMatrix g3 = Eigen::Map<RowMatrix>(s3.data(), static_cast<Eigen::Index>(r2), static_cast<Eigen::Index>(n3m));
    RowMatrix g2r = Eigen::Map<RowMatrix>(mv2.coefficients.data(), static_cast<Eigen::Index>(r1),
                                          static_cast<Eigen::Index>(n2 * r2));
    return detail::assemble(n1, n2, n3m, m, mv1.coefficients, g2r, g3);
  };

  auto right_to_left = [&]() {
    // Core 3 from mode-3 fibers at I2 plus random (i, j) pairs.
    std::vector<Pair> rows = I2;
    for (std::size_t t = 0; t < p; ++t) rows.push_back({rnd(n1), rnd(n2)});
    rows = detail::unique_sorted(rows);
    RowMatrix s3 = sampler.fibers3(rows);
    RowMatrix r3 = Eigen::Map<RowMatrix>(s3.data(), static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n3m));
    detail::TruncatedSvd sv3 = detail::truncated_svd(r3, rel_tol * r3.norm(), cap);
    MaxvolResult mv3 = maxvol(sv3.vt.transpose(), cfg.maxvol_tol);
    J2.clear();
    for (auto r : mv3.rows) J2.push_back(static_cast<std::size_t>(r));
    const std::size_t r2 = J2.size();
    RowMatrix g3 = mv3.coefficients.transpose();  // r2 x n3m

    // Core 2 from (I1 plus random i) x all j x J2.
    std::vector<std::size_t> is = I1;
    for (std::size_t t = 0; t < p; ++t) is.push_back(rnd(n1));
    is = detail::unique_sorted(is);
    std::vector<std::size_t> ks;
    for (std::size_t kp : J2) ks.push_back(kp / m);
    ks = detail::unique_sorted(ks);
    RowMatrix s2 = sampler.grid2(is, ks);
    const std::size_t nb = ks.size();
    RowMatrix r2m(static_cast<Eigen::Index>(is.size()), static_cast<Eigen::Index>(n2 * r2));
    for (std::size_t b = 0; b < r2; ++b) {
      const std::size_t pk = detail::position(ks, J2[b] / m);
      for (std::size_t a = 0; a < is.size(); ++a)
        for (std::size_t j = 0; j < n2; ++j)
          r2m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(j * r2 + b)) =
              s2(static_cast<Eigen::Index>((a * n2 + j) * nb + pk), static_cast<Eigen::Index>(J2[b] % m));
    }
    detail::TruncatedSvd sv2 = detail::truncated_svd(r2m, rel_tol * r2m.norm(), cap);
    MaxvolResult mv2 = maxvol(sv2.vt.transpose(), cfg.maxvol_tol);
    J1.clear();
    for (auto r : mv2.rows) {
      const auto q = static_cast<std::size_t>(r);
      J1.push_back({q / r2, J2[q % r2]});
    }
    const std::size_t r1 = J1.size();
    RowMatrix g2r = mv2.coefficients.transpose();  // r1 x n2 r2

    // Core 1 is the raw sample at the J1 fibers.
    std::vector<Pair> jk;
    for (const Pair& c : J1) jk.push_back({c[0], c[1] / m});
    std::vector<Pair> jku = detail::unique_sorted(jk);
    RowMatrix s1 = sampler.fibers1(jku);
    RowMatrix g1(static_cast<Eigen::Index>(n1), static_cast<Eigen::Index>(r1));
    for (std::size_t a = 0; a < r1; ++a) {
      const std::size_t pj = detail::position(jku, jk[a]);
      for (std::size_t i = 0; i < n1; ++i)
        g1(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) =
            s1(static_cast<Eigen::Index>(pj * n1 + i), static_cast<Eigen::Index>(J1[a][1] % m));
    }
    return detail::assemble(n1, n2, n3m, m, g1, g2r, g3);
  };

  // Validation points are fixed up front so repeated checks are comparable.
  std::vector<std::array<std::size_t, 3>> vpts;
  {
    std::mt19937_64 vrng(cfg.seed ^ 0xa5a5a5a5a5a5a5a5ULL);
    for (std::size_t t = 0; t < cfg.validation_samples; ++t)
      vpts.push_back({vrng() % n1, vrng() % n2, vrng() % n3});
  }
  RowMatrix vref;
  auto validate = [&](const TensorTrain3& tt) {
    if (vpts.empty()) return 0.0;
    if (vref.size() == 0) vref = sampler.points(vpts);
    double err = 0.0, ref = 0.0;
    for (std::size_t t = 0; t < vpts.size(); ++t)
      for (std::size_t c = 0; c < m; ++c) {
        const double fv = vref(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(c));
        const double d = tt.at(vpts[t][0], vpts[t][1], vpts[t][2], c) - fv;
        err += d * d;
        ref += fv * fv;
      }
    return ref > 0.0 ? std::sqrt(err / ref) : std::sqrt(err / static_cast<double>(vpts.size() * m));
  };

  TensorTrain3 current;
  for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
    current = (sweep % 2 == 0) ? left_to_right() : right_to_left();
    res.sweeps = sweep + 1;
    if (have_previous) {
      const double nrm = norm_frobenius(current);
      const double diff = norm_frobenius(add(current, scale(previous, -1.0)));
      res.last_change = nrm > 0.0 ? diff / nrm : diff;
      if (res.last_change <= eps) {
        res.validation_error = validate(current);
        if (res.validation_error <= 10.0 * eps) {
          res.converged = true;
          break;
        }
      }
    }
    previous = current;
    have_previous = true;
  }
  if (!res.converged) {
    res.validation_error = validate(current);
    if (!(res.validation_error <= 10.0 * eps))
      res.warning = "cross: accuracy target not reached after " + std::to_string(res.sweeps) +
                    " half-sweeps (change " + std::to_string(res.last_change) + ", validation " +
                    std::to_string(res.validation_error) + ")";
  }
  res.tt = std::move(current);
  res.evaluations = sampler.evaluations();
  res.rows1 = I1;
  res.rows2 = I2;
  res.cols2 = J2;
  return res;
}

inline CrossResult cross_interpolate(const ElementFunction& f, std::array<std::size_t, 3> n, std::size_t m,
                                     std::span<const TensorTrain3> inputs, const TensorTrain3& guess,
                                     const CrossConfig& cfg) {
  return cross_interpolate(f, n, m, inputs, &guess, cfg);
}

/// Convenience for functions of the index alone.
inline CrossResult cross_interpolate(const ElementFunction& f, std::array<std::size_t, 3> n, std::size_t m,
                                     const TensorTrain3* guess, const CrossConfig& cfg) {
  return cross_interpolate(f, n, m, std::span<const TensorTrain3>{}, guess, cfg);
}

}  // namespace wenott::tt
