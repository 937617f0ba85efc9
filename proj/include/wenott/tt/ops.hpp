#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wenott/error.hpp"
#include "wenott/tt/linalg.hpp"
#include "wenott/tt/tensor_train.hpp"

namespace wenott::tt {

/// Relative Frobenius tolerance for rounding and TT-SVD.
struct RoundingTolerance {
  double eps_tt = 0.0;

  RoundingTolerance() = default;
  RoundingTolerance(double eps) : eps_tt(eps) {  // NOLINT(google-explicit-constructor)
    if (!(eps >= 0.0)) throw ShapeError("rounding tolerance must be nonnegative");
  }
};

// ---------------------------------------------------------------------------
// Construction

/// Outer product a(i) b(j) c(k); rank (1,1).
inline TensorTrain3 rank1(std::span<const double> a, std::span<const double> b, std::span<const double> c) {
  Core g1(1, a.size(), 1, std::vector<double>(a.begin(), a.end()));
  Core g2(1, b.size(), 1, std::vector<double>(b.begin(), b.end()));
  Core g3(1, c.size(), 1, std::vector<double>(c.begin(), c.end()));
  return TensorTrain3(std::move(g1), std::move(g2), std::move(g3));
}

inline TensorTrain3 constant(std::array<std::size_t, 3> n, double value) {
  std::vector<double> a(n[0], value), b(n[1], 1.0), c(n[2], 1.0);
  return rank1(a, b, c);
}

inline TensorTrain3 ones(std::array<std::size_t, 3> n) { return constant(n, 1.0); }

/// Rank-(1,1) zero train, optionally stacked.
inline TensorTrain3 zeros(std::array<std::size_t, 3> n, std::size_t trailing = 1) {
  return TensorTrain3(Core(1, n[0], 1), Core(1, n[1], 1), Core(1, n[2] * trailing, 1), trailing);
}

// ---------------------------------------------------------------------------
// Element access

inline double eval(const TensorTrain3& tt, std::size_t i, std::size_t j, std::size_t k, std::size_t c = 0) {
  const auto n = tt.mode_sizes();
  if (i >= n[0] || j >= n[1] || k >= n[2] || c >= tt.trailing())
    throw ShapeError("tensor train index out of range");
  return tt.at(i, j, k, c);
}

inline DenseTensor to_full(const TensorTrain3& tt) {
  const auto n = tt.mode_sizes();
  const std::size_t m = tt.trailing();
  DenseTensor out(n, m);
  const Core& g1 = tt.core(0);
  const Core& g2 = tt.core(1);
  const Core& g3 = tt.core(2);
  // (n1 x r1) * (r1 x n2 r2) -> (n1 n2 x r2) * (r2 x n3 m)
  RowMatrix left = g1.left_unfolding() * g2.right_unfolding();
  Eigen::Map<RowMatrix> lr(left.data(), static_cast<Eigen::Index>(n[0] * n[1]),
                           static_cast<Eigen::Index>(g2.right));
  RowMatrix full = lr * g3.right_unfolding();
  std::copy(full.data(), full.data() + full.size(), out.values.begin());
  return out;
}

// ---------------------------------------------------------------------------
// Arithmetic

inline void require_same_shape(const TensorTrain3& a, const TensorTrain3& b, const char* what) {
  if (a.mode_sizes() != b.mode_sizes() || a.trailing() != b.trailing())
    throw ShapeError(std::string(what) + ": tensor shapes differ");
}

/// Exact sum; ranks add.
inline TensorTrain3 add(const TensorTrain3& a, const TensorTrain3& b) {
  require_same_shape(a, b, "add");
  const auto n = a.mode_sizes();
  const auto [ra1, ra2] = a.ranks();
  const auto [rb1, rb2] = b.ranks();
  const std::size_t n3 = a.core(2).mode;

  Core g1(1, n[0], ra1 + rb1);
  for (std::size_t i = 0; i < n[0]; ++i) {
    for (std::size_t x = 0; x < ra1; ++x) g1(0, i, x) = a.core(0)(0, i, x);
    for (std::size_t x = 0; x < rb1; ++x) g1(0, i, ra1 + x) = b.core(0)(0, i, x);
  }
  Core g2(ra1 + rb1, n[1], ra2 + rb2);
  for (std::size_t j = 0; j < n[1]; ++j) {
    for (std::size_t x = 0; x < ra1; ++x)
      for (std::size_t y = 0; y < ra2; ++y) g2(x, j, y) = a.core(1)(x, j, y);
    for (std::size_t x = 0; x < rb1; ++x)
      for (std::size_t y = 0; y < rb2; ++y) g2(ra1 + x, j, ra2 + y) = b.core(1)(x, j, y);
  }
  Core g3(ra2 + rb2, n3, 1);
  for (std::size_t y = 0; y < ra2; ++y)
    for (std::size_t k = 0; k < n3; ++k) g3(y, k, 0) = a.core(2)(y, k, 0);
  for (std::size_t y = 0; y < rb2; ++y)
    for (std::size_t k = 0; k < n3; ++k) g3(ra2 + y, k, 0) = b.core(2)(y, k, 0);
  return TensorTrain3(std::move(g1), std::move(g2), std::move(g3), a.trailing());
}

/// Multiplies the middle core by s.
inline TensorTrain3 scale(const TensorTrain3& a, double s) {
  TensorTrain3 out = a;
  for (double& v : out.core_mut(1).data) v *= s;
  return out;
}

/// a + s*b, exact.
inline TensorTrain3 axpy(const TensorTrain3& a, double s, const TensorTrain3& b) { return add(a, scale(b, s)); }

/// Elementwise product; ranks multiply.
inline TensorTrain3 hadamard(const TensorTrain3& a, const TensorTrain3& b) {
  require_same_shape(a, b, "hadamard");
  std::array<Core, 3> out;
  for (std::size_t d = 0; d < 3; ++d) {
    const Core& x = a.core(d);
    const Core& y = b.core(d);
    Core z(x.left * y.left, x.mode, x.right * y.right);
    for (std::size_t a1 = 0; a1 < x.left; ++a1)
      for (std::size_t a2 = 0; a2 < y.left; ++a2)
        for (std::size_t i = 0; i < x.mode; ++i)
          for (std::size_t b1 = 0; b1 < x.right; ++b1) {
            const double xv = x(a1, i, b1);
            for (std::size_t b2 = 0; b2 < y.right; ++b2)
              z(a1 * y.left + a2, i, b1 * y.right + b2) = xv * y(a2, i, b2);
          }
    out[d] = std::move(z);
  }
  return TensorTrain3(std::move(out[0]), std::move(out[1]), std::move(out[2]), a.trailing());
}

// ---------------------------------------------------------------------------
// Orthogonalization, norms, rounding

namespace detail {

/// Right-to-left orthogonalization: cores 2 and 3 get orthonormal rows in their
/// right unfoldings; all weight ends up in core 1.
inline std::array<RowMatrix, 3> right_orthogonalize(const TensorTrain3& tt) {
  const Core& c1 = tt.core(0);
  const Core& c2 = tt.core(1);
  const Core& c3 = tt.core(2);
  const std::size_t n2 = c2.mode;

  RowMatrix g3 = c3.right_unfolding();  // r2 x n3m
  ThinQR q3 = thin_qr(g3.transpose());  // n3m x r2'
  RowMatrix q3t = q3.q.transpose();     // r2' x n3m
  RowMatrix l3 = q3.r.transpose();      // r2 x r2'

  RowMatrix g2l = RowMatrix(c2.left_unfolding()) * l3;  // r1 n2 x r2'
  const Eigen::Index r2n = g2l.cols();
  RowMatrix g2r = Eigen::Map<RowMatrix>(g2l.data(), static_cast<Eigen::Index>(c2.left),
                                        static_cast<Eigen::Index>(n2) * r2n);
  ThinQR q2 = thin_qr(g2r.transpose());  // n2 r2' x r1'
  RowMatrix q2t = q2.q.transpose();      // r1' x n2 r2'
  RowMatrix l2 = q2.r.transpose();       // r1 x r1'

  RowMatrix g1 = RowMatrix(c1.left_unfolding()) * l2;  // n1 x r1'
  return {std::move(g1), std::move(q2t), std::move(q3t)};
}

inline TensorTrain3 assemble(std::size_t n1, std::size_t n2, std::size_t n3m, std::size_t m, const RowMatrix& g1,
                             const RowMatrix& g2_right, const RowMatrix& g3) {
  const auto r1 = static_cast<std::size_t>(g1.cols());
  const auto r2 = static_cast<std::size_t>(g3.rows());
  Core c1(1, n1, r1);
  c1.left_unfolding() = g1;
  Core c2(r1, n2, r2);
  c2.right_unfolding() = g2_right;
  Core c3(r2, n3m, 1);
  c3.right_unfolding() = g3;
  return TensorTrain3(std::move(c1), std::move(c2), std::move(c3), m);
}

}  // namespace detail

/// Frobenius norm via left-to-right orthogonalization (no dense reconstruction).
inline double norm_frobenius(const TensorTrain3& tt) {
  const Core& c1 = tt.core(0);
  const Core& c2 = tt.core(1);
  const Core& c3 = tt.core(2);
  detail::ThinQR q1 = detail::thin_qr(RowMatrix(c1.left_unfolding()));  // r1' x r1
  RowMatrix g2 = q1.r * RowMatrix(c2.right_unfolding());                 // r1' x n2 r2
  const Eigen::Index r1p = g2.rows();
  RowMatrix g2l = Eigen::Map<RowMatrix>(g2.data(), r1p * static_cast<Eigen::Index>(c2.mode),
                                        static_cast<Eigen::Index>(c2.right));
  detail::ThinQR q2 = detail::thin_qr(g2l);
  RowMatrix g3 = q2.r * RowMatrix(c3.right_unfolding());
  return g3.norm();
}

/// TT-rounding: right-to-left orthogonalization, then left-to-right truncated
/// SVDs with the tolerance split eps/sqrt(2) per bond. Optional rank cap.
/// `abs_tol` is an absolute floor on the discarded norm; a train whose norm
/// is below it becomes zero.
inline TensorTrain3 round(const TensorTrain3& tt, RoundingTolerance eps, std::size_t max_rank = 0,
                          double abs_tol = 0.0) {
  const auto n = tt.mode_sizes();
  const std::size_t n3m = tt.core(2).mode;
  const std::size_t m = tt.trailing();
  if (!tt.finite()) throw NumericalError("round: non-finite core entries");

  auto [g1, g2r, g3] = detail::right_orthogonalize(tt);
  const double nrm = g1.norm();
  if (nrm == 0.0 || nrm <= abs_tol) return zeros(n, m);
  const double tol = std::max(eps.eps_tt * nrm, abs_tol) / std::sqrt(2.0);
  const auto cap = static_cast<Eigen::Index>(max_rank);

  detail::TruncatedSvd s1 = detail::truncated_svd(g1, tol, cap);  // n1 x r1'
  RowMatrix carry = s1.s.asDiagonal() * s1.vt;                    // rho1 x r1'
  RowMatrix g2 = carry * g2r;                                     // rho1 x n2 r2'
  const Eigen::Index rho1 = g2.rows();
  const Eigen::Index r2p = g3.rows();
  RowMatrix g2l = Eigen::Map<RowMatrix>(g2.data(), rho1 * static_cast<Eigen::Index>(n[1]), r2p);
  detail::TruncatedSvd s2 = detail::truncated_svd(g2l, tol, cap);
  RowMatrix new_g3 = (s2.s.asDiagonal() * s2.vt) * g3;  // rho2 x n3m
  const Eigen::Index rho2 = new_g3.rows();
  RowMatrix new_g2r = Eigen::Map<RowMatrix>(s2.u.data(), rho1, static_cast<Eigen::Index>(n[1]) * rho2);
  return detail::assemble(n[0], n[1], n3m, m, s1.u, new_g2r, new_g3);
}

/// TT-SVD of a dense tensor.
inline TensorTrain3 from_full(const DenseTensor& x, RoundingTolerance eps) {
  for (double v : x.values)
    if (!std::isfinite(v)) throw NumericalError("from_full: non-finite input");
  const auto [n1, n2, n3] = x.dims;
  const std::size_t m = x.trailing;
  const std::size_t n3m = n3 * m;
  if (x.values.size() != n1 * n2 * n3m) throw ShapeError("from_full: value count does not match dims");
  const double nrm = x.frobenius();
  if (nrm == 0.0) return zeros({n1, n2, n3}, m);
  const double tol = eps.eps_tt / std::sqrt(2.0) * nrm;

  Eigen::Map<const RowMatrix> a(x.values.data(), static_cast<Eigen::Index>(n1), static_cast<Eigen::Index>(n2 * n3m));
  detail::TruncatedSvd s1 = detail::truncated_svd(a, tol);
  RowMatrix rest = s1.s.asDiagonal() * s1.vt;  // rho1 x n2 n3m
  const Eigen::Index rho1 = rest.rows();
  RowMatrix b = Eigen::Map<RowMatrix>(rest.data(), rho1 * static_cast<Eigen::Index>(n2), static_cast<Eigen::Index>(n3m));
  detail::TruncatedSvd s2 = detail::truncated_svd(b, tol);
  RowMatrix g3 = s2.s.asDiagonal() * s2.vt;
  const Eigen::Index rho2 = g3.rows();
  RowMatrix g2r = Eigen::Map<RowMatrix>(s2.u.data(), rho1, static_cast<Eigen::Index>(n2) * rho2);
  return detail::assemble(n1, n2, n3m, m, s1.u, g2r, g3);
}

// ---------------------------------------------------------------------------
// Index manipulation

inline constexpr int kMaxShift = 3;

/// result(..., p, ...) = tt(..., p + offset, ...) along `axis`; slots whose
/// source lies outside the mode range are zero. Only that axis's core changes.
inline TensorTrain3 shift(const TensorTrain3& tt, int axis, int offset) {
  if (axis < 0 || axis > 2) throw ShapeError("shift: axis must be 0, 1 or 2");
  if (std::abs(offset) > kMaxShift) throw ShapeError("shift: offset exceeds the ghost width");
  if (offset == 0) return tt;
  TensorTrain3 out = tt;
  const Core& src = tt.core(static_cast<std::size_t>(axis));
  Core& dst = out.core_mut(static_cast<std::size_t>(axis));
  const std::size_t m = axis == 2 ? tt.trailing() : 1;
  const auto n = static_cast<long>(src.mode / m);
  std::fill(dst.data.begin(), dst.data.end(), 0.0);
  for (std::size_t a = 0; a < src.left; ++a)
    for (long p = 0; p < n; ++p) {
      const long q = p + offset;
      if (q < 0 || q >= n) continue;
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t b = 0; b < src.right; ++b)
          dst(a, static_cast<std::size_t>(p) * m + c, b) = src(a, static_cast<std::size_t>(q) * m + c, b);
    }
  return out;
}

/// Multiplies every slice of `axis`'s core at mode index p by w[p].
inline TensorTrain3 scale_slices(const TensorTrain3& tt, int axis, std::span<const double> w) {
  TensorTrain3 out = tt;
  Core& g = out.core_mut(static_cast<std::size_t>(axis));
  const std::size_t m = axis == 2 ? tt.trailing() : 1;
  if (w.size() * m != g.mode) throw ShapeError("scale_slices: weight length mismatch");
  for (std::size_t a = 0; a < g.left; ++a)
    for (std::size_t p = 0; p < w.size(); ++p)
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t b = 0; b < g.right; ++b) g(a, p * m + c, b) *= w[p];
  return out;
}

/// Zeroes the slices of `axis`'s core outside [begin, end).
inline TensorTrain3 restrict_range(const TensorTrain3& tt, int axis, std::size_t begin, std::size_t end) {
  const std::size_t n = tt.mode_sizes()[static_cast<std::size_t>(axis)];
  std::vector<double> w(n, 0.0);
  for (std::size_t p = begin; p < std::min(end, n); ++p) w[p] = 1.0;
  return scale_slices(tt, axis, w);
}

/// Copies the mode-`axis` slice `from` onto slice `to` (in place).
inline void copy_slice(TensorTrain3& tt, int axis, std::size_t from, std::size_t to, double factor = 1.0) {
  Core& g = tt.core_mut(static_cast<std::size_t>(axis));
  const std::size_t m = axis == 2 ? tt.trailing() : 1;
  for (std::size_t a = 0; a < g.left; ++a)
    for (std::size_t c = 0; c < m; ++c)
      for (std::size_t b = 0; b < g.right; ++b) g(a, to * m + c, b) = factor * g(a, from * m + c, b);
}

/// Sub-tensor over index box [begin, end) per axis (cores are sliced).
inline TensorTrain3 sub_box(const TensorTrain3& tt, std::array<std::size_t, 3> begin, std::array<std::size_t, 3> end) {
  std::array<Core, 3> out;
  for (std::size_t d = 0; d < 3; ++d) {
    const Core& g = tt.core(d);
    const std::size_t m = d == 2 ? tt.trailing() : 1;
    const std::size_t len = end[d] - begin[d];
    Core c(g.left, len * m, g.right);
    for (std::size_t a = 0; a < g.left; ++a)
      for (std::size_t p = 0; p < len * m; ++p)
        for (std::size_t b = 0; b < g.right; ++b) c(a, p, b) = g(a, begin[d] * m + p, b);
    out[d] = std::move(c);
  }
  return TensorTrain3(std::move(out[0]), std::move(out[1]), std::move(out[2]), tt.trailing());
}

/// Places `tt` at [offset, offset + len) of a mode of size `full` along
/// `axis`, zero elsewhere.
inline TensorTrain3 embed(const TensorTrain3& tt, int axis, std::size_t offset, std::size_t full) {
  const auto d = static_cast<std::size_t>(axis);
  const std::size_t m = d == 2 ? tt.trailing() : 1;
  const Core& g = tt.core(d);
  const std::size_t len = g.mode / m;
  if (offset + len > full) throw ShapeError("embed: slab does not fit");
  Core c(g.left, full * m, g.right);
  for (std::size_t a = 0; a < g.left; ++a)
    for (std::size_t p = 0; p < len * m; ++p)
      for (std::size_t b = 0; b < g.right; ++b) c(a, offset * m + p, b) = g(a, p, b);
  std::array<Core, 3> cores = tt.cores();
  cores[d] = std::move(c);
  return TensorTrain3(std::move(cores[0]), std::move(cores[1]), std::move(cores[2]), tt.trailing());
}

/// Slice `c` of the trailing index as a scalar (m = 1) train.
inline TensorTrain3 trailing_slice(const TensorTrain3& tt, std::size_t c) {
  const std::size_t m = tt.trailing();
  if (c >= m) throw ShapeError("trailing_slice: index out of range");
  const Core& g3 = tt.core(2);
  const std::size_t n3 = g3.mode / m;
  Core s(g3.left, n3, 1);
  for (std::size_t b = 0; b < g3.left; ++b)
    for (std::size_t k = 0; k < n3; ++k) s(b, k, 0) = g3(b, k * m + c, 0);
  return TensorTrain3(tt.core(0), tt.core(1), std::move(s), 1);
}

/// Splits a stacked train into its m scalar trains.
inline std::vector<TensorTrain3> unfold_trailing(const TensorTrain3& tt) {
  std::vector<TensorTrain3> out;
  out.reserve(tt.trailing());
  for (std::size_t c = 0; c < tt.trailing(); ++c) out.push_back(trailing_slice(tt, c));
  return out;
}

}  // namespace wenott::tt
