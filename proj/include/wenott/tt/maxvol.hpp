#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "wenott/error.hpp"
#include "wenott/tt/tensor_train.hpp"

namespace wenott::tt {

namespace detail {

/// Row picks from Gaussian elimination with partial pivoting; empty when a
/// pivot vanishes.
inline std::vector<Eigen::Index> lu_rows(RowMatrix a) {
  const Eigen::Index n = a.rows(), r = a.cols();
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  for (Eigen::Index c = 0; c < r; ++c) {
    Eigen::Index p;
    const double piv = a.col(c).tail(n - c).cwiseAbs().maxCoeff(&p);
    p += c;
    if (!(piv > 1e-14 * scale)) return {};
    if (p != c) {
      a.row(p).swap(a.row(c));
      std::swap(perm[static_cast<std::size_t>(p)], perm[static_cast<std::size_t>(c)]);
    }
    const Eigen::Index rest = n - c - 1;
    if (rest > 0) {
      a.col(c).tail(rest) /= a(c, c);
      a.bottomRightCorner(rest, r - c - 1).noalias() -= a.col(c).tail(rest) * a.row(c).tail(r - c - 1);
    }
  }
  return {perm.begin(), perm.begin() + r};
}

}  // namespace detail

struct MaxvolResult {
  std::vector<Eigen::Index> rows;
  RowMatrix coefficients;  // U * inv(U[rows]), n x r
};

/// Quasi-dominant r x r submatrix of a tall n x r matrix: every entry of
/// U inv(U[rows]) ends up at most 1 + tol in magnitude. Ties go to the first
/// candidate in row-major scan order.
inline MaxvolResult maxvol(const RowMatrix& u, double tol = 1e-2, int max_iter = 200) {
  const Eigen::Index n = u.rows(), r = u.cols();
  if (r == 0 || n < r) throw ShapeError("maxvol needs a tall matrix with at least one column");
  if (!u.allFinite()) throw NumericalError("maxvol: non-finite input");

  std::vector<Eigen::Index> rows = detail::lu_rows(u);
  if (rows.empty()) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(u.transpose());
    if (qr.rank() < r) throw NumericalError("maxvol: matrix is rank deficient");
    const auto& idx = qr.colsPermutation().indices();
    rows.assign(idx.data(), idx.data() + r);
  }

  RowMatrix sub(r, r);
  for (Eigen::Index a = 0; a < r; ++a) sub.row(a) = u.row(rows[static_cast<std::size_t>(a)]);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(sub.transpose());
  RowMatrix b = lu.solve(u.transpose()).transpose();  // U inv(sub)
  if (!b.allFinite()) throw NumericalError("maxvol: singular starting submatrix");

  for (int it = 0; it < max_iter; ++it) {
    Eigen::Index bi = 0, bj = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < r; ++j) {
        const double v = std::abs(b(i, j));
        if (v > best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (best <= 1.0 + tol) break;
    // Swap row rows[bj] for bi; rank-1 update of the coefficients.
    Eigen::VectorXd col = b.col(bj);
    Eigen::RowVectorXd row = b.row(bi);
    row(bj) -= 1.0;
    b.noalias() -= col * row / b(bi, bj);
    rows[static_cast<std::size_t>(bj)] = bi;
  }
  return {std::move(rows), std::move(b)};
}

}  // namespace wenott::tt
