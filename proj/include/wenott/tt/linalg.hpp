#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "wenott/error.hpp"
#include "wenott/tt/tensor_train.hpp"

namespace wenott::tt::detail {

struct ThinQR {
  RowMatrix q;  // rows x k, orthonormal columns
  RowMatrix r;  // k x cols
};

/// Thin QR with k = min(rows, cols).
inline ThinQR thin_qr(const RowMatrix& m) {
  const Eigen::Index k = std::min(m.rows(), m.cols());
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  ThinQR out;
  out.q = qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), k);
  out.r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  return out;
}

struct TruncatedSvd {
  RowMatrix u;       // rows x rank
  Eigen::VectorXd s; // rank
  RowMatrix vt;      // rank x cols
  double norm = 0.0; // Frobenius norm of the input
};

/// Smallest rank whose discarded tail has 2-norm at most `tol` (absolute);
/// at least 1 and at most `max_rank` when positive.
inline Eigen::Index truncation_rank(const Eigen::VectorXd& s, double tol, Eigen::Index max_rank = 0) {
  Eigen::Index rank = s.size();
  double tail = 0.0;
  while (rank > 1) {
    const double next = tail + s(rank - 1) * s(rank - 1);
    if (next > tol * tol) break;
    tail = next;
    --rank;
  }
  if (max_rank > 0) rank = std::min(rank, max_rank);
  return std::max<Eigen::Index>(rank, 1);
}

inline constexpr Eigen::Index kJacobiMaxDim = 256;

/// SVD truncated at absolute Frobenius tolerance `tol`.
inline TruncatedSvd truncated_svd(const RowMatrix& m, double tol, Eigen::Index max_rank = 0) {
  if (!m.allFinite()) throw NumericalError("non-finite entries passed to SVD");
  TruncatedSvd out;
  auto take = [&](const auto& svd) {
    const Eigen::VectorXd& s = svd.singularValues();
    out.norm = s.norm();
    const Eigen::Index rank = truncation_rank(s, tol, max_rank);
    out.u = svd.matrixU().leftCols(rank);
    out.s = s.head(rank);
    out.vt = svd.matrixV().leftCols(rank).transpose();
    return svd.info() == Eigen::Success && out.u.allFinite() && out.vt.allFinite() && out.s.allFinite();
  };
  // Eigen 3.4's BDCSVD can index out of bounds in its deflation step
  // (perturbCol0) on clustered spectra, so it is only used for large square-ish
  // blocks. Jacobi runs after a QR preconditioner and costs O(min(n, m)^3)
  // beyond that, which is small for the thin unfoldings seen here.
  const Eigen::Index k = std::min(m.rows(), m.cols());
  if (k <= kJacobiMaxDim && take(Eigen::JacobiSVD<Eigen::MatrixXd>(m, Eigen::ComputeThinU | Eigen::ComputeThinV)))
    return out;
  if (take(Eigen::BDCSVD<Eigen::MatrixXd>(m, Eigen::ComputeThinU | Eigen::ComputeThinV))) return out;
  if (k > kJacobiMaxDim && take(Eigen::JacobiSVD<Eigen::MatrixXd>(m, Eigen::ComputeThinU | Eigen::ComputeThinV)))
    return out;
  throw NumericalError("SVD did not converge");
}

}  // namespace wenott::tt::detail
