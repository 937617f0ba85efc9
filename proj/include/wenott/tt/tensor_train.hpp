#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wenott/error.hpp"

namespace wenott::tt {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowMap = Eigen::Map<RowMatrix>;
using ConstRowMap = Eigen::Map<const RowMatrix>;
using ConstStridedMap = Eigen::Map<const RowMatrix, 0, Eigen::OuterStride<>>;

/// Three-index array stored as (left-rank, mode, right-rank), right rank fastest.
struct Core {
  std::size_t left = 1;
  std::size_t mode = 1;
  std::size_t right = 1;
  std::vector<double> data = std::vector<double>(1, 0.0);

  Core() = default;
  Core(std::size_t l, std::size_t n, std::size_t r) : left(l), mode(n), right(r), data(l * n * r, 0.0) {}
  Core(std::size_t l, std::size_t n, std::size_t r, std::vector<double> values)
      : left(l), mode(n), right(r), data(std::move(values)) {
    if (data.size() != l * n * r) throw ShapeError("core data size does not match its shape");
  }

  double& operator()(std::size_t a, std::size_t i, std::size_t b) { return data[(a * mode + i) * right + b]; }
  double operator()(std::size_t a, std::size_t i, std::size_t b) const {
    return data[(a * mode + i) * right + b];
  }

  /// (left*mode) x right
  RowMap left_unfolding() {
    return RowMap(data.data(), static_cast<Eigen::Index>(left * mode), static_cast<Eigen::Index>(right));
  }
  ConstRowMap left_unfolding() const {
    return ConstRowMap(data.data(), static_cast<Eigen::Index>(left * mode), static_cast<Eigen::Index>(right));
  }
  /// left x (mode*right)
  RowMap right_unfolding() {
    return RowMap(data.data(), static_cast<Eigen::Index>(left), static_cast<Eigen::Index>(mode * right));
  }
  ConstRowMap right_unfolding() const {
    return ConstRowMap(data.data(), static_cast<Eigen::Index>(left), static_cast<Eigen::Index>(mode * right));
  }
  /// r-by-r' matrix for one mode index.
  ConstStridedMap slice(std::size_t i) const {
    return ConstStridedMap(data.data() + i * right, static_cast<Eigen::Index>(left),
                       static_cast<Eigen::Index>(right),
                       Eigen::OuterStride<>(static_cast<Eigen::Index>(mode * right)));
  }

  static Core from_left_unfolding(std::size_t l, std::size_t n, const RowMatrix& m) {
    Core c(l, n, static_cast<std::size_t>(m.cols()));
    c.left_unfolding() = m;
    return c;
  }
  static Core from_right_unfolding(std::size_t n, std::size_t r, const RowMatrix& m) {
    Core c(static_cast<std::size_t>(m.rows()), n, r);
    c.right_unfolding() = m;
    return c;
  }

  bool finite() const {
    for (double v : data)
      if (!std::isfinite(v)) return false;
    return true;
  }
};

/// Tensor train of a 3D field. The last core may carry a trailing index of size
/// m, so that element (i,j,k) is an m-vector; mode index of core 3 is k*m + c.
class TensorTrain3 {
 public:
  TensorTrain3() : TensorTrain3(Core(1, 1, 1), Core(1, 1, 1), Core(1, 1, 1)) {}

  TensorTrain3(Core g1, Core g2, Core g3, std::size_t trailing = 1)
      : cores_{std::move(g1), std::move(g2), std::move(g3)}, trailing_(trailing) {
    validate();
  }

  const Core& core(std::size_t d) const { return cores_.at(d); }
  /// Direct core access; callers must keep ranks consistent.
  Core& core_mut(std::size_t d) { return cores_.at(d); }
  const std::array<Core, 3>& cores() const { return cores_; }

  std::size_t trailing() const { return trailing_; }
  std::array<std::size_t, 3> mode_sizes() const {
    return {cores_[0].mode, cores_[1].mode, cores_[2].mode / trailing_};
  }
  std::array<std::size_t, 2> ranks() const { return {cores_[0].right, cores_[1].right}; }

  /// Number of stored reals.
  std::size_t element_count() const {
    return cores_[0].data.size() + cores_[1].data.size() + cores_[2].data.size();
  }

  /// G1(i) G2(j) G3(k), no range checks.
  double at(std::size_t i, std::size_t j, std::size_t k, std::size_t c = 0) const {
    const Core& g1 = cores_[0];
    const Core& g2 = cores_[1];
    const Core& g3 = cores_[2];
    const std::size_t kk = k * trailing_ + c;
    double sum = 0.0;
    for (std::size_t b = 0; b < g2.right; ++b) {
      double row = 0.0;
      for (std::size_t a = 0; a < g1.right; ++a) row += g1(0, i, a) * g2(a, j, b);
      sum += row * g3(b, kk, 0);
    }
    return sum;
  }

  bool finite() const { return cores_[0].finite() && cores_[1].finite() && cores_[2].finite(); }

  void validate() const {
    const auto& [g1, g2, g3] = cores_;
    if (g1.left != 1 || g3.right != 1) throw ShapeError("boundary ranks of a tensor train must be 1");
    if (g1.right != g2.left || g2.right != g3.left) throw ShapeError("adjacent core ranks disagree");
    if (trailing_ == 0 || g3.mode % trailing_ != 0) throw ShapeError("trailing size does not divide core 3");
    for (const Core& c : cores_)
      if (c.data.size() != c.left * c.mode * c.right) throw ShapeError("core data size mismatch");
  }

 private:
  std::array<Core, 3> cores_;
  std::size_t trailing_ = 1;
};

/// Dense view used by TT-SVD and tests; C order (i slowest, trailing fastest).
struct DenseTensor {
  std::array<std::size_t, 3> dims{};
  std::size_t trailing = 1;
  std::vector<double> values;

  DenseTensor() = default;
  DenseTensor(std::array<std::size_t, 3> d, std::size_t m = 1)
      : dims(d), trailing(m), values(d[0] * d[1] * d[2] * m, 0.0) {}

  std::size_t index(std::size_t i, std::size_t j, std::size_t k, std::size_t c = 0) const {
    return ((i * dims[1] + j) * dims[2] + k) * trailing + c;
  }
  double& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t c = 0) {
    return values[index(i, j, k, c)];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t c = 0) const {
    return values[index(i, j, k, c)];
  }
  double frobenius() const {
    double s = 0.0;
    for (double v : values) s += v * v;
    return std::sqrt(s);
  }
};

}  // namespace wenott::tt
