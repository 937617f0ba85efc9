#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "wenott/tt_core.hpp"

using namespace wenott;
using namespace wenott::tt;

namespace {

DenseTensor sine_field(std::size_t n, double phase = 0.0) {
  DenseTensor x({n, n, n});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        x(i, j, k) = std::sin(2.0 * std::numbers::pi * (double(i + j + k) / double(n)) + phase);
  return x;
}

DenseTensor random_field(std::array<std::size_t, 3> d, unsigned seed, std::size_t m = 1) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  DenseTensor x(d, m);
  for (double& v : x.values) v = g(rng);
  return x;
}

double max_diff(const DenseTensor& a, const DenseTensor& b) {
  double d = 0.0;
  for (std::size_t q = 0; q < a.values.size(); ++q) d = std::max(d, std::abs(a.values[q] - b.values[q]));
  return d;
}

double diff_norm(const DenseTensor& a, const DenseTensor& b) {
  double s = 0.0;
  for (std::size_t q = 0; q < a.values.size(); ++q) s += (a.values[q] - b.values[q]) * (a.values[q] - b.values[q]);
  return std::sqrt(s);
}

}  // namespace

TEST(FromFull, OuterProductIsRankOne) {
  std::vector<double> a{1, -2, 3, 0.5, 7}, b{2, 1, -1, 4}, c{0.3, 0.2, 5};
  DenseTensor x({5, 4, 3});
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 3; ++k) x(i, j, k) = a[i] * b[j] * c[k];
  TensorTrain3 t = from_full(x, 1e-12);
  EXPECT_EQ(t.ranks(), (std::array<std::size_t, 2>{1, 1}));
  EXPECT_LE(max_diff(to_full(t), x), 1e-12 * x.frobenius());
}

TEST(FromFull, ZeroTensor) {
  DenseTensor x({8, 8, 8});
  TensorTrain3 t = from_full(x, 1e-10);
  EXPECT_EQ(t.ranks(), (std::array<std::size_t, 2>{1, 1}));
  EXPECT_EQ(norm_frobenius(t), 0.0);
}

TEST(FromFull, SineHasRankTwo) {
  TensorTrain3 t = from_full(sine_field(16), 1e-12);
  EXPECT_EQ(t.ranks(), (std::array<std::size_t, 2>{2, 2}));
}

TEST(FromFull, ErrorBoundForSeveralTolerances) {
  DenseTensor x = random_field({10, 11, 12}, 3);
  for (double eps : {1e-2, 1e-6, 1e-12}) {
    TensorTrain3 t = from_full(x, eps);
    EXPECT_LE(diff_norm(to_full(t), x), eps * x.frobenius() * (1 + 1e-12)) << eps;
  }
}

TEST(FromFull, RejectsNaN) {
  DenseTensor x({3, 3, 3});
  x(1, 1, 1) = std::nan("");
  EXPECT_THROW(from_full(x, 1e-8), NumericalError);
}

TEST(Eval, OnesAndScaling) {
  TensorTrain3 o = ones({4, 5, 6});
  EXPECT_DOUBLE_EQ(eval(o, 3, 2, 5), 1.0);
  TensorTrain3 s = from_full(sine_field(8), 1e-14);
  const double before = eval(s, 1, 2, 3);
  s.core_mut(1).right_unfolding() *= 2.0;
  EXPECT_NEAR(eval(s, 1, 2, 3), 2.0 * before, 1e-14);
  EXPECT_THROW(eval(o, 4, 0, 0), ShapeError);
}

TEST(Eval, MatchesDenseAfterTtSvd) {
  DenseTensor x = random_field({6, 7, 8}, 11);
  TensorTrain3 t = from_full(x, 1e-14);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 7; ++j)
      for (std::size_t k = 0; k < 8; ++k) EXPECT_NEAR(eval(t, i, j, k), x(i, j, k), 1e-12 * x.frobenius());
}

TEST(Round, DoubledTrainReturnsToRankTwo) {
  TensorTrain3 s = from_full(sine_field(16), 1e-12);
  TensorTrain3 d = add(s, s);
  EXPECT_EQ(d.ranks(), (std::array<std::size_t, 2>{4, 4}));
  TensorTrain3 r = round(d, 1e-12);
  EXPECT_EQ(r.ranks(), (std::array<std::size_t, 2>{2, 2}));
  DenseTensor x = sine_field(16);
  for (double& v : x.values) v *= 2.0;
  EXPECT_LE(max_diff(to_full(r), x), 1e-10);
}

TEST(Round, RankOneStaysRankOne) {
  TensorTrain3 o = ones({5, 5, 5});
  for (double eps : {0.0, 1e-12, 0.5}) EXPECT_EQ(round(o, eps).ranks(), (std::array<std::size_t, 2>{1, 1}));
}

TEST(Round, NoisySineRecoversRankTwo) {
  DenseTensor x = sine_field(16);
  DenseTensor noise = random_field({16, 16, 16}, 5);
  const double scale_noise = 1e-9 * x.frobenius() / noise.frobenius();
  for (double& v : noise.values) v *= scale_noise;
  TensorTrain3 noisy = add(from_full(x, 1e-14), from_full(noise, 1e-14));
  TensorTrain3 r = round(noisy, 1e-6);
  EXPECT_EQ(r.ranks(), (std::array<std::size_t, 2>{2, 2}));
}

TEST(Round, ErrorBoundAndMonotoneRanks) {
  for (unsigned seed = 0; seed < 4; ++seed) {
    DenseTensor x = random_field({8, 9, 10}, 100 + seed, seed % 2 ? 2 : 1);
    TensorTrain3 t = from_full(x, 0.0);
    for (double eps : {1e-1, 1e-3, 1e-8}) {
      TensorTrain3 r = round(t, eps);
      EXPECT_LE(diff_norm(to_full(r), x), eps * x.frobenius() * (1 + 1e-10));
      EXPECT_LE(r.ranks()[0], t.ranks()[0]);
      EXPECT_LE(r.ranks()[1], t.ranks()[1]);
    }
  }
}

TEST(RoundingTolerance, RejectsNegative) { EXPECT_THROW(RoundingTolerance(-1.0), Error); }

TEST(Add, StructureAndValues) {
  TensorTrain3 s = from_full(sine_field(16), 1e-13);
  TensorTrain3 z = zeros({16, 16, 16});
  TensorTrain3 sz = add(s, z);
  EXPECT_EQ(sz.ranks(), (std::array<std::size_t, 2>{3, 3}));
  EXPECT_LE(max_diff(to_full(sz), to_full(s)), 1e-15);

  TensorTrain3 two = add(ones({3, 4, 5}), ones({3, 4, 5}));
  for (double v : to_full(two).values) EXPECT_DOUBLE_EQ(v, 2.0);

  DenseTensor sn = sine_field(16), cs = sine_field(16, std::numbers::pi / 2);
  TensorTrain3 sum = add(from_full(sn, 1e-14), from_full(cs, 1e-14));
  DenseTensor want = sn;
  for (std::size_t q = 0; q < want.values.size(); ++q) want.values[q] += cs.values[q];
  EXPECT_LE(max_diff(to_full(sum), want), 1e-12);

  EXPECT_THROW(add(ones({3, 3, 3}), ones({3, 3, 4})), ShapeError);
}

TEST(ScaleHadamard, DenseAgreement) {
  TensorTrain3 s = from_full(sine_field(8), 1e-14);
  TensorTrain3 z = scale(s, 0.0);
  EXPECT_EQ(z.ranks(), s.ranks());
  EXPECT_EQ(norm_frobenius(z), 0.0);

  TensorTrain3 b = from_full(random_field({8, 8, 8}, 9), 1e-14);
  EXPECT_LE(max_diff(to_full(hadamard(ones({8, 8, 8}), b)), to_full(b)), 1e-12);

  TensorTrain3 sq = hadamard(s, s);
  EXPECT_EQ(sq.ranks(), (std::array<std::size_t, 2>{4, 4}));
  DenseTensor want = sine_field(8);
  for (double& v : want.values) v *= v;
  EXPECT_LE(max_diff(to_full(sq), want), 1e-12);
  EXPECT_THROW(hadamard(ones({2, 2, 2}), ones({2, 3, 2})), ShapeError);
}

TEST(Norm, Examples) {
  EXPECT_NEAR(norm_frobenius(ones({7, 7, 7})), std::pow(7.0, 1.5), 1e-12);
  TensorTrain3 s = from_full(sine_field(8), 1e-14);
  EXPECT_NEAR(norm_frobenius(scale(s, -3.0)), 3.0 * norm_frobenius(s), 1e-12);
  DenseTensor x = random_field({12, 12, 12}, 1);
  EXPECT_NEAR(norm_frobenius(from_full(x, 1e-14)) / x.frobenius(), 1.0, 1e-10);
}

TEST(MaxAbs, RankOneIsExact) {
  std::vector<double> a{1, 2}, b{1, -3}, c{0.5, -1};
  TensorTrain3 t = rank1(a, b, c);
  double want = 0.0;
  for (double v : to_full(t).values) want = std::max(want, std::abs(v));
  EXPECT_DOUBLE_EQ(max_abs(t), want);

  std::vector<double> x(8), y(8), z(8);
  for (int q = 0; q < 8; ++q) {
    x[q] = 1 + q % 3;
    y[q] = std::sin(q + 1.0);
    z[q] = q == 5 ? -4.0 : 1.0;
  }
  TensorTrain3 u = rank1(x, y, z);
  want = 0.0;
  for (double v : to_full(u).values) want = std::max(want, std::abs(v));
  EXPECT_GE(max_abs(u), want);
  EXPECT_NEAR(max_abs(u), want, 1e-14);
}

TEST(MaxAbs, ZeroAndSine) {
  EXPECT_EQ(max_abs(zeros({5, 5, 5})), 0.0);
  DenseTensor x = sine_field(16, 0.3);
  double want = 0.0;
  for (double v : x.values) want = std::max(want, std::abs(v));
  const double est = max_abs(from_full(x, 1e-13));
  EXPECT_NEAR(est, want, 0.01 * want);
}

TEST(MaxAbs, LocalizedPeak) {
  DenseTensor x({14, 15, 16});
  for (std::size_t i = 0; i < 14; ++i)
    for (std::size_t j = 0; j < 15; ++j)
      for (std::size_t k = 0; k < 16; ++k) {
        const double r2 = std::pow(i - 9.0, 2) + std::pow(j - 3.0, 2) + std::pow(k - 11.0, 2);
        x(i, j, k) = 0.5 * std::sin(0.3 * (i + 2.0 * j + k)) + 3.0 * std::exp(-r2);
      }
  double want = 0.0;
  for (double v : x.values) want = std::max(want, std::abs(v));
  EXPECT_NEAR(max_abs(from_full(x, 1e-12)), want, 0.01 * want);
}

TEST(Shift, Examples) {
  TensorTrain3 s = from_full(random_field({9, 8, 7}, 2), 1e-14);
  TensorTrain3 same = shift(s, 0, 0);
  for (std::size_t d = 0; d < 3; ++d) EXPECT_EQ(same.core(d).data, s.core(d).data);

  std::vector<double> a{1, 2, 3, 4, 5, 6}, b{1, -1, 2}, c{3, 1};
  TensorTrain3 r = rank1(a, b, c);
  TensorTrain3 sh = shift(r, 0, 1);
  for (std::size_t i = 0; i + 1 < 6; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 2; ++k) EXPECT_DOUBLE_EQ(eval(sh, i, j, k), a[i + 1] * b[j] * c[k]);
  EXPECT_DOUBLE_EQ(eval(sh, 5, 0, 0), 0.0);

  for (int axis = 0; axis < 3; ++axis) {
    TensorTrain3 back = shift(shift(s, axis, 1), axis, -1);
    const auto n = s.mode_sizes();
    for (std::size_t i = 0; i < n[0]; ++i)
      for (std::size_t j = 0; j < n[1]; ++j)
        for (std::size_t k = 0; k < n[2]; ++k) {
          const std::array<std::size_t, 3> idx{i, j, k};
          if (idx[axis] == 0) continue;
          EXPECT_DOUBLE_EQ(eval(back, i, j, k), eval(s, i, j, k));
        }
  }
  EXPECT_THROW(shift(s, 0, 4), ShapeError);
  EXPECT_THROW(shift(s, 1, -4), ShapeError);
}

TEST(Shift, OnlyAxisCoreChanges) {
  TensorTrain3 s = from_full(random_field({9, 8, 7}, 4), 1e-14);
  for (int axis = 0; axis < 3; ++axis)
    for (int off : {-3, -1, 2, 3}) {
      TensorTrain3 t = shift(s, axis, off);
      for (int d = 0; d < 3; ++d) {
        if (d != axis) {
          EXPECT_EQ(t.core(d).data, s.core(d).data);
        }
      }
    }
}

TEST(Trailing, SliceAndUnfold) {
  DenseTensor x = random_field({4, 5, 6}, 21, 3);
  TensorTrain3 t = from_full(x, 1e-14);
  EXPECT_EQ(t.trailing(), 3u);
  auto parts = unfold_trailing(t);
  ASSERT_EQ(parts.size(), 3u);
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(eval(parts[c], i, 2, k), x(i, 2, k, c), 1e-12);
}

TEST(Checkpoint, RoundTripAndHeader) {
  DenseTensor x = random_field({4, 5, 3}, 8, 2);
  TensorTrain3 t = from_full(x, 1e-14);
  std::stringstream ss;
  write_tt3b(ss, t);
  const std::string bytes = ss.str();
  ASSERT_GE(bytes.size(), 8u + 6 * 8u);
  EXPECT_EQ(bytes.substr(0, 4), "TT3B");
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 1u);
  EXPECT_EQ(bytes.size(), 4 + 4 + 6 * 8 + 8 * t.element_count());
  TensorTrain3 back = read_tt3b(ss);
  EXPECT_EQ(back.trailing(), 2u);
  for (std::size_t d = 0; d < 3; ++d) EXPECT_EQ(back.core(d).data, t.core(d).data);

  std::stringstream bad("XXXX");
  EXPECT_THROW(read_tt3b(bad), ShapeError);
}
