#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "wenott/error.hpp"
#include "wenott/tt/tensor_train.hpp"

// Checkpoint format "TT3B" version 1, little-endian:
//   char[4] "TT3B", u32 version, u64 n1 n2 n3 r1 r2 m,
//   core1 (1 x n1 x r1), core2 (r1 x n2 x r2), core3 (r2 x n3 x m) as f64,
//   each core in (left-rank, mode, right-rank) order with the right rank fastest.
// For core 3 the mode index is k*m + c, so it is stored as (r2, n3, m).

namespace wenott::tt {

namespace detail {

template <class T>
void put_le(std::ostream& os, T v) {
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
  unsigned char buf[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(buf), sizeof(T))) throw ShapeError("TT3B: truncated stream");
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

}  // namespace detail

inline constexpr std::uint32_t kTT3BVersion = 1;

inline void write_tt3b(std::ostream& os, const TensorTrain3& tt) {
  os.write("TT3B", 4);
  detail::put_le<std::uint32_t>(os, kTT3BVersion);
  const auto n = tt.mode_sizes();
  const auto r = tt.ranks();
  for (std::uint64_t v : {std::uint64_t(n[0]), std::uint64_t(n[1]), std::uint64_t(n[2]), std::uint64_t(r[0]),
                          std::uint64_t(r[1]), std::uint64_t(tt.trailing())})
    detail::put_le<std::uint64_t>(os, v);
  for (const Core& c : tt.cores())
    for (double v : c.data) detail::put_le<double>(os, v);
  if (!os) throw Error("TT3B: write failed");
}

inline TensorTrain3 read_tt3b(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "TT3B", 4) != 0) throw ShapeError("TT3B: bad magic");
  const auto version = detail::get_le<std::uint32_t>(is);
  if (version != kTT3BVersion) throw ShapeError("TT3B: unsupported version " + std::to_string(version));
  std::array<std::uint64_t, 6> h{};
  for (auto& v : h) v = detail::get_le<std::uint64_t>(is);
  const auto [n1, n2, n3, r1, r2, m] = h;
  if (m == 0) throw ShapeError("TT3B: zero trailing size");
  auto read_core = [&](std::uint64_t l, std::uint64_t n, std::uint64_t r) {
    std::vector<double> d(l * n * r);
    for (double& v : d) v = detail::get_le<double>(is);
    return Core(l, n, r, std::move(d));
  };
  Core c1 = read_core(1, n1, r1);
  Core c2 = read_core(r1, n2, r2);
  Core c3 = read_core(r2, n3 * m, 1);
  return TensorTrain3(std::move(c1), std::move(c2), std::move(c3), m);
}

inline void save_tt3b(const std::string& path, const TensorTrain3& tt) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("TT3B: cannot open " + path);
  write_tt3b(os, tt);
}

inline TensorTrain3 load_tt3b(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("TT3B: cannot open " + path);
  return read_tt3b(is);
}

}  // namespace wenott::tt
