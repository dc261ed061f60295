#pragma once

// Conversions between library types and the plain integers the oracles use.

#include "k3ent/matrix.hpp"
#include "oracles.hpp"

#include <vector>

inline std::vector<std::vector<std::int64_t>> to_rows(const k3ent::IntMatrix& m) {
  std::vector<std::vector<std::int64_t>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(k3ent::to_int64(m(i, j)));
  return out;
}

inline k3ent::IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  k3ent::IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

inline k3ent::Int from128(oracle::i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  k3ent::Int out = static_cast<std::uint64_t>(u >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(u);
  return neg ? k3ent::Int(-out) : out;
}
