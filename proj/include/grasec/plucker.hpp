#pragma once

// Plücker coordinates: all maximal minors of an m×c matrix, indexed by
// column subsets in lexicographic order.

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "grasec/errors.hpp"
#include "grasec/field.hpp"

namespace grasec {

/// Column subsets of size m from {0..c-1}, lexicographic.
inline std::vector<std::vector<std::size_t>> lex_subsets(std::size_t c, std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  if (m > c) return out;
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  for (;;) {
    out.push_back(idx);
    std::size_t i = m;
    while (i > 0 && idx[i - 1] == c - m + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

/// All m×m minors of the m×c matrix `rows` (row-major, rows[i][j]), in
/// lexicographic column-subset order. Laplace expansion along the last row
/// with memoized sub-minors: ring operations only, so it works over dual
/// numbers.
template <class T>
std::vector<T> maximal_minors(const std::vector<std::vector<T>>& rows, std::size_t c, const T& zero) {
  const std::size_t m = rows.size();
  if (c > 64) throw UsageError("maximal_minors supports at most 64 columns");
  if (m == 0 || m > c) throw UsageError("maximal_minors needs 1 <= rows <= columns");
  // level[mask] = minor of the first popcount(mask) rows on columns `mask`.
  std::unordered_map<std::uint64_t, T> level;
  for (std::size_t j = 0; j < c; ++j) level.emplace(std::uint64_t{1} << j, rows[0][j]);
  for (std::size_t i = 1; i < m; ++i) {
    std::unordered_map<std::uint64_t, T> next;
    for (const auto& cols : lex_subsets(c, i + 1)) {
      std::uint64_t mask = 0;
      for (auto j : cols) mask |= std::uint64_t{1} << j;
      T acc = zero;
      for (std::size_t pos = 0; pos < cols.size(); ++pos) {
        const T term = rows[i][cols[pos]] * level.at(mask & ~(std::uint64_t{1} << cols[pos]));
        // sign (-1)^(i + pos)
        if (((i + pos) & 1U) == 0) {
          acc += term;
        } else {
          acc -= term;
        }
      }
      next.emplace(mask, acc);
    }
    level = std::move(next);
  }
  std::vector<T> out;
  for (const auto& cols : lex_subsets(c, m)) {
    std::uint64_t mask = 0;
    for (auto j : cols) mask |= std::uint64_t{1} << j;
    out.push_back(level.at(mask));
  }
  return out;
}

inline std::vector<FieldElement> plucker_coordinates(const FieldMatrix& basis) {
  std::vector<std::vector<FieldElement>> rows(basis.rows());
  for (std::size_t i = 0; i < basis.rows(); ++i) rows[i].assign(basis.row(i).begin(), basis.row(i).end());
  return maximal_minors(rows, basis.cols(), basis.field().zero());
}

/// Proportionality of two nonzero coordinate vectors.
inline bool proportional(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b) {
  if (a.size() != b.size()) return false;
  std::size_t piv = 0;
  while (piv < a.size() && a[piv].is_zero()) ++piv;
  if (piv == a.size() || b[piv].is_zero()) return false;
  const FieldElement ratio = b[piv] / a[piv];
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] * ratio == b[i])) return false;
  return true;
}

}  // namespace grasec
