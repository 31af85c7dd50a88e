#pragma once

// Exact arithmetic over a prime field F_p, dense matrices over it, and
// first-order dual numbers for exact directional derivatives.

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grasec/errors.hpp"

namespace grasec {

inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;  // 2^31 - 1
inline constexpr std::uint64_t kConfirmPrime = 2147483629ULL;

inline bool is_prime(std::uint64_t n) {
  if (n == kDefaultPrime || n == kConfirmPrime) return true;
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// A residue modulo a prime. A default-constructed element is an untyped
/// zero (modulus 0) that combines with elements of any field.
class FieldElement {
 public:
  constexpr FieldElement() = default;
  constexpr FieldElement(std::uint64_t value, std::uint64_t modulus)
      : value_(value), modulus_(modulus) {}

  constexpr std::uint64_t value() const { return value_; }
  constexpr std::uint64_t modulus() const { return modulus_; }
  constexpr bool is_zero() const { return value_ == 0; }

  friend FieldElement operator+(FieldElement a, FieldElement b) {
    const std::uint64_t p = common(a, b);
    std::uint64_t v = a.value_ + b.value_;
    if (p != 0 && v >= p) v -= p;
    return {v, p};
  }
  friend FieldElement operator-(FieldElement a, FieldElement b) {
    const std::uint64_t p = common(a, b);
    return {a.value_ >= b.value_ ? a.value_ - b.value_ : a.value_ + p - b.value_, p};
  }
  friend FieldElement operator-(FieldElement a) {
    return {a.value_ == 0 ? 0 : a.modulus_ - a.value_, a.modulus_};
  }
  friend FieldElement operator*(FieldElement a, FieldElement b) {
    const std::uint64_t p = common(a, b);
    if (p == 0) return {};
    return {(a.value_ * b.value_) % p, p};
  }
  friend FieldElement operator/(FieldElement a, FieldElement b) { return a * b.inverse(); }

  FieldElement& operator+=(FieldElement o) { return *this = *this + o; }
  FieldElement& operator-=(FieldElement o) { return *this = *this - o; }
  FieldElement& operator*=(FieldElement o) { return *this = *this * o; }

  friend bool operator==(FieldElement a, FieldElement b) { return a.value_ == b.value_; }

  FieldElement pow(std::uint64_t e) const {
    FieldElement base = *this;
    FieldElement acc{modulus_ == 1 ? 0ULL : 1ULL, modulus_};
    while (e != 0) {
      if (e & 1U) acc *= base;
      base *= base;
      e >>= 1U;
    }
    return acc;
  }

  FieldElement inverse() const {
    if (value_ == 0) throw std::domain_error("inverse of zero in F_p");
    // Extended Euclid on signed 64-bit; modulus < 2^32 keeps it in range.
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(modulus_), new_r = static_cast<std::int64_t>(value_);
    while (new_r != 0) {
      const std::int64_t q = r / new_r;
      t = std::exchange(new_t, t - q * new_t);
      r = std::exchange(new_r, r - q * new_r);
    }
    if (t < 0) t += static_cast<std::int64_t>(modulus_);
    return {static_cast<std::uint64_t>(t), modulus_};
  }

  friend std::ostream& operator<<(std::ostream& os, FieldElement a) { return os << a.value_; }

 private:
  static std::uint64_t common(FieldElement a, FieldElement b) {
    assert(a.modulus_ == 0 || b.modulus_ == 0 || a.modulus_ == b.modulus_);
    return std::max(a.modulus_, b.modulus_);
  }

  std::uint64_t value_ = 0;
  std::uint64_t modulus_ = 0;
};

/// The field F_p as a value: hands out elements and nothing else.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p = kDefaultPrime) : p_(p) {
    if (p < 2 || p >= (1ULL << 32U) || !is_prime(p)) {
      throw UsageError("modulus must be a prime below 2^32, got " + std::to_string(p));
    }
  }

  std::uint64_t modulus() const { return p_; }
  FieldElement zero() const { return {0, p_}; }
  FieldElement one() const { return {1, p_}; }
  FieldElement operator()(std::int64_t v) const {
    const auto p = static_cast<std::int64_t>(p_);
    std::int64_t r = v % p;
    if (r < 0) r += p;
    return {static_cast<std::uint64_t>(r), p_};
  }
  /// Reduces an arbitrary 64-bit word (e.g. raw RNG output).
  FieldElement from_bits(std::uint64_t bits) const { return {bits % p_, p_}; }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

/// a + b·ε with ε² = 0.
template <class T>
struct Dual {
  T a{};
  T b{};

  friend Dual operator+(const Dual& x, const Dual& y) { return {x.a + y.a, x.b + y.b}; }
  friend Dual operator-(const Dual& x, const Dual& y) { return {x.a - y.a, x.b - y.b}; }
  friend Dual operator-(const Dual& x) { return {-x.a, -x.b}; }
  friend Dual operator*(const Dual& x, const Dual& y) { return {x.a * y.a, x.a * y.b + x.b * y.a}; }
  Dual& operator+=(const Dual& o) { return *this = *this + o; }
  Dual& operator-=(const Dual& o) { return *this = *this - o; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  friend bool operator==(const Dual&, const Dual&) = default;
};

using DualElement = Dual<FieldElement>;

// Embeds a field element into a scalar type used by generic evaluators.
template <class T>
T lift(FieldElement x);
template <>
inline FieldElement lift<FieldElement>(FieldElement x) {
  return x;
}
template <>
inline DualElement lift<DualElement>(FieldElement x) {
  return {x, FieldElement{0, x.modulus()}};
}

template <class T>
T power(T base, unsigned e, const T& one) {
  T acc = one;
  while (e != 0) {
    if (e & 1U) acc *= base;
    base *= base;
    e >>= 1U;
  }
  return acc;
}

/// Dense row-major matrix over F_p.
class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(std::size_t rows, std::size_t cols, const PrimeField& field)
      : rows_(rows), cols_(cols), field_(field), data_(rows * cols, field.zero()) {}

  static FieldMatrix identity(std::size_t n, const PrimeField& field) {
    FieldMatrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }
  static FieldMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, const PrimeField& field) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    FieldMatrix m(rows.size(), cols, field);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw UsageError("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = field(rows[i][j]);
    }
    return m;
  }
  static FieldMatrix from_rows(const std::vector<std::vector<FieldElement>>& rows, const PrimeField& field,
                               std::size_t cols) {
    FieldMatrix m(rows.size(), cols, field);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw UsageError("ragged matrix rows");
      std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const PrimeField& field() const { return field_; }

  FieldElement& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  FieldElement operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<FieldElement> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const FieldElement> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  void append_row(std::span<const FieldElement> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw UsageError("appended row has wrong length");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  FieldMatrix transpose() const {
    FieldMatrix t(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](FieldElement x) { return x.is_zero(); });
  }

  friend bool operator==(const FieldMatrix& x, const FieldMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  PrimeField field_{};
  std::vector<FieldElement> data_;
};

/// Rank by fraction-free elimination: rows are combined as
/// pivot·row − a·pivot_row, so no inverses are taken.
inline std::size_t rank(FieldMatrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r) {
      auto a = m.row(piv);
      auto b = m.row(r);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const FieldElement p = m(r, c);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      const FieldElement f = m(i, c);
      if (f.is_zero()) continue;
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = p * m(i, j) - f * m(r, j);
    }
    ++r;
  }
  return r;
}

/// Reduced row echelon form restricted to its nonzero rows. Equal row
/// spaces give identical matrices.
inline FieldMatrix row_space_basis(FieldMatrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r) {
      auto a = m.row(piv);
      auto b = m.row(r);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const FieldElement inv = m(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      const FieldElement f = m(i, c);
      if (f.is_zero()) continue;
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  FieldMatrix out(r, m.cols(), m.field());
  for (std::size_t i = 0; i < r; ++i) std::copy(m.row(i).begin(), m.row(i).end(), out.row(i).begin());
  return out;
}

/// Stacks the rows of `a` on top of the rows of `b`.
inline FieldMatrix vstack(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw UsageError("vstack: column mismatch");
  FieldMatrix out = a;
  for (std::size_t i = 0; i < b.rows(); ++i) out.append_row(b.row(i));
  return out;
}

/// True iff every row of `sub` lies in the row space of `span`.
inline bool row_space_contains(const FieldMatrix& span, const FieldMatrix& sub) {
  return rank(span) == rank(vstack(span, sub));
}

/// Solves x·A = b for a row vector x (A is m×n, b has n entries).
/// Returns nothing when b is outside the row space of A.
inline std::optional<std::vector<FieldElement>> solve_left(const FieldMatrix& a, std::span<const FieldElement> b);

/// A polynomial map K^arity → K^m given by integer coefficients and
/// exponent vectors; coefficients are reduced into whatever field the
/// evaluation point lives in.
struct PolynomialMap {
  struct Term {
    std::int64_t coefficient = 1;
    std::vector<unsigned> exponents;
  };
  using Polynomial = std::vector<Term>;

  std::size_t arity = 0;
  std::vector<Polynomial> components;
};

template <class T>
std::vector<T> evaluate(const PolynomialMap& f, std::span<const T> x, const PrimeField& field) {
  if (x.size() != f.arity) {
    throw UsageError("polynomial map of arity " + std::to_string(f.arity) + " evaluated at a point of length " +
                     std::to_string(x.size()));
  }
  const T one = lift<T>(field.one());
  std::vector<T> out;
  out.reserve(f.components.size());
  for (const auto& poly : f.components) {
    T acc = lift<T>(field.zero());
    for (const auto& term : poly) {
      if (term.exponents.size() != f.arity) throw UsageError("term exponent vector has wrong length");
      T mono = lift<T>(field(term.coefficient));
      for (std::size_t v = 0; v < f.arity; ++v) {
        if (term.exponents[v] != 0) mono *= power(x[v], term.exponents[v], one);
      }
      acc += mono;
    }
    out.push_back(acc);
  }
  return out;
}

/// Evaluates f at x + ε·direction. The ε-parts are the directional
/// derivative of f at x along direction.
inline std::pair<std::vector<FieldElement>, std::vector<FieldElement>> dual_evaluate(
    const PolynomialMap& f, std::span<const FieldElement> x, std::span<const FieldElement> direction,
    const PrimeField& field) {
  if (direction.size() != x.size()) throw UsageError("direction length differs from point length");
  std::vector<DualElement> xd(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) xd[i] = {x[i], direction[i]};
  const auto vals = evaluate<DualElement>(f, xd, field);
  std::pair<std::vector<FieldElement>, std::vector<FieldElement>> out;
  out.first.reserve(vals.size());
  out.second.reserve(vals.size());
  for (const auto& v : vals) {
    out.first.push_back(v.a);
    out.second.push_back(v.b);
  }
  return out;
}

inline std::optional<std::vector<FieldElement>> solve_left(const FieldMatrix& a, std::span<const FieldElement> b) {
  // Row-reduce [Aᵀ | bᵀ]; x solves Aᵀ xᵀ = bᵀ.
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != n) throw UsageError("solve_left: right-hand side length mismatch");
  FieldMatrix aug(n, m + 1, a.field());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) aug(j, i) = a(i, j);
  for (std::size_t j = 0; j < n; ++j) aug(j, m) = b[j];
  const FieldMatrix red = row_space_basis(aug);
  std::vector<FieldElement> x(m, a.field().zero());
  for (std::size_t r = 0; r < red.rows(); ++r) {
    std::size_t lead = 0;
    while (lead < red.cols() && red(r, lead).is_zero()) ++lead;
    if (lead == m) return std::nullopt;  // 0 = 1 row
    x[lead] = red(r, m);
  }
  return x;
}

}  // namespace grasec
