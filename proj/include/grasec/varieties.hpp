#pragma once

// Segre–Veronese varieties X ⊂ P^r: the image of P^{n_1}×⋯×P^{n_t} under
// all monomials of multidegree (d_1,…,d_t).
//
// Coordinate ordering: factors are major-to-minor in listed order (the
// first factor varies slowest); within a factor, degree-d monomials in
// x_0..x_n are listed in descending lexicographic order of their exponent
// vectors, so x_0^d comes first and x_n^d last. With a prepended P^k factor
// of degree 1, slice j of an ambient vector is the block j(r+1)…j(r+1)+r.

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "grasec/errors.hpp"
#include "grasec/field.hpp"
#include "grasec/random.hpp"

namespace grasec {

struct Factor {
  unsigned dim = 1;     // n_i, projective dimension of the factor
  unsigned degree = 1;  // d_i
  friend bool operator==(const Factor&, const Factor&) = default;
};

inline constexpr std::size_t kMaxAmbient = std::size_t{1} << 20U;

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    out = out * (n - k + i) / i;
  }
  return out;
}

class SegreVeroneseSpec {
 public:
  SegreVeroneseSpec() = default;
  explicit SegreVeroneseSpec(std::vector<Factor> factors) : factors_(std::move(factors)) { validate(); }

  /// Parses `n` / `n:d` tokens separated by commas, e.g. "1,1,1" or "2:2".
  static SegreVeroneseSpec parse(std::string_view text) {
    std::vector<Factor> factors;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t comma = std::min(text.find(',', pos), text.size());
      std::string_view tok = trim(text.substr(pos, comma - pos));
      if (tok.empty()) throw UsageError("empty factor in spec '" + std::string(text) + "'");
      Factor f;
      const std::size_t colon = tok.find(':');
      f.dim = parse_uint(tok.substr(0, colon), text);
      if (colon != std::string_view::npos) f.degree = parse_uint(tok.substr(colon + 1), text);
      factors.push_back(f);
      pos = comma + 1;
    }
    return SegreVeroneseSpec(std::move(factors));
  }

  const std::vector<Factor>& factors() const { return factors_; }

  /// dim X = Σ n_i.
  std::size_t dim() const {
    std::size_t n = 0;
    for (const auto& f : factors_) n += f.dim;
    return n;
  }

  /// r = ∏ C(n_i + d_i, n_i) − 1.
  std::size_t ambient_dim() const {
    std::size_t count = 1;
    for (const auto& f : factors_) count *= binomial(f.dim + f.degree, f.dim);
    return count - 1;
  }

  /// Number of homogeneous parameters Σ (n_i + 1).
  std::size_t parameter_count() const {
    std::size_t c = 0;
    for (const auto& f : factors_) c += f.dim + 1;
    return c;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i != 0) out += ',';
      out += std::to_string(factors_[i].dim);
      if (factors_[i].degree != 1) out += ':' + std::to_string(factors_[i].degree);
    }
    return out;
  }

  friend bool operator==(const SegreVeroneseSpec&, const SegreVeroneseSpec&) = default;

 private:
  void validate() const {
    if (factors_.empty()) throw UsageError("a Segre-Veronese spec needs at least one factor");
    std::size_t count = 1;
    for (const auto& f : factors_) {
      if (f.dim < 1 || f.degree < 1) throw UsageError("factor dimensions and degrees must be >= 1");
      const std::size_t b = binomial(f.dim + f.degree, f.dim);
      if (b == 0 || count > kMaxAmbient / b) throw UsageError("ambient space too large");
      count *= b;
    }
  }

  static std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  }

  static unsigned parse_uint(std::string_view tok, std::string_view whole) {
    tok = trim(tok);
    unsigned v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw UsageError("cannot parse '" + std::string(tok) + "' in spec '" + std::string(whole) + "'");
    }
    return v;
  }

  std::vector<Factor> factors_;
};

inline std::size_t ambient_dim(const SegreVeroneseSpec& spec) { return spec.ambient_dim(); }

/// Seg(P^k × X) as a spec: the factor (k, 1) placed first.
inline SegreVeroneseSpec prepend_projective_factor(const SegreVeroneseSpec& spec, unsigned k) {
  if (k < 1) throw UsageError("prepend_projective_factor needs k >= 1; k = 0 is X itself");
  std::vector<Factor> factors{{k, 1}};
  factors.insert(factors.end(), spec.factors().begin(), spec.factors().end());
  return SegreVeroneseSpec(std::move(factors));
}

/// Seg(P^k × X), or X itself when k = 0.
inline SegreVeroneseSpec segre_with_projective(const SegreVeroneseSpec& spec, unsigned k) {
  return k == 0 ? spec : prepend_projective_factor(spec, k);
}

/// Exponent vectors of the degree-d monomials in n+1 variables, in
/// descending lexicographic order.
inline std::vector<std::vector<unsigned>> monomial_exponents(unsigned n, unsigned d) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur(n + 1, 0);
  auto rec = [&](auto&& self, unsigned var, unsigned left) -> void {
    if (var == n) {
      cur[var] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      cur[var] = e;
      self(self, var + 1, left - e);
    }
  };
  rec(rec, 0, d);
  return out;
}

/// The embedding as an explicit polynomial map in the concatenated
/// homogeneous coordinates (u_1 | u_2 | … ).
inline PolynomialMap monomial_map(const SegreVeroneseSpec& spec) {
  PolynomialMap f;
  f.arity = spec.parameter_count();
  std::vector<std::vector<unsigned>> acc{std::vector<unsigned>{}};
  for (const auto& fac : spec.factors()) {
    const auto monos = monomial_exponents(fac.dim, fac.degree);
    std::vector<std::vector<unsigned>> next;
    next.reserve(acc.size() * monos.size());
    for (const auto& a : acc) {
      for (const auto& m : monos) {
        auto e = a;
        e.insert(e.end(), m.begin(), m.end());
        next.push_back(std::move(e));
      }
    }
    acc = std::move(next);
  }
  f.components.reserve(acc.size());
  for (auto& e : acc) f.components.push_back({PolynomialMap::Term{1, std::move(e)}});
  return f;
}

/// Homogeneous coordinates u_i for each factor.
struct ParameterPoint {
  std::vector<std::vector<FieldElement>> factors;

  std::vector<FieldElement> flattened() const {
    std::vector<FieldElement> out;
    for (const auto& f : factors) out.insert(out.end(), f.begin(), f.end());
    return out;
  }
};

inline void check_point(const SegreVeroneseSpec& spec, const ParameterPoint& u) {
  if (u.factors.size() != spec.factors().size()) throw UsageError("parameter point has wrong number of factors");
  for (std::size_t i = 0; i < u.factors.size(); ++i) {
    if (u.factors[i].size() != spec.factors()[i].dim + 1) throw UsageError("parameter factor has wrong length");
    const bool all_zero =
        std::all_of(u.factors[i].begin(), u.factors[i].end(), [](FieldElement x) { return x.is_zero(); });
    if (all_zero) throw UsageError("parameter factor " + std::to_string(i) + " is the zero vector");
  }
}

/// Embedding over any commutative scalar type (field elements or duals),
/// computed as a Kronecker product of per-factor monomial vectors.
template <class T>
std::vector<T> embed_generic(const SegreVeroneseSpec& spec, std::span<const std::vector<T>> u, const PrimeField& field) {
  const T one = lift<T>(field.one());
  std::vector<T> acc{one};
  for (std::size_t i = 0; i < spec.factors().size(); ++i) {
    const auto& fac = spec.factors()[i];
    const auto monos = monomial_exponents(fac.dim, fac.degree);
    std::vector<T> vals;
    vals.reserve(monos.size());
    for (const auto& e : monos) {
      T m = one;
      for (std::size_t v = 0; v < e.size(); ++v) {
        if (e[v] != 0) m *= power(u[i][v], e[v], one);
      }
      vals.push_back(m);
    }
    std::vector<T> next;
    next.reserve(acc.size() * vals.size());
    for (const auto& a : acc)
      for (const auto& v : vals) next.push_back(a * v);
    acc = std::move(next);
  }
  return acc;
}

inline std::vector<FieldElement> embed(const SegreVeroneseSpec& spec, const ParameterPoint& u,
                                       const PrimeField& field) {
  check_point(spec, u);
  return embed_generic<FieldElement>(spec, u.factors, field);
}

/// Index of the first nonzero coordinate; the affine chart used for
/// tangent directions drops this coordinate.
inline std::size_t pivot_index(std::span<const FieldElement> v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) return i;
  throw UsageError("zero vector has no pivot");
}

/// Directions (factor, coordinate) spanning the affine chart at u: for each
/// factor, every coordinate except its pivot. Σ n_i entries.
inline std::vector<std::pair<std::size_t, std::size_t>> chart_directions(const SegreVeroneseSpec& spec,
                                                                         const ParameterPoint& u) {
  std::vector<std::pair<std::size_t, std::size_t>> dirs;
  for (std::size_t i = 0; i < spec.factors().size(); ++i) {
    const std::size_t piv = pivot_index(u.factors[i]);
    for (std::size_t c = 0; c <= spec.factors()[i].dim; ++c)
      if (c != piv) dirs.emplace_back(i, c);
  }
  return dirs;
}

/// The point embed(u) followed by the derivatives of embed along each chart
/// direction: n + 1 rows spanning the tangent space of the affine cone.
/// Throws DegenerateSample when the rows are dependent.
inline FieldMatrix tangent_frame(const SegreVeroneseSpec& spec, const ParameterPoint& u, const PrimeField& field) {
  check_point(spec, u);
  const std::size_t width = spec.ambient_dim() + 1;
  FieldMatrix frame(0, width, field);
  frame.append_row(embed_generic<FieldElement>(spec, u.factors, field));

  std::vector<std::vector<DualElement>> ud(u.factors.size());
  for (std::size_t i = 0; i < u.factors.size(); ++i) {
    ud[i].resize(u.factors[i].size());
    for (std::size_t c = 0; c < u.factors[i].size(); ++c) ud[i][c] = lift<DualElement>(u.factors[i][c]);
  }
  for (const auto& [i, c] : chart_directions(spec, u)) {
    ud[i][c].b = field.one();
    const auto vals = embed_generic<DualElement>(spec, ud, field);
    ud[i][c].b = field.zero();
    std::vector<FieldElement> row(width);
    for (std::size_t j = 0; j < width; ++j) row[j] = vals[j].b;
    frame.append_row(row);
  }
  if (rank(frame) < spec.dim() + 1) throw DegenerateSample("tangent frame is rank deficient");
  return frame;
}

inline ParameterPoint random_parameter_point(const SegreVeroneseSpec& spec, FieldSampler& rng) {
  ParameterPoint u;
  for (const auto& f : spec.factors()) {
    std::vector<FieldElement> v;
    do {
      v = rng.vector(f.dim + 1);
    } while (std::all_of(v.begin(), v.end(), [](FieldElement x) { return x.is_zero(); }));
    u.factors.push_back(std::move(v));
  }
  return u;
}

inline constexpr int kMaxResamples = 5;

/// A random point with a full-rank tangent frame; up to kMaxResamples
/// redraws before giving up.
inline std::pair<ParameterPoint, FieldMatrix> sample_regular_point(const SegreVeroneseSpec& spec, FieldSampler& rng) {
  for (int attempt = 0; attempt <= kMaxResamples; ++attempt) {
    ParameterPoint u = random_parameter_point(spec, rng);
    try {
      FieldMatrix frame = tangent_frame(spec, u, rng.field());
      return {std::move(u), std::move(frame)};
    } catch (const DegenerateSample&) {
    }
  }
  throw SamplingError("could not sample a point with a regular tangent frame on " + spec.to_string());
}

}  // namespace grasec
