#pragma once

// The slice map: a point A of P^N, N = (k+1)(r+1) − 1, is read as k+1
// slice vectors in K^{r+1}; Φ(A) is their span, a point of a Grassmannian
// G(w, r). Also: explicit secant points with their decompositions, and
// exhaustive decomposition counting over tiny prime fields.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "grasec/errors.hpp"
#include "grasec/field.hpp"
#include "grasec/grassec.hpp"
#include "grasec/plucker.hpp"
#include "grasec/random.hpp"
#include "grasec/secant.hpp"
#include "grasec/varieties.hpp"

namespace grasec {

/// A point of P^N stored as its (k+1)×(r+1) slice matrix; slice j holds
/// ambient coordinates j(r+1) … j(r+1)+r.
class SlicedTensor {
 public:
  SlicedTensor(std::size_t k, std::size_t r, FieldMatrix slices) : k_(k), r_(r), slices_(std::move(slices)) {
    if (slices_.rows() != k + 1 || slices_.cols() != r + 1) throw UsageError("slice matrix must be (k+1)x(r+1)");
  }

  static SlicedTensor from_ambient(std::span<const FieldElement> coords, std::size_t k, std::size_t r,
                                   const PrimeField& field) {
    if (coords.size() != (k + 1) * (r + 1)) throw UsageError("ambient vector length is not (k+1)(r+1)");
    FieldMatrix m(k + 1, r + 1, field);
    for (std::size_t j = 0; j <= k; ++j)
      for (std::size_t c = 0; c <= r; ++c) m(j, c) = coords[j * (r + 1) + c];
    return {k, r, std::move(m)};
  }

  std::vector<FieldElement> ambient() const {
    std::vector<FieldElement> out;
    out.reserve((k_ + 1) * (r_ + 1));
    for (std::size_t j = 0; j <= k_; ++j) out.insert(out.end(), slices_.row(j).begin(), slices_.row(j).end());
    return out;
  }

  SlicedTensor scaled(FieldElement c) const {
    FieldMatrix m = slices_;
    for (std::size_t j = 0; j <= k_; ++j)
      for (auto& x : m.row(j)) x *= c;
    return {k_, r_, std::move(m)};
  }

  std::size_t k() const { return k_; }
  std::size_t r() const { return r_; }
  const FieldMatrix& slices() const { return slices_; }
  bool is_zero() const { return slices_.is_zero(); }

 private:
  std::size_t k_;
  std::size_t r_;
  FieldMatrix slices_;
};

/// A w-dimensional subspace of P^r: canonical basis plus Plücker coordinates.
struct PluckerPoint {
  std::size_t w = 0;
  FieldMatrix basis;                 // reduced echelon, (w+1)×(r+1)
  std::vector<FieldElement> coords;  // C(r+1, w+1) minors of `basis`

  static PluckerPoint from_rows(const FieldMatrix& rows) {
    PluckerPoint p;
    p.basis = row_space_basis(rows);
    if (p.basis.rows() == 0) throw UsageError("the zero subspace has no Plücker point");
    p.w = p.basis.rows() - 1;
    p.coords = plucker_coordinates(p.basis);
    return p;
  }

  bool same_subspace(const PluckerPoint& o) const { return basis == o.basis; }
};

/// Checks one Grassmann–Plücker relation
///   Σ_l (−1)^l p(I ∪ j_l) p(J ∖ j_l) = 0,  |I| = w, |J| = w+2.
inline bool plucker_relation_holds(const PluckerPoint& p, const std::vector<std::size_t>& i_set,
                                   const std::vector<std::size_t>& j_set) {
  const std::size_t d = p.w + 1;
  const std::size_t c = p.basis.cols();
  if (i_set.size() != d - 1 || j_set.size() != d + 1) throw UsageError("relation index sets have wrong sizes");
  std::map<std::vector<std::size_t>, std::size_t> index;
  {
    std::size_t q = 0;
    for (auto& s : lex_subsets(c, d)) index.emplace(std::move(s), q++);
  }
  const PrimeField field(p.basis.field());
  // Alternating coordinate for an unsorted index list.
  auto coord = [&](std::vector<std::size_t> cols) {
    int sign = 1;
    for (std::size_t a = 0; a < cols.size(); ++a)
      for (std::size_t b = a + 1; b < cols.size(); ++b) {
        if (cols[a] == cols[b]) return field.zero();
        if (cols[a] > cols[b]) sign = -sign;
      }
    std::sort(cols.begin(), cols.end());
    const FieldElement v = p.coords[index.at(cols)];
    return sign > 0 ? v : -v;
  };
  FieldElement acc = field.zero();
  for (std::size_t l = 0; l < j_set.size(); ++l) {
    auto left = i_set;
    left.push_back(j_set[l]);
    auto right = j_set;
    right.erase(right.begin() + static_cast<std::ptrdiff_t>(l));
    const FieldElement term = coord(left) * coord(right);
    acc = (l % 2 == 0) ? acc + term : acc - term;
  }
  return acc.is_zero();
}

/// Φ(A): span of the k+1 slices.
inline PluckerPoint phi(const SlicedTensor& a) {
  if (a.is_zero()) throw UsageError("Φ is undefined on the zero tensor");
  return PluckerPoint::from_rows(a.slices());
}

/// A = Σ_i φ(Λ_i, P_i) together with its decomposition data.
struct SecantWitness {
  SegreVeroneseSpec x;
  std::size_t k = 0;
  FieldMatrix lambdas;  // s×(k+1); row i is Λ_i
  std::vector<ParameterPoint> params;
  FieldMatrix points;  // s×(r+1); row i is P_i = embed(u_i)
  SlicedTensor tensor{0, 0, FieldMatrix(1, 1, PrimeField())};
};

/// Slice j = Σ_i λ_{i,j} P_i.
inline SlicedTensor assemble_slices(const FieldMatrix& lambdas, const FieldMatrix& points) {
  if (lambdas.rows() != points.rows()) throw UsageError("need one Λ_i per point");
  const std::size_t k = lambdas.cols() - 1;
  const std::size_t r = points.cols() - 1;
  FieldMatrix slices(k + 1, r + 1, points.field());
  for (std::size_t j = 0; j <= k; ++j)
    for (std::size_t i = 0; i < points.rows(); ++i)
      for (std::size_t c = 0; c <= r; ++c) slices(j, c) += lambdas(i, j) * points(i, c);
  return {k, r, std::move(slices)};
}

/// The decomposable tensor φ(Λ, P) as an ambient vector of Seg(P^k × X).
inline std::vector<FieldElement> segre_point(std::span<const FieldElement> lambda, std::span<const FieldElement> p) {
  std::vector<FieldElement> out;
  out.reserve(lambda.size() * p.size());
  for (auto l : lambda)
    for (auto x : p) out.push_back(l * x);
  return out;
}

inline SecantWitness random_secant_point(const SegreVeroneseSpec& x, std::size_t k, std::size_t s,
                                         std::uint64_t seed, const PrimeField& field = PrimeField()) {
  if (s < 1) throw UsageError("s must be >= 1");
  FieldSampler rng(field, seed);
  const std::size_t width = x.ambient_dim() + 1;
  for (int attempt = 0; attempt <= kMaxResamples; ++attempt) {
    SecantWitness wit;
    wit.x = x;
    wit.k = k;
    wit.lambdas = FieldMatrix(s, k + 1, field);
    wit.points = FieldMatrix(0, width, field);
    for (std::size_t i = 0; i < s; ++i) {
      std::vector<FieldElement> lam;
      do {
        lam = rng.vector(k + 1);
      } while (std::all_of(lam.begin(), lam.end(), [](FieldElement v) { return v.is_zero(); }));
      std::copy(lam.begin(), lam.end(), wit.lambdas.row(i).begin());
      wit.params.push_back(random_parameter_point(x, rng));
      wit.points.append_row(embed(x, wit.params.back(), field));
    }
    if (s <= width && rank(wit.points) < s) continue;
    wit.tensor = assemble_slices(wit.lambdas, wit.points);
    if (wit.tensor.is_zero()) continue;
    return wit;
  }
  throw SamplingError("could not sample independent secant points on " + x.to_string());
}

/// The construction with P_i = e_i: slices are the columns of Λ padded by
/// zeros, so Φ(A) is the row space of [Λᵀ | 0].
inline SlicedTensor coordinate_secant_point(const FieldMatrix& lambdas, std::size_t r) {
  const std::size_t s = lambdas.rows();
  if (s > r + 1) throw UsageError("need s <= r + 1 coordinate points");
  FieldMatrix pts(s, r + 1, lambdas.field());
  for (std::size_t i = 0; i < s; ++i) pts(i, i) = lambdas.field().one();
  return assemble_slices(lambdas, pts);
}

struct FiberConsistencyReport {
  std::size_t k = 0;
  std::size_t s = 0;
  std::size_t w = 0;
  std::size_t secant_dim = 0;
  std::size_t gs_dim = 0;
  std::size_t difference = 0;
  std::size_t expected_difference = 0;
  std::size_t witnesses_checked = 0;
  bool containment_ok = true;
  bool rank_ok = true;
  bool pass = false;
};

/// dim σ_s(Seg(P^k×X)) − dim GS_X(w,s) must equal (w+1)(k+1) − 1, and every
/// sampled witness must satisfy Φ(A) ⊆ ⟨P_1,…,P_s⟩ with dim Φ(A) = w.
inline FiberConsistencyReport fiber_consistency(const SegreVeroneseSpec& x, std::size_t k, std::size_t s,
                                                const SamplingOptions& opts = {}, std::size_t witnesses = 5) {
  if (s < 1 || s - 1 > x.ambient_dim()) throw UsageError("fiber_consistency needs 1 <= s <= r + 1");
  FiberConsistencyReport rep;
  rep.k = k;
  rep.s = s;
  rep.w = effective_plane_dim(k, s);
  rep.secant_dim = secant_dim(segre_with_projective(x, static_cast<unsigned>(k)), s, opts).dim;
  rep.gs_dim = gs_dim_direct(x, k, s, opts);
  rep.expected_difference = slice_fiber_dim(k, s);
  rep.difference = rep.secant_dim >= rep.gs_dim ? rep.secant_dim - rep.gs_dim : 0;
  const PrimeField field(opts.primes.front());
  for (std::size_t t = 0; t < witnesses; ++t) {
    const auto wit = random_secant_point(x, k, s, derive_seed({opts.seed, t, 0x70686921ULL}), field);
    const auto img = phi(wit.tensor);
    rep.containment_ok = rep.containment_ok && row_space_contains(wit.points, img.basis);
    rep.rank_ok = rep.rank_ok && img.w == rep.w;
    ++rep.witnesses_checked;
  }
  rep.pass = rep.secant_dim >= rep.gs_dim && rep.difference == rep.expected_difference && rep.containment_ok &&
             rep.rank_ok;
  return rep;
}

// ---------------------------------------------------------------------------
// Exhaustive counting over F_q.

/// Points of P^n(F_q), normalized so the first nonzero coordinate is 1.
inline std::vector<std::vector<FieldElement>> projective_points(std::size_t n, const PrimeField& field) {
  const std::uint64_t q = field.modulus();
  std::vector<std::vector<FieldElement>> out;
  for (std::size_t lead = 0; lead <= n; ++lead) {
    const std::size_t free = n - lead;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < free; ++i) total *= q;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::vector<FieldElement> v(n + 1, field.zero());
      v[lead] = field.one();
      std::uint64_t c = code;
      for (std::size_t i = lead + 1; i <= n; ++i) {
        v[i] = FieldElement{c % q, q};
        c /= q;
      }
      out.push_back(std::move(v));
    }
  }
  return out;
}

/// X(F_q) as embedded ambient vectors, one per point.
inline std::vector<std::vector<FieldElement>> rational_points(const SegreVeroneseSpec& x, const PrimeField& field) {
  std::vector<std::vector<std::vector<FieldElement>>> per_factor;
  for (const auto& f : x.factors()) per_factor.push_back(projective_points(f.dim, field));
  std::vector<std::vector<FieldElement>> out;
  std::vector<std::size_t> idx(per_factor.size(), 0);
  for (;;) {
    ParameterPoint u;
    for (std::size_t i = 0; i < idx.size(); ++i) u.factors.push_back(per_factor[i][idx[i]]);
    out.push_back(embed(x, u, field));
    std::size_t i = idx.size();
    while (i > 0) {
      --i;
      if (++idx[i] < per_factor[i].size()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
  }
}

inline constexpr std::uint64_t kDefaultBudget = 100'000'000ULL;

namespace detail {

inline void check_small_field(const PrimeField& field) {
  if (field.modulus() > 7) throw UsageError("exhaustive counting is limited to q <= 7");
}

/// Calls fn(indices) for every s-subset of {0..m-1}; returns the number of
/// subsets visited after checking it against the budget.
template <class Fn>
std::uint64_t for_each_subset(std::size_t m, std::size_t s, std::uint64_t budget, std::uint64_t per_subset_cost,
                              Fn&& fn) {
  const std::size_t subsets = binomial(m, s);
  if (s > m || subsets == 0) return 0;
  if (per_subset_cost == 0 || subsets > budget / per_subset_cost) {
    throw BudgetExceeded("enumeration of " + std::to_string(subsets) + " subsets exceeds the budget");
  }
  for (const auto& idx : lex_subsets(m, s)) fn(idx);
  return subsets;
}

inline FieldMatrix rows_of(const std::vector<std::vector<FieldElement>>& pts, const std::vector<std::size_t>& idx,
                           const PrimeField& field) {
  FieldMatrix m(0, pts.front().size(), field);
  for (auto i : idx) m.append_row(pts[i]);
  return m;
}

}  // namespace detail

/// |E(Π)|: s-subsets of X(F_q) whose span contains the subspace Π.
inline std::uint64_t count_decompositions(const SegreVeroneseSpec& x, const PrimeField& field, std::size_t s,
                                          const PluckerPoint& target, std::uint64_t budget = kDefaultBudget) {
  detail::check_small_field(field);
  const auto pts = rational_points(x, field);
  if (target.basis.cols() != pts.front().size()) throw UsageError("target subspace lives in the wrong ambient");
  std::uint64_t count = 0;
  detail::for_each_subset(pts.size(), s, budget, 1, [&](const std::vector<std::size_t>& idx) {
    if (row_space_contains(detail::rows_of(pts, idx, field), target.basis)) ++count;
  });
  return count;
}

/// |E(B)|: s-subsets {P_i} of X(F_q) admitting Λ_i with B = Σ φ(Λ_i, P_i).
/// Given the P_i, each slice of B is solved for independently; the induced
/// Λ_i are then re-assembled and compared with B.
inline std::uint64_t count_decompositions(const SegreVeroneseSpec& x, const PrimeField& field, std::size_t s,
                                          const SlicedTensor& target, std::uint64_t budget = kDefaultBudget) {
  detail::check_small_field(field);
  const auto pts = rational_points(x, field);
  if (target.r() + 1 != pts.front().size()) throw UsageError("target tensor lives in the wrong ambient");
  std::uint64_t count = 0;
  detail::for_each_subset(pts.size(), s, budget, 1, [&](const std::vector<std::size_t>& idx) {
    const FieldMatrix pmat = detail::rows_of(pts, idx, field);
    FieldMatrix lambdas(s, target.k() + 1, field);
    for (std::size_t j = 0; j <= target.k(); ++j) {
      const auto sol = solve_left(pmat, target.slices().row(j));
      if (!sol) return;
      for (std::size_t i = 0; i < s; ++i) lambdas(i, j) = (*sol)[i];
    }
    if (assemble_slices(lambdas, pmat).slices() == target.slices()) ++count;
  });
  return count;
}

/// |E(B)| by brute force over Seg(P^k × X)(F_q): for each s-subset of
/// X(F_q), tries every choice of Λ_1..Λ_s ∈ P^k(F_q) and tests whether B
/// lies in the span of the φ(Λ_i, P_i). Test oracle for the solver above.
inline std::uint64_t count_decompositions_exhaustive(const SegreVeroneseSpec& x, const PrimeField& field,
                                                     std::size_t s, const SlicedTensor& target,
                                                     std::uint64_t budget = kDefaultBudget) {
  detail::check_small_field(field);
  const auto pts = rational_points(x, field);
  const auto lams = projective_points(target.k(), field);
  std::uint64_t choices = 1;
  for (std::size_t i = 0; i < s; ++i) choices *= lams.size();
  const auto b = target.ambient();
  const std::size_t width = b.size();
  FieldMatrix bm(0, width, field);
  bm.append_row(b);
  std::uint64_t count = 0;
  detail::for_each_subset(pts.size(), s, budget, choices, [&](const std::vector<std::size_t>& idx) {
    std::vector<std::size_t> pick(s, 0);
    for (;;) {
      FieldMatrix span(0, width, field);
      for (std::size_t i = 0; i < s; ++i) span.append_row(segre_point(lams[pick[i]], pts[idx[i]]));
      if (row_space_contains(span, bm)) {
        ++count;
        return;
      }
      std::size_t i = s;
      while (i > 0) {
        --i;
        if (++pick[i] < lams.size()) break;
        pick[i] = 0;
        if (i == 0) return;
      }
    }
  });
  return count;
}

}  // namespace grasec
