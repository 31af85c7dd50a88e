#pragma once

// Grassmann secant varieties GS_X(k, s) ⊂ G(k, r): k-planes lying in the
// span of s independent points of X. The dimension is computed twice:
//
//  * through the slice map, from dim σ_s(Seg(P^k × X)) minus the fiber
//    dimension (w+1)(k+1) − 1 with w = min(k, s−1);
//  * directly, as the rank of the Jacobian of
//        (u_1, …, u_s, Λ) ↦ Plücker(Λ · [embed(u_1); …; embed(u_s)])
//    with Λ a (w+1)×s coefficient matrix, minus one.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "grasec/errors.hpp"
#include "grasec/field.hpp"
#include "grasec/plucker.hpp"
#include "grasec/random.hpp"
#include "grasec/secant.hpp"
#include "grasec/varieties.hpp"

namespace grasec {

/// min{s·n + (k+1)(s−1−k), (k+1)(r−k)} for 0 ≤ k ≤ s−1 ≤ r.
inline std::size_t expected_gs_dim(std::size_t n, std::size_t k, std::size_t s, std::size_t r) {
  if (s < 1 || k > s - 1 || s - 1 > r) throw UsageError("expected_gs_dim needs 0 <= k <= s-1 <= r");
  return std::min(s * n + (k + 1) * (s - 1 - k), (k + 1) * (r - k));
}

inline std::size_t effective_plane_dim(std::size_t k, std::size_t s) { return std::min(k, s - 1); }

/// (w+1)(k+1) − 1: dimension of a general fiber of the slice map.
inline std::size_t slice_fiber_dim(std::size_t k, std::size_t s) {
  return (effective_plane_dim(k, s) + 1) * (k + 1) - 1;
}

namespace detail {

inline void check_gs_params(const SegreVeroneseSpec& x, std::size_t s) {
  if (s < 1) throw UsageError("s must be >= 1");
  if (s - 1 > x.ambient_dim()) throw UsageError("Grassmann secants need s - 1 <= r");
}

inline std::size_t subtract_fiber(std::size_t secant_dim, std::size_t k, std::size_t s) {
  const std::size_t fiber = slice_fiber_dim(k, s);
  if (secant_dim < fiber) throw InconsistencyError("secant dimension is smaller than the slice-map fiber");
  return secant_dim - fiber;
}

inline std::size_t plucker_jacobian_trial(const SegreVeroneseSpec& x, std::size_t w, std::size_t s,
                                          std::uint64_t sub_seed, const PrimeField& field) {
  FieldSampler rng(field, sub_seed);
  const std::size_t width = x.ambient_dim() + 1;
  const std::size_t m = w + 1;

  std::vector<ParameterPoint> us;
  std::vector<std::vector<FieldElement>> lambda;
  std::vector<std::vector<FieldElement>> pts;
  bool ok = false;
  for (int attempt = 0; attempt <= kMaxResamples && !ok; ++attempt) {
    us.clear();
    pts.clear();
    for (std::size_t i = 0; i < s; ++i) {
      us.push_back(random_parameter_point(x, rng));
      pts.push_back(embed(x, us.back(), field));
    }
    lambda.assign(m, {});
    for (auto& row : lambda) row = rng.vector(s);
    FieldMatrix span(m, width, field);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < width; ++j) span(a, j) += lambda[a][i] * pts[i][j];
    ok = rank(span) == m;
  }
  if (!ok) throw SamplingError("could not sample a nondegenerate (w+1)-plane on " + x.to_string());

  const DualElement dzero = lift<DualElement>(field.zero());
  std::vector<std::vector<DualElement>> pts_d(s, std::vector<DualElement>(width));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < width; ++j) pts_d[i][j] = lift<DualElement>(pts[i][j]);
  std::vector<std::vector<DualElement>> lambda_d(m, std::vector<DualElement>(s));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t i = 0; i < s; ++i) lambda_d[a][i] = lift<DualElement>(lambda[a][i]);

  auto jacobian_column = [&]() {
    std::vector<std::vector<DualElement>> rows(m, std::vector<DualElement>(width, dzero));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < width; ++j) rows[a][j] += lambda_d[a][i] * pts_d[i][j];
    const auto minors = maximal_minors(rows, width, dzero);
    std::vector<FieldElement> col(minors.size());
    for (std::size_t q = 0; q < minors.size(); ++q) col[q] = minors[q].b;
    return col;
  };

  FieldMatrix jac(0, binomial(width, m), field);
  // Point parameters: affine-chart directions of each u_i.
  for (std::size_t i = 0; i < s; ++i) {
    std::vector<std::vector<DualElement>> ud(us[i].factors.size());
    for (std::size_t f = 0; f < ud.size(); ++f) {
      ud[f].resize(us[i].factors[f].size());
      for (std::size_t c = 0; c < ud[f].size(); ++c) ud[f][c] = lift<DualElement>(us[i].factors[f][c]);
    }
    const auto saved = pts_d[i];
    for (const auto& [f, c] : chart_directions(x, us[i])) {
      ud[f][c].b = field.one();
      pts_d[i] = embed_generic<DualElement>(x, ud, field);
      ud[f][c].b = field.zero();
      jac.append_row(jacobian_column());
    }
    pts_d[i] = saved;
  }
  // Coefficient parameters: entries of Λ.
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t i = 0; i < s; ++i) {
      lambda_d[a][i].b = field.one();
      jac.append_row(jacobian_column());
      lambda_d[a][i].b = field.zero();
    }
  }
  return rank(std::move(jac)) - 1;
}

}  // namespace detail

/// dim GS_X(w, s) read off σ_s(Seg(P^k × X)) through the fiber formula.
inline std::size_t gs_dim_phi(const SegreVeroneseSpec& x, std::size_t k, std::size_t s,
                              const SamplingOptions& opts = {}) {
  detail::check_gs_params(x, s);
  const auto sec = secant_dim(segre_with_projective(x, static_cast<unsigned>(k)), s, opts);
  return detail::subtract_fiber(sec.dim, k, s);
}

/// dim GS_X(w, s) from the Plücker Jacobian, w = min(k, s−1); max over
/// trials and primes.
inline std::size_t gs_dim_direct(const SegreVeroneseSpec& x, std::size_t k, std::size_t s,
                                 const SamplingOptions& opts = {}) {
  detail::check_gs_params(x, s);
  if (opts.trials < 1 || opts.primes.empty()) throw UsageError("need at least one trial and one prime");
  const std::size_t w = effective_plane_dim(k, s);
  const std::size_t ceiling = std::min(expected_gs_dim(x.dim(), w, s, x.ambient_dim()), (w + 1) * (x.ambient_dim() - w));
  std::size_t best = 0;
  for (std::uint64_t p : opts.primes) {
    const PrimeField field(p);
    for (unsigned t = 0; t < opts.trials; ++t) {
      // Distinct stream from the Terracini trials sharing the same seed.
      const std::uint64_t sub = derive_seed({opts.seed, t, p, 0x67735f646972ULL});
      best = std::max(best, detail::plucker_jacobian_trial(x, w, s, sub, field));
      if (best == ceiling) break;
    }
  }
  return best;
}

struct DefectComparison {
  std::size_t gs_defect = 0;
  std::size_t secant_defect = 0;
  std::size_t dimension_gap = 0;  // dim σ_s(Seg(P^k×X)) − dim GS_X(k,s)
  bool holds = false;
};

struct GrassmannSecantReport {
  std::size_t k = 0;
  std::size_t s = 0;
  std::size_t w = 0;
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t dim_phi = 0;
  std::size_t dim_direct = 0;
  std::size_t expected_dim = 0;
  std::size_t defect = 0;
  bool cross_check = false;
  SecantReport segre_secant;                   // σ_s(Seg(P^k × X)), or σ_s(X) when k = 0
  std::optional<DefectComparison> defect_equality;  // only when k ≤ s−1 < r
};

/// Both dimension routes, the expected dimension and the defect. When
/// k ≤ s−1 < r it also compares δ_{k,s}(X) with δ_s(Seg(P^k × X)).
/// A failed cross-check is reported, not thrown; the CLI maps it to exit 2.
inline GrassmannSecantReport gs_report(const SegreVeroneseSpec& x, std::size_t k, std::size_t s,
                                       const SamplingOptions& opts = {}) {
  detail::check_gs_params(x, s);
  GrassmannSecantReport rep;
  rep.k = k;
  rep.s = s;
  rep.w = effective_plane_dim(k, s);
  rep.n = x.dim();
  rep.r = x.ambient_dim();
  rep.segre_secant = secant_dim(segre_with_projective(x, static_cast<unsigned>(k)), s, opts);
  rep.dim_phi = detail::subtract_fiber(rep.segre_secant.dim, k, s);
  rep.dim_direct = gs_dim_direct(x, k, s, opts);
  rep.expected_dim = expected_gs_dim(rep.n, rep.w, s, rep.r);
  if (rep.dim_direct > rep.expected_dim) {
    throw InconsistencyError("Grassmann secant dimension exceeds its expected dimension");
  }
  rep.defect = rep.expected_dim - rep.dim_direct;
  rep.cross_check = rep.dim_phi == rep.dim_direct;
  if (k <= s - 1 && s - 1 < rep.r) {
    DefectComparison cmp;
    cmp.gs_defect = rep.defect;
    cmp.secant_defect = rep.segre_secant.defect;
    cmp.dimension_gap = rep.segre_secant.dim >= rep.dim_direct ? rep.segre_secant.dim - rep.dim_direct : 0;
    cmp.holds = cmp.gs_defect == cmp.secant_defect && cmp.dimension_gap == k * k + 2 * k;
    rep.defect_equality = cmp;
  }
  return rep;
}

}  // namespace grasec
