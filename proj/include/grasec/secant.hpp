#pragma once

// Dimensions of secant varieties σ_s(X) via Terracini's lemma: the span of
// the tangent spaces at s random points, computed as a rank over F_p.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "grasec/errors.hpp"
#include "grasec/field.hpp"
#include "grasec/random.hpp"
#include "grasec/varieties.hpp"

namespace grasec {

struct SamplingOptions {
  unsigned trials = 3;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> primes{kDefaultPrime};
};

enum class Certification {
  kExact,                    // lower bound meets the expected dimension
  kDefectiveHighConfidence,  // below expected on every trial and prime
  kPropagated,               // filled in by a monotonicity rule
};

inline std::string to_string(Certification c) {
  switch (c) {
    case Certification::kExact: return "exact";
    case Certification::kDefectiveHighConfidence: return "defective (high confidence)";
    case Certification::kPropagated: return "propagated";
  }
  return "unknown";
}

struct SecantReport {
  std::size_t s = 0;
  std::size_t dim = 0;
  std::size_t expected_dim = 0;
  std::size_t defect = 0;
  std::size_t ambient_dim = 0;
  bool fills_ambient = false;
  bool propagated = false;
  Certification certification = Certification::kExact;
  unsigned trials_used = 0;
  std::vector<std::uint64_t> primes_used;
  std::uint64_t seed = 0;
};

/// min(s(n+1) − 1, r).
inline std::size_t expected_secant_dim(const SegreVeroneseSpec& spec, std::size_t s) {
  if (s < 1) throw UsageError("secant order s must be >= 1");
  return std::min(s * (spec.dim() + 1) - 1, spec.ambient_dim());
}

/// Rank of the stacked tangent frames of s random points, minus one, for
/// one trial over one prime.
inline std::size_t terracini_trial(const SegreVeroneseSpec& spec, std::size_t s, std::uint64_t sub_seed,
                                   const PrimeField& field) {
  FieldSampler rng(field, sub_seed);
  FieldMatrix stacked(0, spec.ambient_dim() + 1, field);
  for (std::size_t i = 0; i < s; ++i) {
    const auto [u, frame] = sample_regular_point(spec, rng);
    stacked = vstack(stacked, frame);
  }
  return rank(std::move(stacked)) - 1;
}

inline std::uint64_t trial_seed(std::uint64_t seed, unsigned trial, std::uint64_t prime) {
  return derive_seed({seed, trial, prime});
}

/// dim σ_s(X), the maximum over trials and primes. The result is a lower
/// bound for the characteristic-zero dimension; it is exact whenever it
/// reaches the expected dimension.
inline SecantReport secant_dim(const SegreVeroneseSpec& spec, std::size_t s, const SamplingOptions& opts = {}) {
  if (s < 1) throw UsageError("secant order s must be >= 1");
  if (opts.trials < 1) throw UsageError("trials must be >= 1");
  if (opts.primes.empty()) throw UsageError("at least one prime is required");
  SecantReport rep;
  rep.s = s;
  rep.expected_dim = expected_secant_dim(spec, s);
  rep.ambient_dim = spec.ambient_dim();
  rep.seed = opts.seed;
  rep.primes_used = opts.primes;
  for (std::uint64_t p : opts.primes) {
    const PrimeField field(p);
    for (unsigned t = 0; t < opts.trials; ++t) {
      rep.dim = std::max(rep.dim, terracini_trial(spec, s, trial_seed(opts.seed, t, p), field));
      ++rep.trials_used;
      if (rep.dim == rep.expected_dim) break;
    }
  }
  if (rep.dim > rep.expected_dim) {
    throw InconsistencyError("computed secant dimension exceeds the expected dimension on " + spec.to_string());
  }
  rep.defect = rep.expected_dim - rep.dim;
  rep.fills_ambient = rep.dim == rep.ambient_dim;
  rep.certification = rep.defect == 0 ? Certification::kExact : Certification::kDefectiveHighConfidence;
  return rep;
}

/// Smallest s with σ_s(X) = P^r, searching upward from ⌈(r+1)/(n+1)⌉.
inline std::size_t generic_rank(const SegreVeroneseSpec& spec, const SamplingOptions& opts = {}) {
  const std::size_t width = spec.ambient_dim() + 1;
  const std::size_t step = spec.dim() + 1;
  for (std::size_t s = (width + step - 1) / step;; ++s) {
    if (secant_dim(spec, s, opts).fills_ambient) return s;
    if (s > width) throw InconsistencyError("secant varieties never filled the ambient space");
  }
}

/// Reports for s = 1..s_max. Only the entries that the two monotonicity
/// rules cannot settle are computed: once σ_s fills P^r so does every σ_t
/// with t ≥ s, and once dim σ_s = s(n+1) − 1 every σ_t with t ≤ s has
/// dimension t(n+1) − 1.
inline std::vector<SecantReport> classify_secant_range(const SegreVeroneseSpec& spec, std::size_t s_max,
                                                       const SamplingOptions& opts = {}) {
  if (s_max < 1) throw UsageError("s_max must be >= 1");
  const std::size_t n1 = spec.dim() + 1;
  const std::size_t r = spec.ambient_dim();
  std::map<std::size_t, SecantReport> out;

  auto propagated = [&](std::size_t t, std::size_t dim) {
    SecantReport rep;
    rep.s = t;
    rep.dim = dim;
    rep.expected_dim = expected_secant_dim(spec, t);
    rep.defect = rep.expected_dim - dim;
    rep.ambient_dim = r;
    rep.fills_ambient = dim == r;
    rep.propagated = true;
    rep.certification = Certification::kPropagated;
    rep.primes_used = opts.primes;
    rep.seed = opts.seed;
    return rep;
  };

  const std::size_t lo = std::min((r + 1) / n1, s_max);
  for (std::size_t s = lo; s >= 1; --s) {
    out[s] = secant_dim(spec, s, opts);
    if (out[s].dim == s * n1 - 1) {
      for (std::size_t t = 1; t < s; ++t) out[t] = propagated(t, t * n1 - 1);
      break;
    }
  }
  std::size_t s = lo + 1;
  if (out.count(lo) != 0 && out[lo].fills_ambient) {
    s = s_max + 1;
    for (std::size_t t = lo + 1; t <= s_max; ++t) out[t] = propagated(t, r);
  }
  for (; s <= s_max; ++s) {
    out[s] = secant_dim(spec, s, opts);
    if (out[s].fills_ambient) {
      for (std::size_t t = s + 1; t <= s_max; ++t) out[t] = propagated(t, r);
      break;
    }
  }

  std::vector<SecantReport> reports;
  reports.reserve(out.size());
  for (auto& [t, rep] : out) reports.push_back(std::move(rep));
  return reports;
}

}  // namespace grasec
