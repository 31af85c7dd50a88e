#pragma once

// Identifiability and defectivity criteria for X and Seg(P^k × X), and
// reports on linear systems of tensors. Every verdict carries the chain of
// criteria that produced it; each hypothesis is stored as an integer
// relation so the chain can be re-evaluated from its serialized form.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grasec/errors.hpp"
#include "grasec/grassec.hpp"
#include "grasec/literature.hpp"
#include "grasec/secant.hpp"
#include "grasec/varieties.hpp"

namespace grasec {

enum class Verdict { kHolds, kFails, kNotDecided };
enum class Provenance { kComputed, kSupplied, kRecorded };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kHolds: return "holds";
    case Verdict::kFails: return "fails";
    case Verdict::kNotDecided: return "not decided";
  }
  return "unknown";
}

inline std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::kComputed: return "computed";
    case Provenance::kSupplied: return "supplied";
    case Provenance::kRecorded: return "recorded-from-literature";
  }
  return "unknown";
}

struct HypothesisCheck {
  std::string label;
  std::int64_t lhs = 0;
  std::string relation;  // one of < <= > >= == !=
  std::int64_t rhs = 0;
  bool passed = false;
};

inline bool evaluate_relation(std::int64_t lhs, const std::string& rel, std::int64_t rhs) {
  if (rel == "<") return lhs < rhs;
  if (rel == "<=") return lhs <= rhs;
  if (rel == ">") return lhs > rhs;
  if (rel == ">=") return lhs >= rhs;
  if (rel == "==") return lhs == rhs;
  if (rel == "!=") return lhs != rhs;
  throw UsageError("unknown relation '" + rel + "'");
}

inline HypothesisCheck check(std::string label, std::int64_t lhs, std::string rel, std::int64_t rhs) {
  const bool ok = evaluate_relation(lhs, rel, rhs);
  return {std::move(label), lhs, std::move(rel), rhs, ok};
}

struct CriterionStep {
  std::string name;
  std::string anchor;
  Provenance provenance = Provenance::kComputed;
  std::vector<HypothesisCheck> hypotheses;
  Verdict outcome = Verdict::kNotDecided;
  std::string conclusion;
  std::optional<int> decompositions;
};

struct IdentifiabilityVerdict {
  std::string subject;
  std::size_t k = 0;
  std::size_t s = 0;
  Verdict verdict = Verdict::kNotDecided;
  Provenance provenance = Provenance::kComputed;
  std::vector<CriterionStep> chain;
};

namespace detail {

inline Verdict all_pass(const std::vector<HypothesisCheck>& hs) {
  return std::all_of(hs.begin(), hs.end(), [](const HypothesisCheck& h) { return h.passed; }) ? Verdict::kHolds
                                                                                                : Verdict::kNotDecided;
}

inline std::int64_t i64(std::size_t v) { return static_cast<std::int64_t>(v); }

/// Verdict of a chain: a recorded negative fact decides "fails", otherwise
/// any positive step decides "holds".
inline void settle(IdentifiabilityVerdict& v) {
  bool holds = false;
  bool fails = false;
  Provenance prov = Provenance::kComputed;
  for (const auto& step : v.chain) {
    if (step.outcome == Verdict::kFails) {
      fails = true;
      prov = step.provenance;
    }
  }
  for (const auto& step : v.chain) {
    if (step.outcome == Verdict::kHolds && !holds) {
      holds = true;
      if (!fails) prov = step.provenance;
    }
  }
  if (holds && fails) throw InconsistencyError("criteria disagree on " + v.subject);
  v.verdict = fails ? Verdict::kFails : holds ? Verdict::kHolds : Verdict::kNotDecided;
  v.provenance = prov;
}

}  // namespace detail

/// The numeric criterion: for 0 < k ≤ s−1, r > sn + s − 1, X not
/// s-defective and sn + (k+1)(s−1−k) < (k+1)(r−k), X is
/// (k,s)-identifiable. Failing a hypothesis leaves the question open.
inline CriterionStep theorem_tre_step(std::size_t n, std::size_t r, std::size_t s, std::size_t k,
                                      std::size_t s_defect, Provenance defect_source) {
  using detail::i64;
  CriterionStep step;
  step.name = "numeric-identifiability";
  step.anchor = "r > sn+s-1, X not s-defective, sn+(k+1)(s-1-k) < (k+1)(r-k), 0 < k <= s-1 => (k,s)-identifiable";
  step.provenance = Provenance::kComputed;
  step.hypotheses.push_back(check("k > 0", i64(k), ">", 0));
  step.hypotheses.push_back(check("k <= s-1", i64(k), "<=", i64(s) - 1));
  step.hypotheses.push_back(check("r > s*n + s - 1", i64(r), ">", i64(s * n + s) - 1));
  step.hypotheses.push_back(check(std::string("s-defect of X == 0 (") + to_string(defect_source) + ")",
                                  i64(s_defect), "==", 0));
  const std::int64_t lhs = i64(s * n) + (i64(k) + 1) * (i64(s) - 1 - i64(k));
  const std::int64_t rhs = (i64(k) + 1) * (i64(r) - i64(k));
  step.hypotheses.push_back(check("s*n + (k+1)(s-1-k) < (k+1)(r-k)", lhs, "<", rhs));
  step.outcome = detail::all_pass(step.hypotheses);
  step.conclusion = step.outcome == Verdict::kHolds ? "(k,s)-identifiable" : "hypotheses not met";
  return step;
}

inline IdentifiabilityVerdict theorem_tre(std::size_t n, std::size_t r, std::size_t s, std::size_t k,
                                          bool s_defective) {
  IdentifiabilityVerdict v;
  v.subject = "X with n=" + std::to_string(n) + ", r=" + std::to_string(r);
  v.k = k;
  v.s = s;
  v.chain.push_back(theorem_tre_step(n, r, s, k, s_defective ? 1 : 0, Provenance::kSupplied));
  detail::settle(v);
  return v;
}

/// As above with the s-defect of X computed by Terracini.
inline IdentifiabilityVerdict theorem_tre(const SegreVeroneseSpec& x, std::size_t s, std::size_t k,
                                          const SamplingOptions& opts = {}) {
  IdentifiabilityVerdict v;
  v.subject = x.to_string();
  v.k = k;
  v.s = s;
  const std::size_t defect = secant_dim(x, s, opts).defect;
  v.chain.push_back(theorem_tre_step(x.dim(), x.ambient_dim(), s, k, defect, Provenance::kComputed));
  detail::settle(v);
  return v;
}

/// Codimension criterion: r − n > s makes Seg(P^{s−1} × X) s-identifiable,
/// equivalently X is (s−1, s)-identifiable.
inline CriterionStep codimension_step(std::size_t n, std::size_t r, std::size_t s) {
  using detail::i64;
  CriterionStep step;
  step.name = "codimension";
  step.anchor = "r - n > s => Seg(P^(s-1) x X) is s-identifiable, i.e. X is (s-1,s)-identifiable";
  step.hypotheses.push_back(check("r - n > s", i64(r) - i64(n), ">", i64(s)));
  step.hypotheses.push_back(check("s - 1 < r (transfer)", i64(s) - 1, "<", i64(r)));
  step.outcome = detail::all_pass(step.hypotheses);
  step.conclusion = step.outcome == Verdict::kHolds ? "(s-1,s)-identifiable" : "hypotheses not met";
  return step;
}

inline IdentifiabilityVerdict codimension_criterion(std::size_t n, std::size_t r, std::size_t s) {
  if (s < 1) throw UsageError("s must be >= 1");
  IdentifiabilityVerdict v;
  v.subject = "X with n=" + std::to_string(n) + ", r=" + std::to_string(r);
  v.k = s - 1;
  v.s = s;
  v.chain.push_back(codimension_step(n, r, s));
  detail::settle(v);
  return v;
}

/// Re-evaluates every stored hypothesis and recomputes the verdict. True
/// when everything matches what was stored.
inline bool reevaluate_chain(const IdentifiabilityVerdict& v) {
  for (const auto& step : v.chain) {
    for (const auto& h : step.hypotheses)
      if (evaluate_relation(h.lhs, h.relation, h.rhs) != h.passed) return false;
    if (step.provenance != Provenance::kRecorded && step.outcome != detail::all_pass(step.hypotheses)) return false;
  }
  IdentifiabilityVerdict copy = v;
  detail::settle(copy);
  return copy.verdict == v.verdict;
}

// ---------------------------------------------------------------------------
// Dimension of σ_s(Seg(P^k × X)) by case analysis.

enum class DimsegreLabel { kI, kIIa, kIIb, kIII, kIV };

inline std::string to_string(DimsegreLabel l) {
  switch (l) {
    case DimsegreLabel::kI: return "i";
    case DimsegreLabel::kIIa: return "ii-a";
    case DimsegreLabel::kIIb: return "ii-b";
    case DimsegreLabel::kIII: return "iii";
    case DimsegreLabel::kIV: return "iv";
  }
  return "?";
}

struct DimsegreCase {
  DimsegreLabel label = DimsegreLabel::kI;
  std::optional<std::size_t> predicted_dim;  // absent in case iv
  std::optional<bool> defective;             // absent in case iv
  std::size_t ambient = 0;                   // N = (k+1)(r+1) − 1
  std::size_t expected = 0;                  // min(s(k+n+1) − 1, N)
};

inline std::size_t segre_expected_dim(std::size_t n, std::size_t r, std::size_t k, std::size_t s) {
  return std::min(s * (k + n + 1) - 1, (k + 1) * (r + 1) - 1);
}

inline DimsegreCase dimsegre_classify(std::size_t n, std::size_t r, std::size_t k, std::size_t s) {
  if (s < 1 || n < 1 || n > r) throw UsageError("dimsegre_classify needs s >= 1 and 1 <= n <= r");
  DimsegreCase c;
  c.ambient = (k + 1) * (r + 1) - 1;
  c.expected = segre_expected_dim(n, r, k, s);
  const std::size_t sm1 = s - 1;
  if (sm1 >= r) {
    c.label = DimsegreLabel::kI;
    c.predicted_dim = c.ambient;
    c.defective = false;
  } else if (sm1 < std::min(r, k)) {
    if (sm1 <= r - n) {
      c.label = DimsegreLabel::kIIa;
      c.predicted_dim = s * (k + n + 1) - 1;
      c.defective = false;
    } else {
      c.label = DimsegreLabel::kIIb;
      c.predicted_dim = s * (k + r - s + 2) - 1;
      c.defective = true;
    }
  } else if (sm1 == k) {
    c.label = DimsegreLabel::kIII;
    c.predicted_dim = std::min(s * (k + n + 1) - 1, c.ambient);
    c.defective = false;
  } else {
    c.label = DimsegreLabel::kIV;
  }
  return c;
}

/// Fills in case iv as dim GS_X(k,s) + k² + 2k with the Grassmann secant
/// dimension from the Plücker Jacobian.
inline DimsegreCase dimsegre_predict(const SegreVeroneseSpec& x, std::size_t k, std::size_t s,
                                     const SamplingOptions& opts = {}) {
  DimsegreCase c = dimsegre_classify(x.dim(), x.ambient_dim(), k, s);
  if (c.label == DimsegreLabel::kIV) {
    c.predicted_dim = gs_dim_direct(x, k, s, opts) + k * k + 2 * k;
    c.defective = *c.predicted_dim < c.expected;
  }
  return c;
}

struct NeverDefectiveReport {
  std::size_t k = 0;
  std::size_t fill_order = 0;
  std::vector<SecantReport> reports;
  bool pass = false;
};

/// For k = r − n, σ_s(Seg(P^k × X)) has the expected dimension for every s;
/// checked up to the first filling order.
inline NeverDefectiveReport never_defective_check(const SegreVeroneseSpec& x, std::size_t k,
                                                  const SamplingOptions& opts = {}) {
  if (k != x.ambient_dim() - x.dim() || k < 1) throw UsageError("never_defective_check needs k = r - n");
  const auto y = prepend_projective_factor(x, static_cast<unsigned>(k));
  const std::size_t width = y.ambient_dim() + 1;
  const std::size_t step = y.dim() + 1;
  NeverDefectiveReport rep;
  rep.k = k;
  rep.fill_order = (width + step - 1) / step;
  rep.reports = classify_secant_range(y, rep.fill_order, opts);
  rep.pass = !rep.reports.empty() && rep.reports.back().fills_ambient &&
             std::all_of(rep.reports.begin(), rep.reports.end(), [](const SecantReport& s) { return s.defect == 0; });
  return rep;
}

// ---------------------------------------------------------------------------
// Linear systems of tensors.

inline SegreVeroneseSpec segre_of_format(const std::vector<std::size_t>& sides) {
  std::vector<Factor> f;
  for (auto side : sides) {
    if (side < 2) throw UsageError("tensor side lengths must be >= 2");
    f.push_back({static_cast<unsigned>(side - 1), 1});
  }
  return SegreVeroneseSpec(std::move(f));
}

inline std::optional<std::vector<std::size_t>> format_of(const SegreVeroneseSpec& x) {
  std::vector<std::size_t> sides;
  for (const auto& f : x.factors()) {
    if (f.degree != 1) return std::nullopt;
    sides.push_back(f.dim + 1);
  }
  return sides;
}

inline std::string format_string(const std::vector<std::size_t>& sides) {
  std::string out;
  for (std::size_t i = 0; i < sides.size(); ++i) out += (i ? "x" : "") + std::to_string(sides[i]);
  return out;
}

inline CriterionStep recorded_step(const LiteratureFact& f) {
  CriterionStep step;
  step.name = f.id;
  step.anchor = f.source + ": " + f.anchor;
  step.provenance = Provenance::kRecorded;
  step.conclusion = f.conclusion;
  step.decompositions = f.decompositions;
  step.outcome = f.kind == FactKind::kIdentifiable      ? Verdict::kHolds
                 : f.kind == FactKind::kNotIdentifiable ? Verdict::kFails
                                                        : Verdict::kNotDecided;
  return step;
}

/// All criteria that bear on (k,s)-identifiability of X: the numeric
/// criterion with computed defectivity, the codimension criterion when
/// k = s−1, and matching literature facts when X is a Segre variety.
inline IdentifiabilityVerdict identifiability(const SegreVeroneseSpec& x, std::size_t k, std::size_t s,
                                              const SamplingOptions& opts = {}) {
  if (s < 1) throw UsageError("s must be >= 1");
  IdentifiabilityVerdict v;
  const auto sides = format_of(x);
  v.subject = sides ? "tensors " + format_string(*sides) : x.to_string();
  v.k = k;
  v.s = s;
  const std::size_t n = x.dim();
  const std::size_t r = x.ambient_dim();
  const std::size_t defect = secant_dim(x, s, opts).defect;
  v.chain.push_back(theorem_tre_step(n, r, s, k, defect, Provenance::kComputed));
  if (k + 1 == s) v.chain.push_back(codimension_step(n, r, s));
  if (sides) {
    for (const auto* fact : matching_facts({*sides, k, s})) {
      if (fact->kind != FactKind::kGenericRank) v.chain.push_back(recorded_step(*fact));
    }
  }
  detail::settle(v);
  return v;
}

struct RankReading {
  std::string description;
  std::int64_t value = 0;
  bool matches_computed = false;
};

struct LinearSystemReport {
  std::vector<std::size_t> sides;
  std::size_t k = 0;
  SegreVeroneseSpec prepended;
  std::size_t generic_rank = 0;
  std::vector<IdentifiabilityVerdict> verdicts;  // s = 1 .. generic_rank
  std::vector<CriterionStep> recorded_rank_facts;
  std::vector<RankReading> pencil_readings;  // 2x...x2 pencils only
};

/// Generic rank of k-dimensional systems of tensors of the given format
/// (equal to the generic rank of (k+1)×sides tensors) and identifiability
/// verdicts for each rank below it.
inline LinearSystemReport linear_system_report(const std::vector<std::size_t>& sides, std::size_t k,
                                               const SamplingOptions& opts = {}) {
  if (sides.size() < 2) throw UsageError("a tensor format needs at least two sides");
  LinearSystemReport rep;
  rep.sides = sides;
  rep.k = k;
  const auto x = segre_of_format(sides);
  rep.prepended = segre_with_projective(x, static_cast<unsigned>(k));
  rep.generic_rank = generic_rank(rep.prepended, opts);
  for (std::size_t s = 1; s <= rep.generic_rank; ++s) rep.verdicts.push_back(identifiability(x, k, s, opts));
  for (const auto* fact : matching_facts({sides, k, 0})) {
    if (fact->kind != FactKind::kGenericRank) continue;
    CriterionStep step = recorded_step(*fact);
    const auto stated = fact->value({sides, k, 0});
    step.hypotheses.push_back(check("computed generic rank == recorded", detail::i64(rep.generic_rank), "==", stated));
    rep.recorded_rank_facts.push_back(std::move(step));
  }
  if (k == 1 && detail::all_sides_equal({sides, k, 0}, 2)) {
    const auto m = static_cast<std::int64_t>(sides.size());
    const std::int64_t counted = detail::ceil_div(std::int64_t{1} << m, m + 1);
    const std::int64_t extra = detail::ceil_div(std::int64_t{1} << (m + 1), m + 2);
    rep.pencil_readings.push_back({"m = number of tensor factors: ceil(2^m/(m+1))", counted,
                                   counted == detail::i64(rep.generic_rank)});
    rep.pencil_readings.push_back({"m = tensor factors + pencil factor: ceil(2^(m+1)/(m+2))", extra,
                                   extra == detail::i64(rep.generic_rank)});
  }
  return rep;
}

}  // namespace grasec
