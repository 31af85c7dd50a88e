#pragma once

// Report documents: {schema, version, command, config, results[], checks[]}.
// Keys keep insertion order so identical runs give byte-identical output.

#include <nlohmann/json.hpp>

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "grasec/criteria.hpp"
#include "grasec/grassec.hpp"
#include "grasec/phimap.hpp"
#include "grasec/secant.hpp"

#ifndef GRASEC_VERSION
#define GRASEC_VERSION "1.0.0"
#endif

namespace grasec {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  std::string spec;
  std::vector<std::uint64_t> primes{kDefaultPrime};
  std::uint64_t seed = 0;
  unsigned trials = 3;
  std::optional<std::size_t> k;
  std::string s;  // "4" or "1..8"
  std::string format;
  std::uint64_t budget = kDefaultBudget;

  SamplingOptions sampling() const { return {trials, seed, primes}; }
};

enum class CheckStatus { kPass, kFail };

struct Check {
  std::string name;
  std::string anchor_quote;
  Json computed;
  Json expected;
  CheckStatus status = CheckStatus::kFail;
};

inline Check make_check(std::string name, std::string anchor, Json computed, Json expected) {
  const bool ok = computed == expected;
  return {std::move(name), std::move(anchor), std::move(computed), std::move(expected),
          ok ? CheckStatus::kPass : CheckStatus::kFail};
}

struct Report {
  std::string command;
  RunConfig config;
  std::vector<Json> results;
  std::vector<Check> checks;

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == CheckStatus::kPass; });
  }
};

// ---------------------------------------------------------------------------
// Engine records.

inline Json to_json(const SecantReport& r) {
  return Json{{"s", r.s},
              {"dim", r.dim},
              {"expected_dim", r.expected_dim},
              {"defect", r.defect},
              {"ambient_dim", r.ambient_dim},
              {"fills_ambient", r.fills_ambient},
              {"propagated", r.propagated},
              {"certification", to_string(r.certification)},
              {"trials_used", r.trials_used},
              {"primes_used", r.primes_used},
              {"seed", r.seed}};
}

inline Json to_json(const GrassmannSecantReport& r) {
  Json j{{"k", r.k},
         {"s", r.s},
         {"w", r.w},
         {"n", r.n},
         {"r", r.r},
         {"dim_phi", r.dim_phi},
         {"dim_direct", r.dim_direct},
         {"expected_dim", r.expected_dim},
         {"defect", r.defect},
         {"cross_check", r.cross_check},
         {"segre_secant", to_json(r.segre_secant)}};
  if (r.defect_equality) {
    j["defect_equality"] = Json{{"gs_defect", r.defect_equality->gs_defect},
                                {"secant_defect", r.defect_equality->secant_defect},
                                {"dimension_gap", r.defect_equality->dimension_gap},
                                {"holds", r.defect_equality->holds}};
  } else {
    j["defect_equality"] = nullptr;
  }
  return j;
}

inline Json to_json(const HypothesisCheck& h) {
  return Json{{"label", h.label}, {"lhs", h.lhs}, {"relation", h.relation}, {"rhs", h.rhs}, {"passed", h.passed}};
}

inline Json to_json(const CriterionStep& s) {
  Json hs = Json::array();
  for (const auto& h : s.hypotheses) hs.push_back(to_json(h));
  Json j{{"name", s.name},
         {"anchor", s.anchor},
         {"provenance", to_string(s.provenance)},
         {"hypotheses", std::move(hs)},
         {"outcome", to_string(s.outcome)},
         {"conclusion", s.conclusion}};
  j["decompositions"] = s.decompositions ? Json(*s.decompositions) : Json(nullptr);
  return j;
}

inline Json to_json(const IdentifiabilityVerdict& v) {
  Json chain = Json::array();
  for (const auto& s : v.chain) chain.push_back(to_json(s));
  return Json{{"subject", v.subject},
              {"k", v.k},
              {"s", v.s},
              {"verdict", to_string(v.verdict)},
              {"provenance", to_string(v.provenance)},
              {"chain", std::move(chain)}};
}

inline Json to_json(const DimsegreCase& c) {
  return Json{{"case", to_string(c.label)},
              {"predicted_dim", c.predicted_dim ? Json(*c.predicted_dim) : Json(nullptr)},
              {"defective", c.defective ? Json(*c.defective) : Json(nullptr)},
              {"ambient", c.ambient},
              {"expected", c.expected}};
}

inline Json to_json(const LinearSystemReport& r) {
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts) verdicts.push_back(to_json(v));
  Json facts = Json::array();
  for (const auto& s : r.recorded_rank_facts) facts.push_back(to_json(s));
  Json readings = Json::array();
  for (const auto& rd : r.pencil_readings)
    readings.push_back(Json{{"reading", rd.description}, {"value", rd.value}, {"matches_computed", rd.matches_computed}});
  return Json{{"format", format_string(r.sides)},
              {"k", r.k},
              {"prepended", r.prepended.to_string()},
              {"generic_rank", r.generic_rank},
              {"recorded_rank_facts", std::move(facts)},
              {"pencil_readings", std::move(readings)},
              {"verdicts", std::move(verdicts)}};
}

inline Json to_json(const FiberConsistencyReport& r) {
  return Json{{"k", r.k},
              {"s", r.s},
              {"w", r.w},
              {"secant_dim", r.secant_dim},
              {"gs_dim", r.gs_dim},
              {"difference", r.difference},
              {"expected_difference", r.expected_difference},
              {"witnesses_checked", r.witnesses_checked},
              {"containment_ok", r.containment_ok},
              {"rank_ok", r.rank_ok},
              {"pass", r.pass}};
}

inline Json to_json(const LiteratureFact& f) {
  Json j{{"id", f.id},
         {"source", f.source},
         {"hypothesis", f.hypothesis},
         {"conclusion", f.conclusion},
         {"anchor", f.anchor},
         {"kind", to_string(f.kind)}};
  j["decompositions"] = f.decompositions ? Json(*f.decompositions) : Json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// Reading verdicts back, for re-checking a serialized chain.

namespace detail {

template <class E, std::size_t N>
E parse_enum(const std::string& s, const E (&values)[N], const char* what) {
  for (E v : values)
    if (to_string(v) == s) return v;
  throw UsageError(std::string("unknown ") + what + ": " + s);
}

}  // namespace detail

inline IdentifiabilityVerdict verdict_from_json(const Json& j) {
  static const Verdict kVerdicts[] = {Verdict::kHolds, Verdict::kFails, Verdict::kNotDecided};
  static const Provenance kProvenances[] = {Provenance::kComputed, Provenance::kSupplied, Provenance::kRecorded};
  try {
    IdentifiabilityVerdict v;
    v.subject = j.at("subject").get<std::string>();
    v.k = j.at("k").get<std::size_t>();
    v.s = j.at("s").get<std::size_t>();
    v.verdict = detail::parse_enum(j.at("verdict").get<std::string>(), kVerdicts, "verdict");
    v.provenance = detail::parse_enum(j.at("provenance").get<std::string>(), kProvenances, "provenance");
    for (const auto& sj : j.at("chain")) {
      CriterionStep step;
      step.name = sj.at("name").get<std::string>();
      step.anchor = sj.at("anchor").get<std::string>();
      step.provenance = detail::parse_enum(sj.at("provenance").get<std::string>(), kProvenances, "provenance");
      step.outcome = detail::parse_enum(sj.at("outcome").get<std::string>(), kVerdicts, "verdict");
      step.conclusion = sj.at("conclusion").get<std::string>();
      if (!sj.at("decompositions").is_null()) step.decompositions = sj.at("decompositions").get<int>();
      for (const auto& hj : sj.at("hypotheses")) {
        step.hypotheses.push_back({hj.at("label").get<std::string>(), hj.at("lhs").get<std::int64_t>(),
                                   hj.at("relation").get<std::string>(), hj.at("rhs").get<std::int64_t>(),
                                   hj.at("passed").get<bool>()});
      }
      v.chain.push_back(std::move(step));
    }
    return v;
  } catch (const Json::exception& e) {
    throw UsageError(std::string("malformed verdict JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Documents.

inline std::string to_string(CheckStatus s) { return s == CheckStatus::kPass ? "PASS" : "FAIL"; }

inline Json to_json(const RunConfig& c) {
  Json j{{"spec", c.spec}, {"primes", c.primes}, {"seed", c.seed}, {"trials", c.trials}};
  j["k"] = c.k ? Json(*c.k) : Json(nullptr);
  j["s"] = c.s;
  j["format"] = c.format;
  j["budget"] = c.budget;
  return j;
}

inline Json to_json(const Check& c) {
  return Json{{"name", c.name},
              {"anchor_quote", c.anchor_quote},
              {"computed", c.computed},
              {"expected", c.expected},
              {"status", to_string(c.status)}};
}

inline Json to_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return Json{{"schema", kSchemaVersion},
              {"version", GRASEC_VERSION},
              {"command", r.command},
              {"config", to_json(r.config)},
              {"results", r.results},
              {"checks", std::move(checks)}};
}

inline std::string render_json(const Report& r) { return to_json(r).dump(2) + "\n"; }

namespace detail {

inline std::string cell(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string render_csv(const Report& r) {
  std::ostringstream out;
  out << "name,anchor_quote,computed,expected,status\n";
  for (const auto& c : r.checks) {
    out << detail::csv_field(c.name) << ',' << detail::csv_field(c.anchor_quote) << ','
        << detail::csv_field(detail::cell(c.computed)) << ',' << detail::csv_field(detail::cell(c.expected)) << ','
        << to_string(c.status) << '\n';
  }
  return out.str();
}

inline std::string render_text(const Report& r) {
  std::size_t wn = 4, wc = 8, we = 8;
  for (const auto& c : r.checks) {
    wn = std::max(wn, c.name.size());
    wc = std::max(wc, detail::cell(c.computed).size());
    we = std::max(we, detail::cell(c.expected).size());
  }
  auto pad = [](std::string s, std::size_t w) { return s.append(w - std::min(w, s.size()), ' '); };
  std::ostringstream out;
  out << r.command << "  spec=" << (r.config.spec.empty() ? "-" : r.config.spec) << "  seed=" << r.config.seed
      << "  trials=" << r.config.trials << "  primes=";
  for (std::size_t i = 0; i < r.config.primes.size(); ++i) out << (i ? "," : "") << r.config.primes[i];
  out << "\n";
  for (const auto& res : r.results) out << res.dump() << "\n";
  out << pad("check", wn) << "  " << pad("computed", wc) << "  " << pad("expected", we) << "  status\n";
  for (const auto& c : r.checks) {
    out << pad(c.name, wn) << "  " << pad(detail::cell(c.computed), wc) << "  " << pad(detail::cell(c.expected), we)
        << "  " << to_string(c.status) << "\n";
  }
  return out.str();
}

}  // namespace grasec
