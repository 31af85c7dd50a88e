#include "grasec/criteria.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace grasec;

namespace {
SegreVeroneseSpec spec(const char* s) { return SegreVeroneseSpec::parse(s); }

const CriterionStep* find_step(const IdentifiabilityVerdict& v, const std::string& name) {
  for (const auto& s : v.chain)
    if (s.name == name) return &s;
  return nullptr;
}
}  // namespace

TEST(NumericCriterion, SuppliedDefectivity) {
  const auto a = theorem_tre(1, 10, 3, 1, false);
  EXPECT_EQ(a.verdict, Verdict::kHolds);
  ASSERT_EQ(a.chain.size(), 1u);
  for (const auto& h : a.chain[0].hypotheses) EXPECT_TRUE(h.passed) << h.label;
  EXPECT_EQ(a.chain[0].hypotheses[2].rhs, 5);
  EXPECT_EQ(a.chain[0].hypotheses[4].lhs, 5);
  EXPECT_EQ(a.chain[0].hypotheses[4].rhs, 18);

  const auto b = theorem_tre(1, 4, 3, 2, false);
  EXPECT_EQ(b.verdict, Verdict::kNotDecided);
  EXPECT_FALSE(b.chain[0].hypotheses[2].passed);

  EXPECT_EQ(theorem_tre(1, 10, 3, 1, true).verdict, Verdict::kNotDecided);
  EXPECT_EQ(theorem_tre(1, 10, 3, 0, false).verdict, Verdict::kNotDecided);
  EXPECT_EQ(theorem_tre(1, 10, 3, 3, false).verdict, Verdict::kNotDecided);
}

TEST(NumericCriterion, ComputedDefectivity) {
  // v_4(P^2): n = 2, r = 14; σ_4 is not defective.
  const auto v = theorem_tre(spec("2:4"), 4, 1);
  EXPECT_EQ(v.verdict, Verdict::kHolds);
  EXPECT_EQ(v.provenance, Provenance::kComputed);
  EXPECT_EQ(v.chain[0].hypotheses[3].lhs, 0);
  // v_2(P^2) is 2-defective, so the criterion stays silent.
  EXPECT_EQ(theorem_tre(spec("2:2"), 2, 1).verdict, Verdict::kNotDecided);
}

TEST(Codimension, Examples) {
  EXPECT_EQ(codimension_criterion(1, 10, 3).verdict, Verdict::kHolds);
  EXPECT_EQ(codimension_criterion(1, 10, 3).k, 2u);
  EXPECT_EQ(codimension_criterion(2, 5, 4).verdict, Verdict::kNotDecided);
  EXPECT_EQ(codimension_criterion(1, 3, 2).verdict, Verdict::kNotDecided);
  EXPECT_THROW(codimension_criterion(1, 3, 0), UsageError);
}

TEST(DimsegreClassify, Examples) {
  const auto i = dimsegre_classify(1, 3, 2, 5);
  EXPECT_EQ(i.label, DimsegreLabel::kI);
  EXPECT_EQ(i.predicted_dim, 11u);
  EXPECT_EQ(i.defective, false);

  const auto iia = dimsegre_classify(1, 3, 5, 2);
  EXPECT_EQ(iia.label, DimsegreLabel::kIIa);
  EXPECT_EQ(iia.predicted_dim, 13u);

  const auto iib = dimsegre_classify(2, 5, 6, 5);
  EXPECT_EQ(iib.label, DimsegreLabel::kIIb);
  EXPECT_EQ(iib.predicted_dim, 39u);
  EXPECT_EQ(iib.expected, 41u);
  EXPECT_EQ(iib.defective, true);

  EXPECT_EQ(dimsegre_classify(2, 5, 2, 3).label, DimsegreLabel::kIII);
  const auto iv = dimsegre_classify(2, 5, 1, 3);
  EXPECT_EQ(iv.label, DimsegreLabel::kIV);
  EXPECT_FALSE(iv.predicted_dim.has_value());
  EXPECT_THROW(dimsegre_classify(3, 2, 1, 1), UsageError);
}

TEST(DimsegreClassify, ExactlyOneCase) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t r = n; r <= 9; ++r)
      for (std::size_t k = 0; k <= 8; ++k)
        for (std::size_t s = 1; s <= 11; ++s) {
          const std::size_t m = s - 1;
          const int matches = (m >= r) + (m < std::min(r, k) && m <= r - n) + (m < std::min(r, k) && m > r - n) +
                              (m == k && k < r) + (k < m && m < r);
          EXPECT_EQ(matches, 1);
          const auto c = dimsegre_classify(n, r, k, s);
          if (c.predicted_dim) {
            EXPECT_LE(*c.predicted_dim, c.ambient);
          }
          if (c.defective == false) {
            EXPECT_EQ(c.predicted_dim, c.expected);
          }
        }
}

TEST(DimsegrePredict, DefectiveInstanceMatchesTerracini) {
  const auto x = spec("2:2");
  const auto c = dimsegre_predict(x, 6, 5);
  const auto sec = secant_dim(segre_with_projective(x, 6), 5);
  EXPECT_EQ(c.label, DimsegreLabel::kIIb);
  EXPECT_EQ(sec.dim, 39u);
  EXPECT_EQ(c.predicted_dim, sec.dim);
  EXPECT_EQ(sec.expected_dim, 41u);
}

// The case analysis as an executable identity.
TEST(DimsegrePredict, AgreesWithTerraciniOnSweep) {
  for (const char* x : {"1:3", "2:2", "1,2", "1:2", "1,1"}) {
    const auto sp = spec(x);
    for (std::size_t k = 1; k <= 5; ++k)
      for (std::size_t s = 1; s <= 6; ++s) {
        const auto c = dimsegre_predict(sp, k, s);
        const auto sec = secant_dim(segre_with_projective(sp, static_cast<unsigned>(k)), s);
        ASSERT_TRUE(c.predicted_dim.has_value());
        EXPECT_EQ(*c.predicted_dim, sec.dim) << x << " k=" << k << " s=" << s << " case " << to_string(c.label);
        EXPECT_EQ(*c.defective, sec.defect > 0) << x << " k=" << k << " s=" << s;
      }
  }
}

TEST(NeverDefective, Instances) {
  for (const auto& [x, k] : std::vector<std::pair<const char*, std::size_t>>{{"2:2", 3}, {"3:2", 6}, {"1:3", 2}}) {
    const auto rep = never_defective_check(spec(x), k);
    EXPECT_TRUE(rep.pass) << x;
    ASSERT_FALSE(rep.reports.empty());
    EXPECT_TRUE(rep.reports.back().fills_ambient);
    for (const auto& r : rep.reports) EXPECT_EQ(r.defect, 0u) << x << " s=" << r.s;
  }
  EXPECT_THROW(never_defective_check(spec("2:2"), 2), UsageError);
  EXPECT_THROW(never_defective_check(spec("2:2"), 4), UsageError);
}

TEST(LinearSystem, FourByFourSystems) {
  const auto rep = linear_system_report({4, 4}, 3);
  EXPECT_EQ(rep.generic_rank, 7u);
  ASSERT_EQ(rep.verdicts.size(), 7u);
  for (std::size_t s = 1; s < 6; ++s) {
    EXPECT_EQ(rep.verdicts[s - 1].verdict, Verdict::kHolds) << s;
    EXPECT_NE(find_step(rep.verdicts[s - 1], "system-44-identifiable"), nullptr);
  }
  const auto& six = rep.verdicts[5];
  EXPECT_EQ(six.verdict, Verdict::kFails);
  EXPECT_EQ(six.provenance, Provenance::kRecorded);
  const auto* step = find_step(six, "system-44-rank6");
  ASSERT_NE(step, nullptr);
  EXPECT_EQ(step->decompositions, 2);
  ASSERT_EQ(rep.recorded_rank_facts.size(), 1u);
  EXPECT_TRUE(rep.recorded_rank_facts[0].hypotheses[0].passed);
  EXPECT_TRUE(rep.pencil_readings.empty());
}

TEST(LinearSystem, BinaryPencils) {
  const auto rep = linear_system_report({2, 2, 2, 2}, 1);
  EXPECT_EQ(rep.generic_rank, 6u);
  for (std::size_t s = 1; s < 5; ++s) EXPECT_EQ(rep.verdicts[s - 1].verdict, Verdict::kHolds);
  EXPECT_EQ(rep.verdicts[4].verdict, Verdict::kFails);
  EXPECT_EQ(find_step(rep.verdicts[4], "pencil-2222-rank5")->decompositions, 2);
  EXPECT_EQ(rep.verdicts[5].verdict, Verdict::kNotDecided);
  ASSERT_EQ(rep.pencil_readings.size(), 2u);
  EXPECT_EQ(rep.pencil_readings[0].value, 4);
  EXPECT_FALSE(rep.pencil_readings[0].matches_computed);
  EXPECT_EQ(rep.pencil_readings[1].value, 6);
  EXPECT_TRUE(rep.pencil_readings[1].matches_computed);
}

TEST(LinearSystem, LongerPencilsReportBothReadings) {
  const auto rep = linear_system_report({2, 2, 2, 2, 2}, 1);
  EXPECT_EQ(rep.generic_rank, 10u);
  ASSERT_EQ(rep.recorded_rank_facts.size(), 1u);
  // The formula read with m = number of listed factors does not match.
  EXPECT_FALSE(rep.recorded_rank_facts[0].hypotheses[0].passed);
  EXPECT_FALSE(rep.pencil_readings[0].matches_computed);
  EXPECT_TRUE(rep.pencil_readings[1].matches_computed);
  EXPECT_EQ(rep.verdicts[2].verdict, Verdict::kHolds);
}

TEST(Identifiability, MatrixSystemsKeepBothSteps) {
  // 8x8 systems of dimension 7: recorded for s <= 4, while X = P^7 x P^7 is
  // 4-defective so the numeric criterion stays silent.
  const auto v = identifiability(segre_of_format({8, 8}), 7, 4);
  EXPECT_EQ(v.verdict, Verdict::kHolds);
  EXPECT_EQ(v.provenance, Provenance::kRecorded);
  ASSERT_NE(find_step(v, "numeric-identifiability"), nullptr);
  EXPECT_EQ(find_step(v, "numeric-identifiability")->outcome, Verdict::kNotDecided);
  EXPECT_EQ(find_step(v, "matrix-systems-ab16")->outcome, Verdict::kHolds);
  EXPECT_EQ(find_step(identifiability(segre_of_format({8, 8}), 7, 5), "matrix-systems-ab16"), nullptr);
}

TEST(Identifiability, CodimensionStepOnlyForSpans) {
  const auto v = identifiability(spec("1:10"), 2, 3);
  EXPECT_EQ(v.verdict, Verdict::kHolds);
  ASSERT_NE(find_step(v, "codimension"), nullptr);
  EXPECT_EQ(find_step(v, "codimension")->outcome, Verdict::kHolds);
  EXPECT_EQ(find_step(identifiability(spec("1:10"), 1, 3), "codimension"), nullptr);
}

TEST(ReevaluateChain, DetectsTampering) {
  auto v = identifiability(spec("2:4"), 1, 4);
  EXPECT_EQ(v.verdict, Verdict::kHolds);
  EXPECT_TRUE(reevaluate_chain(v));
  auto tampered = v;
  tampered.chain[0].hypotheses[2].lhs = 0;
  EXPECT_FALSE(reevaluate_chain(tampered));
  auto flipped = v;
  flipped.verdict = Verdict::kNotDecided;
  EXPECT_FALSE(reevaluate_chain(flipped));
}

// A positive numeric verdict requires σ_s(Seg(P^k × X)) not to fill its span.
TEST(Soundness, HoldsNeverCoincidesWithFilling) {
  std::mt19937 gen(11);
  const std::vector<const char*> xs{"1:3", "1:4", "1:6", "2:2", "2:3", "1,2", "1,1,1", "1:8", "3:2"};
  int holds = 0;
  for (int t = 0; t < 60; ++t) {
    const auto x = spec(xs[gen() % xs.size()]);
    const std::size_t s = 2 + gen() % 4;
    const std::size_t k = 1 + gen() % (s - 1);
    SamplingOptions o;
    o.seed = static_cast<std::uint64_t>(t);
    const auto v = theorem_tre(x, s, k, o);
    EXPECT_TRUE(reevaluate_chain(v));
    if (v.verdict != Verdict::kHolds) continue;
    ++holds;
    EXPECT_FALSE(secant_dim(segre_with_projective(x, static_cast<unsigned>(k)), s, o).fills_ambient)
        << x.to_string() << " k=" << k << " s=" << s;
  }
  EXPECT_GT(holds, 5);
}
