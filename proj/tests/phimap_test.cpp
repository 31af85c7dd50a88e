#include "grasec/phimap.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace grasec;

namespace {
SegreVeroneseSpec spec(const char* s) { return SegreVeroneseSpec::parse(s); }
const PrimeField kBig;
const PrimeField kF5(5);
}  // namespace

TEST(SlicedTensor, AmbientRoundTrip) {
  FieldSampler rng(kBig, 4);
  const auto coords = rng.vector(3 * 6);
  const auto a = SlicedTensor::from_ambient(coords, 2, 5, kBig);
  EXPECT_EQ(a.ambient(), coords);
  EXPECT_EQ(a.slices()(1, 0), coords[6]);
  EXPECT_EQ(a.slices()(2, 5), coords[17]);
  EXPECT_THROW(SlicedTensor::from_ambient(coords, 2, 4, kBig), UsageError);
}

TEST(Phi, SingleSliceIsThePoint) {
  const auto a = SlicedTensor::from_ambient(std::vector<FieldElement>{kBig(0), kBig(2), kBig(4)}, 0, 2, kBig);
  const auto p = phi(a);
  EXPECT_EQ(p.w, 0u);
  EXPECT_EQ(p.basis, FieldMatrix::from_rows({{0, 1, 2}}, kBig));
}

TEST(Phi, RejectsZeroTensor) { EXPECT_THROW(phi(SlicedTensor(1, 3, FieldMatrix(2, 4, kBig))), UsageError); }

TEST(Phi, CoordinateConstruction) {
  FieldSampler rng(kBig, 12);
  for (int t = 0; t < 20; ++t) {
    const std::size_t s = 2 + static_cast<std::size_t>(t % 3), k = 1 + static_cast<std::size_t>(t % 2), r = 6;
    FieldMatrix lam(s, k + 1, kBig);
    for (std::size_t i = 0; i < s; ++i)
      for (auto& v : lam.row(i)) v = rng.uniform();
    FieldMatrix expected(k + 1, r + 1, kBig);
    for (std::size_t j = 0; j <= k; ++j)
      for (std::size_t i = 0; i < s; ++i) expected(j, i) = lam(i, j);
    const auto a = coordinate_secant_point(lam, r);
    EXPECT_EQ(a.slices(), expected);
    EXPECT_EQ(phi(a).basis, row_space_basis(expected));
  }
  EXPECT_THROW(coordinate_secant_point(FieldMatrix(4, 2, kBig), 2), UsageError);
}

TEST(RandomSecantPoint, SingleTermIsDecomposable) {
  const auto wit = random_secant_point(spec("2:2"), 2, 1, 3);
  const auto p = phi(wit.tensor);
  EXPECT_EQ(p.w, 0u);
  EXPECT_EQ(p.basis, row_space_basis(wit.points));
}

TEST(RandomSecantPoint, PairOfBinaryMatricesHasRankTwo) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto wit = random_secant_point(spec("1,1"), 1, 2, seed);
    // Rank ≤ 2 by construction; not decomposable because the two slices are
    // independent, or one slice is an invertible 2×2 matrix.
    const auto& sl = wit.tensor.slices();
    const bool independent = rank(sl) == 2;
    bool invertible = false;
    for (std::size_t j = 0; j < 2; ++j)
      invertible = invertible || !(sl(j, 0) * sl(j, 3) - sl(j, 1) * sl(j, 2)).is_zero();
    EXPECT_TRUE(independent || invertible);
  }
}

TEST(RandomSecantPoint, SliceLayout) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto wit = random_secant_point(spec("1,2"), 2, 3, seed);
    const auto amb = wit.tensor.ambient();
    const std::size_t width = wit.points.cols();
    for (std::size_t j = 0; j <= 2; ++j)
      for (std::size_t c = 0; c < width; ++c) {
        FieldElement sum = kBig.zero();
        for (std::size_t i = 0; i < 3; ++i) sum += wit.lambdas(i, j) * wit.points(i, c);
        EXPECT_EQ(amb[j * width + c], sum);
      }
    // The same vector as the sum of the decomposable tensors φ(Λ_i, P_i).
    std::vector<FieldElement> total(amb.size(), kBig.zero());
    for (std::size_t i = 0; i < 3; ++i) {
      const auto term = segre_point(wit.lambdas.row(i), wit.points.row(i));
      for (std::size_t c = 0; c < total.size(); ++c) total[c] += term[c];
    }
    EXPECT_EQ(total, amb);
  }
}

TEST(Phi, ContainmentRankAndScaling) {
  std::mt19937 gen(3);
  for (const char* x : {"2:2", "1:3", "1,2", "2,2", "1,1,1"}) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const std::size_t k = 1 + gen() % 3, s = 1 + gen() % 4;
      const auto wit = random_secant_point(spec(x), k, s, seed);
      const auto img = phi(wit.tensor);
      EXPECT_TRUE(row_space_contains(wit.points, img.basis));
      EXPECT_EQ(img.w, std::min(k, s - 1)) << x << " k=" << k << " s=" << s;
      FieldSampler rng(kBig, seed);
      for (int t = 0; t < 5; ++t) EXPECT_TRUE(phi(wit.tensor.scaled(rng.nonzero())).same_subspace(img));
    }
  }
}

TEST(PluckerPoint, RelationsHoldOnImages) {
  std::mt19937 gen(8);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto wit = random_secant_point(spec("2:2"), 2, 3, seed);
    const auto p = phi(wit.tensor);
    ASSERT_EQ(p.w, 2u);
    const auto expected_coords = plucker_coordinates(p.basis);
    EXPECT_EQ(p.coords, expected_coords);
    for (int t = 0; t < 10; ++t) {
      std::vector<std::size_t> cols(6);
      std::iota(cols.begin(), cols.end(), 0);
      std::shuffle(cols.begin(), cols.end(), gen);
      const std::vector<std::size_t> i_set(cols.begin(), cols.begin() + 2);
      std::vector<std::size_t> j_set;
      for (std::size_t c = 0; c < 6 && j_set.size() < 4; ++c) j_set.push_back(cols[(c + 1 + gen() % 5) % 6]);
      std::sort(j_set.begin(), j_set.end());
      j_set.erase(std::unique(j_set.begin(), j_set.end()), j_set.end());
      if (j_set.size() != 4) continue;
      EXPECT_TRUE(plucker_relation_holds(p, i_set, j_set));
    }
  }
}

TEST(PluckerPoint, RelationFailsOffTheGrassmannian) {
  // p01 p23 − p02 p13 + p03 p12 with all coordinates 1 gives 1 ≠ 0.
  PluckerPoint p = PluckerPoint::from_rows(FieldMatrix::from_rows({{1, 0, 2, 3}, {0, 1, 4, 5}}, kBig));
  std::fill(p.coords.begin(), p.coords.end(), kBig.one());
  EXPECT_FALSE(plucker_relation_holds(p, {0}, {1, 2, 3}));
}

TEST(FiberConsistency, Examples) {
  const auto a = fiber_consistency(spec("2:2"), 1, 3);
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(a.difference, 3u);
  const auto b = fiber_consistency(spec("2:2"), 0, 3);
  EXPECT_TRUE(b.pass);
  EXPECT_EQ(b.difference, 0u);
  const auto c = fiber_consistency(spec("1:3"), 3, 2);
  EXPECT_TRUE(c.pass);
  EXPECT_EQ(c.w, 1u);
  EXPECT_EQ(c.difference, 7u);
  EXPECT_EQ(c.witnesses_checked, 5u);
  EXPECT_THROW(fiber_consistency(spec("1:3"), 1, 6), UsageError);
}

TEST(ProjectivePoints, CountsAndNormalization) {
  for (std::uint64_t q : {2u, 3u, 5u, 7u}) {
    const PrimeField f(q);
    for (std::size_t n = 0; n <= 3; ++n) {
      const auto pts = projective_points(n, f);
      std::uint64_t expect = 0, pow = 1;
      for (std::size_t i = 0; i <= n; ++i, pow *= q) expect += pow;
      EXPECT_EQ(pts.size(), expect);
      for (const auto& p : pts) {
        const auto lead = std::find_if(p.begin(), p.end(), [](FieldElement v) { return !v.is_zero(); });
        ASSERT_NE(lead, p.end());
        EXPECT_EQ(*lead, f.one());
      }
    }
  }
  EXPECT_EQ(rational_points(spec("1,1"), kF5).size(), 36u);
  EXPECT_EQ(rational_points(spec("1:2"), kF5).size(), 6u);
}

TEST(CountDecompositions, RankTwoBinaryCubeIsUnique) {
  // B = e0⊗e0⊗e0 + (1,1)⊗(1,2)⊗(1,3).
  const auto lam = FieldMatrix::from_rows({{1, 0}, {1, 1}}, kF5);
  const auto pts = FieldMatrix::from_rows({{1, 0, 0, 0}, {1, 3, 2, 6}}, kF5);
  const auto b = assemble_slices(lam, pts);
  EXPECT_EQ(count_decompositions(spec("1,1"), kF5, 2, b), 1u);
  EXPECT_EQ(count_decompositions_exhaustive(spec("1,1"), kF5, 2, b), 1u);
  FieldMatrix row(0, 8, kF5);
  row.append_row(b.ambient());
  const auto as_point = PluckerPoint::from_rows(row);
  EXPECT_EQ(count_decompositions(spec("1,1,1"), kF5, 2, as_point), 1u);
}

TEST(CountDecompositions, InvertibleMatrixHasManyDecompositions) {
  const auto m = PluckerPoint::from_rows(FieldMatrix::from_rows({{1, 2, 3, 4}}, kF5));
  EXPECT_GT(count_decompositions(spec("1,1"), kF5, 2, m), 1u);
}

TEST(CountDecompositions, PairedInstancesAgree) {
  int paired = 0;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto wit = random_secant_point(spec("1,1"), 1, 2, seed, kF5);
    const auto pi = phi(wit.tensor);
    const auto e_pi = count_decompositions(spec("1,1"), kF5, 2, pi);
    const auto e_b = count_decompositions(spec("1,1"), kF5, 2, wit.tensor);
    EXPECT_GE(e_b, 1u);
    EXPECT_EQ(e_pi, e_b) << "seed " << seed;
    EXPECT_EQ(e_b, count_decompositions_exhaustive(spec("1,1"), kF5, 2, wit.tensor)) << "seed " << seed;
    ++paired;
  }
  EXPECT_GE(paired, 20);
}

TEST(CountDecompositions, PairedOnConics) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto wit = random_secant_point(spec("1:2"), 1, 3, seed, kF5);
    EXPECT_EQ(count_decompositions(spec("1:2"), kF5, 3, phi(wit.tensor)),
              count_decompositions(spec("1:2"), kF5, 3, wit.tensor));
    EXPECT_EQ(count_decompositions(spec("1:2"), kF5, 3, wit.tensor),
              count_decompositions_exhaustive(spec("1:2"), kF5, 3, wit.tensor));
  }
}

TEST(CountDecompositions, Guards) {
  const auto m = PluckerPoint::from_rows(FieldMatrix::from_rows({{1, 2, 3, 4}}, kF5));
  EXPECT_THROW(count_decompositions(spec("1,1"), kF5, 2, m, 10), BudgetExceeded);
  const PrimeField f11(11);
  const auto m11 = PluckerPoint::from_rows(FieldMatrix::from_rows({{1, 2, 3, 4}}, f11));
  EXPECT_THROW(count_decompositions(spec("1,1"), f11, 2, m11), UsageError);
  const auto wrong = PluckerPoint::from_rows(FieldMatrix::from_rows({{1, 2, 3}}, kF5));
  EXPECT_THROW(count_decompositions(spec("1,1"), kF5, 2, wrong), UsageError);
}
