#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sl2lab/cayley.hpp"
#include "sl2lab/certificate.hpp"
#include "sl2lab/gset.hpp"

using namespace sl2lab;

namespace {

std::set<oracle::M> to_oracle(const GroupSet& A) {
  std::set<oracle::M> out;
  for (const SL2& g : A.elements()) out.insert(oracle::from(g));
  return out;
}

GroupSet random_set(const SL2Group& G, std::size_t k, std::mt19937_64& rng) {
  GroupSet A(G);
  while (A.size() < k) A.insert(rng() % G.order());
  return A;
}

GroupSet offdiag(const SL2Group& G, std::int64_t k) {
  std::vector<SL2> gens = offdiag_pair(G, k);
  return GroupSet::of(G, gens);
}

}  // namespace

TEST(GroupSet, InsertContainsAndSize) {
  SL2Group G(5);
  GroupSet A(G);
  EXPECT_TRUE(A.empty());
  EXPECT_TRUE(A.insert(G.identity()));
  EXPECT_FALSE(A.insert(G.identity()));
  EXPECT_TRUE(A.contains(G.identity()));
  EXPECT_EQ(A.size(), 1u);
  EXPECT_EQ(GroupSet::full(G).size(), 120u);
  Index bad = G.order();
  EXPECT_THROW(GroupSet::from_indices(G, std::span<const Index>(&bad, 1)), DomainError);
}

TEST(GroupSet, MixingGroupsIsAContextMismatch) {
  SL2Group G(5), H(7);
  EXPECT_THROW(product_set(GroupSet::full(G), GroupSet::full(H)), ContextMismatch);
}

TEST(GroupSet, ProductMatchesOracle) {
  SL2Group G(7);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    GroupSet A = random_set(G, 1 + rng() % 12, rng), B = random_set(G, 1 + rng() % 12, rng);
    EXPECT_EQ(to_oracle(product_set(A, B)), oracle::product(to_oracle(A), to_oracle(B), 7));
    EXPECT_EQ(to_oracle(A.inverse()), oracle::inverse(to_oracle(A), 7));
  }
}

TEST(GroupSet, ProductOfLargeSetsIsEverything) {
  SL2Group G(5);
  std::mt19937_64 rng(9);
  GroupSet A = random_set(G, 61, rng), B = random_set(G, 61, rng);
  EXPECT_TRUE(product_set(A, B).full());
}

TEST(GroupSet, BallMatchesOracle) {
  SL2Group G(5);
  std::mt19937_64 rng(4);
  GroupSet A = random_set(G, 3, rng);
  for (int r = 1; r <= 4; ++r) EXPECT_EQ(to_oracle(ball(A, r)), oracle::ball(to_oracle(A), r, 5)) << "r=" << r;
  EXPECT_THROW(ball(A, 0), DomainError);
}

TEST(GroupSet, BallsAreNestedAndScaledViewsShareTheMemo) {
  SL2Group G(7);
  Balls balls(offdiag(G, 1));
  for (int r = 1; r < 12; ++r) EXPECT_TRUE(balls(r).is_subset_of(balls(r + 1)));
  Balls three = balls.scaled(3);
  EXPECT_EQ(three(2), balls(6));
  EXPECT_EQ(three.base(), balls(3));
}

TEST(GroupSet, WordBallAgreesWithBallsAndWordsEvaluate) {
  SL2Group G(7);
  GroupSet A = offdiag(G, 1);
  WordBall wb(A);
  Balls balls(A);
  for (int r = 1; r <= 5; ++r) {
    EXPECT_EQ(wb.ball(r), balls(r));
    auto [lo, hi] = wb.layer(r);
    for (std::size_t pos = lo; pos < hi; ++pos) {
      Word w = wb.word(pos);
      EXPECT_EQ(w.length(), static_cast<std::size_t>(r));
      EXPECT_EQ(G.encode(w.evaluate(G)), wb.at(pos));
    }
  }
}

TEST(GroupSet, WordBallFirstWitnessOrder) {
  // Letters are A ascending, then inverses. XY with X = [[1,1],[0,1]] and
  // Y = [[1,0],[1,1]] is the first depth-2 element reached by X.
  SL2Group G(5);
  GroupSet A = offdiag(G, 1);
  WordBall wb(A);
  wb.expand_to(2);
  auto [lo, hi] = wb.layer(2);
  ASSERT_LT(lo, hi);
  Word w = wb.word(lo);
  ASSERT_EQ(w.length(), 2u);
  EXPECT_EQ(w.letters()[0], wb.letters()[0]);
}

TEST(GroupSet, RuzsaDistanceOfSubgroupIsZero) {
  SL2Group G(5);
  GroupSet H = borel_subgroup(G);
  EXPECT_EQ(H.size(), 20u);
  EXPECT_NEAR(ruzsa_distance(H, H), 0.0, 1e-12);
}

TEST(GroupSet, RuzsaTriangleAndInjectionInExactIntegers) {
  for (std::uint32_t p : {5u, 7u}) {
    SL2Group G(p);
    std::mt19937_64 rng(p);
    for (int trial = 0; trial < 100; ++trial) {
      GroupSet A = random_set(G, 1 + rng() % 10, rng), B = random_set(G, 1 + rng() % 10, rng),
               C = random_set(G, 1 + rng() % 10, rng);
      Certificate cert("ruzsa");
      cert.set("AC", product_set(A, C.inverse()).size());
      cert.set("AB", product_set(A, B.inverse()).size());
      cert.set("BC", product_set(B, C.inverse()).size());
      cert.set("B", B.size());
      EXPECT_TRUE(cert.check("ruzsa_injection").holds());
      EXPECT_LE(ruzsa_distance(A, C), ruzsa_distance(A, B) + ruzsa_distance(B, C) + 1e-12);
    }
  }
}

TEST(GroupSet, CoverBoundAndCovering) {
  SL2Group G(7);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    GroupSet A = random_set(G, 5 + rng() % 40, rng), B = random_set(G, 1 + rng() % 8, rng);
    CoverResult c = ruzsa_cover(A, B);
    EXPECT_TRUE(c.covers);
    EXPECT_LE(c.representatives.size() * B.size(), c.product_size);
    EXPECT_LE(c.representatives.size(), c.bound);
  }
}

TEST(GroupSet, GenerationDecisions) {
  SL2Group G(5);
  GenerationResult gen = generates(offdiag(G, 1));
  EXPECT_TRUE(gen.generates());
  EXPECT_EQ(gen.closure_size, 120u);
  GenerationResult borel = generates(borel_subgroup(G));
  EXPECT_EQ(borel.decision, Decision::no);
  EXPECT_EQ(borel.closure_size, 20u);
  GenerationResult trivial = generates(GroupSet::of(G, {G.identity()}));
  EXPECT_FALSE(trivial.generates());
  EXPECT_EQ(trivial.closure_size, 1u);
  EXPECT_EQ(generates(offdiag(G, 1), 100).decision, Decision::undecided);
}

TEST(GroupSet, ClosureMatchesOracle) {
  SL2Group G(7);
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    GroupSet A = random_set(G, 1, rng);
    GenerationResult gen = generates(A);
    EXPECT_EQ(gen.closure_size, oracle::closure(to_oracle(A), 7).size());
  }
}

TEST(Fixtures, CosetAtFive) {
  SL2Group G(5);
  Fixture f = pathological_fixture(G, FixtureKind::coset);
  EXPECT_EQ(f.set.size(), 20u);
  EXPECT_EQ(product_set(f.set, f.set.inverse()).size(), 20u);
  EXPECT_EQ(product_set(f.set, f.set).size(), 100u);
  std::set<oracle::M> gH = to_oracle(f.set);
  EXPECT_EQ(oracle::product(gH, oracle::inverse(gH, 5), 5).size(), 20u);
}

TEST(Fixtures, SubgroupPlusPointAtFive) {
  SL2Group G(5);
  Fixture f = pathological_fixture(G, FixtureKind::subgroup_plus_point);
  EXPECT_EQ(f.set.size(), 21u);
  GroupSet A2 = product_set(f.set, f.set);
  GroupSet A3 = product_set(A2, f.set);
  std::set<oracle::M> H = to_oracle(f.subgroup);
  std::size_t hgh = oracle::product(oracle::product(H, {oracle::from(f.point)}, 5), H, 5).size();
  EXPECT_EQ(hgh, 100u);
  EXPECT_EQ(A2.size(), 56u);
  EXPECT_LE(A2.size(), 61u);
  EXPECT_GE(A3.size(), hgh);
  EXPECT_THROW(pathological_fixture(SL2Group(3), FixtureKind::coset), DomainError);
}

TEST(Serialization, BinaryAndJsonRoundTrip) {
  SL2Group G(11);
  std::mt19937_64 rng(21);
  GroupSet A = random_set(G, 37, rng);
  std::vector<std::uint8_t> blob = to_binary(A);
  EXPECT_EQ(blob.size(), 8u * 38u);
  EXPECT_EQ(from_binary(G, blob), A);
  EXPECT_EQ(sl2lab::from_json(G, sl2lab::to_json(A)), A);
  blob.pop_back();
  EXPECT_THROW(from_binary(G, blob), DomainError);
  EXPECT_THROW(sl2lab::from_json(G, nlohmann::json::array({5, 3})), DomainError);
}
