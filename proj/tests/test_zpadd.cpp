#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "sl2lab/certificate.hpp"
#include "sl2lab/zpadd.hpp"

using namespace sl2lab;

namespace {

ZpSet random_zp(std::uint32_t p, std::size_t k, std::mt19937_64& rng, bool nonzero = false) {
  ZpSet A(p);
  while (A.size() < k) {
    std::uint32_t x = rng() % p;
    if (nonzero && x == 0) continue;
    A.insert(x);
  }
  return A;
}

}  // namespace

TEST(ZpSet, BasicOperations) {
  ZpSet A = ZpSet::of(7, {1, 2, 9, -1});
  EXPECT_EQ(A.elements(), (std::vector<std::uint32_t>{1, 2, 6}));
  EXPECT_EQ(A.negate().elements(), (std::vector<std::uint32_t>{1, 5, 6}));
  EXPECT_EQ(A.dilate(3).elements(), (std::vector<std::uint32_t>{3, 4, 6}));
  EXPECT_EQ(sumset(A, A).size(), 6u);
  EXPECT_THROW(sumset(A, ZpSet(11)), ContextMismatch);
  EXPECT_THROW(ZpSet(1), DomainError);
}

TEST(ZpSet, SumAndProductMatchBruteForce) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint32_t p = 31;
    ZpSet A = random_zp(p, 1 + rng() % 12, rng), B = random_zp(p, 1 + rng() % 12, rng);
    std::set<std::uint32_t> sums, prods;
    for (std::uint32_t a : A.elements())
      for (std::uint32_t b : B.elements()) {
        sums.insert((a + b) % p);
        prods.insert(a * b % p);
      }
    EXPECT_EQ(sumset(A, B).size(), sums.size());
    EXPECT_EQ(product_set(A, B).size(), prods.size());
  }
}

TEST(Fourier, DeltaAtZeroIsFlat) {
  ZpSet A = ZpSet::of(13, {0});
  DensityFn f = fourier(indicator(A));
  for (const auto& z : f) {
    EXPECT_NEAR(z.real(), 1.0, 1e-12);
    EXPECT_NEAR(z.imag(), 0.0, 1e-12);
  }
}

TEST(Fourier, Parseval) {
  std::mt19937_64 rng(5);
  const std::uint32_t p = 101;
  for (int trial = 0; trial < 10; ++trial) {
    ZpSet A = random_zp(p, 1 + rng() % 60, rng);
    DensityFn f = indicator(A);
    EXPECT_NEAR(l2_norm_squared(fourier(f)), p * l2_norm_squared(f), 1e-6);
  }
  EXPECT_THROW(fourier(DensityFn(kMaxDftModulus + 1)), DomainError);
}

TEST(Convolve, MatchesNaiveOracleAndMass) {
  std::mt19937_64 rng(6);
  for (std::uint32_t p : {5u, 31u, 101u}) {
    for (int trial = 0; trial < 10; ++trial) {
      ZpSet A = random_zp(p, 1 + rng() % p, rng), B = random_zp(p, 1 + rng() % p, rng);
      std::vector<std::uint64_t> got = convolve(A, B);
      EXPECT_EQ(got, oracle::naive_convolve(A.elements(), B.elements(), p));
      std::uint64_t mass = 0;
      for (std::uint64_t v : got) mass += v;
      EXPECT_EQ(mass, A.size() * B.size());
    }
  }
}

TEST(Sorge, IntervalAt101) {
  ZpSet A = ZpSet::range(101, 1, 10);
  ZpSet S = ZpSet::range(101, 1, 100);
  SorgeResult r = sorge_find_xi(A, S);
  EXPECT_EQ(r.xi, 10u);
  EXPECT_EQ(r.sumset_size, 100u);
  EXPECT_EQ(r.count, 98u);
  EXPECT_TRUE(r.certificate.passed());
  EXPECT_TRUE(r.certificate.recheck());
  EXPECT_EQ(sumset(A, A.dilate(r.xi)).size(), r.sumset_size);
}

TEST(Sorge, ExactBoundOnRandomSets) {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {13u, 101u, 499u, 997u}) {
    for (int trial = 0; trial < 5; ++trial) {
      ZpSet A = random_zp(p, 2 + rng() % std::min<std::uint32_t>(30, p - 2), rng);
      ZpSet S = random_zp(p, 1 + rng() % std::min<std::uint32_t>(40, p - 1), rng, true);
      SorgeResult r = sorge_find_xi(A, S, Rational{1, 2});
      EXPECT_TRUE(r.certificate.passed()) << r.certificate.failures();
      EXPECT_TRUE(S.contains(r.xi));
    }
  }
}

TEST(Sorge, Hypotheses) {
  ZpSet A = ZpSet::range(13, 1, 3);
  EXPECT_THROW(sorge_find_xi(A, ZpSet::of(13, {0, 1})), HypothesisError);
  EXPECT_THROW(sorge_find_xi(A, ZpSet(13)), HypothesisError);
  EXPECT_THROW(sorge_find_xi(A, ZpSet::of(13, {1}), Rational{3, 2}), DomainError);
}

TEST(SumProduct, ArithmeticAndGeometricProgressions) {
  const std::uint32_t p = 1009;
  ZpSet ap = ZpSet::range(p, 1, 20);
  SumProductStats s = sumproduct_stats(ap);
  EXPECT_EQ(s.sum_size, 39u);
  EXPECT_GT(s.product_size, s.sum_size);

  ZpSet gp(p);
  std::uint64_t x = 1;
  for (int i = 0; i < 20; ++i, x = x * 3 % p) gp.insert(static_cast<std::int64_t>(x));
  SumProductStats g = sumproduct_stats(gp);
  EXPECT_EQ(g.product_size, 39u);
  EXPECT_GT(g.sum_size, g.product_size);
  EXPECT_GT(g.exponent, 0.0);
  EXPECT_THROW(sumproduct_stats(ZpSet::of(p, {0, 1})), DomainError);
}

TEST(WIdentity, HoldsExactly) {
  for (std::uint32_t p : {7u, 101u, 1009u}) {
    QuadField K(p);
    std::mt19937_64 rng(p);
    for (int i = 0; i < 1000; ++i) {
      Fq2 x, y;
      do x = K.make(rng() % p, rng() % p); while (K.is_zero(x));
      do y = K.make(rng() % p, rng() % p); while (K.is_zero(y));
      EXPECT_EQ(K.mul(w(K, x), w(K, y)), K.add(w(K, K.mul(x, y)), w(K, K.div(x, y))));
    }
  }
}

TEST(Expander, AmtarImageMatchesBruteForce) {
  const std::uint32_t p = 31;
  QuadField K(p);
  std::vector<Fq2> base = {K.make(2), K.make(3, 1)};
  ExpanderImage img = expander_sets(K, base, ExpanderKind::amtar);

  std::set<Fq2> ball = {K.one()};
  std::vector<Fq2> steps;
  for (Fq2 a : base) {
    steps.push_back(a);
    steps.push_back(K.inv(a));
  }
  for (int r = 0; r < 2; ++r) {
    std::set<Fq2> next = ball;
    for (Fq2 x : ball)
      for (Fq2 s : steps) next.insert(K.mul(x, s));
    ball = next;
  }
  std::set<Fq2> image;
  for (Fq2 x : ball)
    for (Fq2 y : ball) image.insert(K.mul(w(K, x), w(K, y)));
  EXPECT_EQ(img.ball_size, ball.size());
  EXPECT_EQ(img.image.size(), image.size());
  EXPECT_EQ(img.base_size, 2u);
  EXPECT_THROW(expander_sets(K, base, ExpanderKind::corz), DomainError);
}

TEST(AdditiveRuzsa, PlusMinusInequality) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint32_t p = 97;
    ZpSet A = random_zp(p, 1 + rng() % 30, rng);
    Certificate cert("additive");
    cert.set("A", A.size());
    cert.set("ApA", sumset(A, A).size());
    cert.set("AmA", difference_set(A, A).size());
    EXPECT_TRUE(cert.check("ruzsa_eq25").holds());
  }
}
