#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sl2lab/ffield.hpp"

using namespace sl2lab;

TEST(PrimeField, InverseOfThreeModSeven) {
  PrimeField F(7);
  EXPECT_EQ(F.inv(Fp{3}).v, 5u);
  EXPECT_EQ(F.inv(Fp{1}).v, 1u);
}

TEST(PrimeField, InverseOfZeroThrows) {
  PrimeField F(7);
  EXPECT_THROW(F.inv(Fp{0}), DomainError);
}

TEST(PrimeField, RandomInversesModulo1009) {
  PrimeField F(1009);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    Fp a{static_cast<std::uint32_t>(1 + rng() % 1008)};
    EXPECT_EQ(static_cast<std::uint64_t>(a.v) * F.inv(a).v % 1009, 1u);
    EXPECT_EQ(F.inv(F.inv(a)), a);
  }
}

TEST(PrimeField, RejectsCompositeModulus) {
  EXPECT_THROW(PrimeField(9), DomainError);
  EXPECT_THROW(PrimeField(2), DomainError);
}

TEST(PrimeField, SquareRootSmallCases) {
  PrimeField F(7);
  EXPECT_EQ(F.sqrt(Fp{2})->v, 3u);
  EXPECT_EQ(F.sqrt(Fp{0})->v, 0u);
  EXPECT_FALSE(F.sqrt(Fp{3}).has_value());
}

TEST(PrimeField, SquareRootsMatchExhaustiveSearch) {
  for (std::uint32_t p : {5u, 13u, 17u, 1009u}) {
    PrimeField F(p);
    for (std::uint32_t a = 0; a < p; ++a) {
      auto expect = oracle::brute_sqrt(a, p);
      auto got = F.sqrt(Fp{a});
      ASSERT_EQ(got.has_value(), expect.has_value()) << "p=" << p << " a=" << a;
      if (got) {
        EXPECT_EQ(got->v, *expect);
      } else {
        EXPECT_EQ(oracle::brute_pow(a, (p - 1) / 2, p), p - 1);
      }
    }
  }
}

TEST(PrimeField, SquareOfAnythingHasCanonicalRoot) {
  PrimeField F(101);
  for (std::uint32_t a = 0; a < 101; ++a) {
    Fp r = *F.sqrt(F.mul(Fp{a}, Fp{a}));
    EXPECT_TRUE(r.v == a || r.v == (101 - a) % 101);
    EXPECT_LE(r.v, 101 - r.v);
  }
}

TEST(PrimeField, LeastNonResidue) {
  EXPECT_EQ(PrimeField(7).nonresidue().v, 3u);
  EXPECT_EQ(PrimeField(17).nonresidue().v, 3u);
  EXPECT_EQ(PrimeField(41).nonresidue().v, 3u);
  EXPECT_EQ(PrimeField(73).nonresidue().v, 5u);
}

TEST(Primes, SieveAgreesWithTrialDivision) {
  auto primes = primes_in_range(1, 200);
  std::vector<std::uint32_t> expect;
  for (std::uint32_t n = 2; n <= 200; ++n) {
    bool prime = true;
    for (std::uint32_t d = 2; d * d <= n; ++d) prime = prime && n % d != 0;
    if (prime) expect.push_back(n);
  }
  EXPECT_EQ(primes, expect);
  for (std::uint32_t n = 0; n < 2000; ++n) {
    bool prime = n >= 2;
    for (std::uint32_t d = 2; d * d <= n; ++d) prime = prime && n % d != 0;
    EXPECT_EQ(is_prime(n), prime) << n;
  }
}

TEST(QuadField, OmegaSquaredIsNonResidue) {
  PrimeField F(11);
  QuadField K(F);
  Fq2 w = K.omega();
  EXPECT_EQ(K.mul(w, w), K.embed(F.nonresidue()));
}

TEST(QuadField, RandomInverses) {
  PrimeField F(101);
  QuadField K(F);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    Fq2 x = K.make(static_cast<std::int64_t>(rng() % 101), static_cast<std::int64_t>(rng() % 101));
    if (K.is_zero(x)) continue;
    EXPECT_EQ(K.mul(x, K.inv(x)), K.one());
  }
  EXPECT_THROW(K.inv(K.zero()), DomainError);
}

TEST(QuadField, NormIsMultiplicative) {
  PrimeField F(13);
  QuadField K(F);
  for (std::uint64_t i = 0; i < K.order(); i += 7) {
    for (std::uint64_t j = 0; j < K.order(); j += 5) {
      Fq2 a = K.unpack(i), b = K.unpack(j);
      EXPECT_EQ(K.norm(K.mul(a, b)), F.mul(K.norm(a), K.norm(b)));
      EXPECT_EQ(K.mul(a, K.conj(a)), K.embed(K.norm(a)));
    }
  }
}

TEST(QuadField, BaseFieldNonResidueHasPureRoot) {
  PrimeField F(19);
  QuadField K(F);
  for (std::uint32_t a = 1; a < 19; ++a) {
    auto r = K.sqrt(K.embed(Fp{a}));
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(K.mul(*r, *r), K.embed(Fp{a}));
    if (!F.is_square(Fp{a})) EXPECT_EQ(r->x.v, 0u);
  }
}

TEST(QuadField, SquareRootsRoundTrip) {
  PrimeField F(23);
  QuadField K(F);
  for (std::uint64_t i = 0; i < K.order(); ++i) {
    Fq2 a = K.unpack(i);
    Fq2 sq = K.mul(a, a);
    auto r = K.sqrt(sq);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(K.mul(*r, *r), sq);
  }
}

TEST(QuadField, PackIsABijection) {
  PrimeField F(7);
  QuadField K(F);
  for (std::uint64_t i = 0; i < K.order(); ++i) EXPECT_EQ(K.pack(K.unpack(i)), i);
}
