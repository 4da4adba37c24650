#pragma once

// Exact arithmetic in F_p (p an odd prime below 2^31) and in F_{p^2} = F_p(w),
// w^2 = nu with nu the least quadratic non-residue.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sl2lab/errors.hpp"

namespace sl2lab {

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = static_cast<std::uint64_t>(static_cast<unsigned __int128>(result) * base % mod);
    base = static_cast<std::uint64_t>(static_cast<unsigned __int128>(base) * base % mod);
    exp >>= 1;
  }
  return result;
}

// Deterministic Miller-Rabin; the witness set {2,3,5,7,11,13,17,19,23,29,31,37}
// is exact for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * x % n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Primes in [lo, hi] by a plain sieve.
inline std::vector<std::uint32_t> primes_in_range(std::uint32_t lo, std::uint32_t hi) {
  std::vector<std::uint32_t> out;
  if (hi < 2 || lo > hi) return out;
  std::vector<bool> composite(hi + 1, false);
  for (std::uint64_t i = 2; i * i <= hi; ++i) {
    if (composite[i]) continue;
    for (std::uint64_t j = i * i; j <= hi; j += i) composite[j] = true;
  }
  for (std::uint32_t n = std::max<std::uint32_t>(lo, 2); n <= hi; ++n) {
    if (!composite[n]) out.push_back(n);
    if (n == hi) break;
  }
  return out;
}

struct Fp {
  std::uint32_t v = 0;

  friend constexpr bool operator==(Fp, Fp) = default;
  friend constexpr auto operator<=>(Fp, Fp) = default;
};

class PrimeField {
 public:
  static constexpr std::uint32_t kMaxModulus = (1u << 31) - 1;
  static constexpr std::uint32_t kInverseTableLimit = 1u << 20;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (p < 3 || p > kMaxModulus || !is_prime(p)) {
      throw DomainError("modulus " + std::to_string(p) + " is not an odd prime below 2^31");
    }
    if (p <= kInverseTableLimit) {
      auto table = std::make_shared<std::vector<std::uint32_t>>(p, 0);
      auto& inv = *table;
      inv[1] = 1;
      for (std::uint64_t i = 2; i < p; ++i) {
        inv[i] = static_cast<std::uint32_t>((p - (p / i) * static_cast<std::uint64_t>(inv[p % i]) % p) % p);
      }
      inverses_ = std::move(table);
    }
    std::uint32_t candidate = 2;
    while (legendre(Fp{candidate}) != -1) ++candidate;
    nonresidue_ = Fp{candidate};
  }

  std::uint32_t modulus() const { return p_; }
  Fp nonresidue() const { return nonresidue_; }

  Fp make(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return Fp{static_cast<std::uint32_t>(r)};
  }
  Fp zero() const { return Fp{0}; }
  Fp one() const { return Fp{1}; }

  Fp add(Fp a, Fp b) const {
    std::uint32_t s = a.v + b.v;  // p < 2^31 so no wraparound
    return Fp{s >= p_ ? s - p_ : s};
  }
  Fp sub(Fp a, Fp b) const { return Fp{a.v >= b.v ? a.v - b.v : a.v + p_ - b.v}; }
  Fp neg(Fp a) const { return Fp{a.v == 0 ? 0 : p_ - a.v}; }
  Fp mul(Fp a, Fp b) const {
    return Fp{static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v) * b.v % p_)};
  }
  // a*b + c*d in one reduction.
  Fp mul_add(Fp a, Fp b, Fp c, Fp d) const {
    return Fp{static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(a.v) * b.v + static_cast<std::uint64_t>(c.v) * d.v) % p_)};
  }
  Fp pow(Fp a, std::uint64_t e) const { return Fp{static_cast<std::uint32_t>(pow_mod(a.v, e, p_))}; }

  Fp inv(Fp a) const {
    if (a.v == 0) throw DomainError("inverse of zero in F_" + std::to_string(p_));
    if (inverses_) return Fp{(*inverses_)[a.v]};
    return pow(a, p_ - 2);
  }
  Fp div(Fp a, Fp b) const { return mul(a, inv(b)); }

  // Legendre symbol via Euler's criterion: 0, 1 or -1.
  int legendre(Fp a) const {
    if (a.v == 0) return 0;
    return pow(a, (p_ - 1) / 2).v == 1 ? 1 : -1;
  }
  bool is_square(Fp a) const { return legendre(a) >= 0; }

  // The smaller of the two representatives r, p - r.
  Fp canonical_root(Fp r) const { return r.v <= p_ - r.v ? r : neg(r); }

  // Tonelli-Shanks. Returns the smaller root, or nothing for a non-residue.
  std::optional<Fp> sqrt(Fp a) const {
    if (a.v == 0) return Fp{0};
    if (legendre(a) != 1) return std::nullopt;
    std::uint32_t q = p_ - 1;
    int s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    Fp z = nonresidue_;
    Fp c = pow(z, q);
    Fp x = pow(a, (q + 1) / 2);
    Fp t = pow(a, q);
    int m = s;
    while (t.v != 1) {
      int i = 0;
      Fp tt = t;
      while (tt.v != 1) {
        tt = mul(tt, tt);
        ++i;
      }
      Fp b = c;
      for (int j = 0; j < m - i - 1; ++j) b = mul(b, b);
      x = mul(x, b);
      c = mul(b, b);
      t = mul(t, c);
      m = i;
    }
    return canonical_root(x);
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
  Fp nonresidue_{};
  std::shared_ptr<const std::vector<std::uint32_t>> inverses_;
};

// x + y*w with w^2 = nu.
struct Fq2 {
  Fp x, y;

  friend constexpr bool operator==(Fq2, Fq2) = default;
  friend constexpr auto operator<=>(Fq2, Fq2) = default;
};

class QuadField {
 public:
  explicit QuadField(PrimeField base) : F_(std::move(base)) {}
  explicit QuadField(std::uint32_t p) : F_(p) {}

  const PrimeField& base() const { return F_; }
  std::uint64_t order() const { return static_cast<std::uint64_t>(F_.modulus()) * F_.modulus(); }

  Fq2 zero() const { return {}; }
  Fq2 one() const { return {F_.one(), F_.zero()}; }
  Fq2 omega() const { return {F_.zero(), F_.one()}; }
  Fq2 embed(Fp a) const { return {a, F_.zero()}; }
  Fq2 make(std::int64_t x, std::int64_t y = 0) const { return {F_.make(x), F_.make(y)}; }
  bool in_base(Fq2 a) const { return a.y.v == 0; }
  bool is_zero(Fq2 a) const { return a.x.v == 0 && a.y.v == 0; }

  Fq2 add(Fq2 a, Fq2 b) const { return {F_.add(a.x, b.x), F_.add(a.y, b.y)}; }
  Fq2 sub(Fq2 a, Fq2 b) const { return {F_.sub(a.x, b.x), F_.sub(a.y, b.y)}; }
  Fq2 neg(Fq2 a) const { return {F_.neg(a.x), F_.neg(a.y)}; }
  Fq2 mul(Fq2 a, Fq2 b) const {
    Fp nu_yy = F_.mul(F_.nonresidue(), F_.mul(a.y, b.y));
    return {F_.add(F_.mul(a.x, b.x), nu_yy), F_.mul_add(a.x, b.y, a.y, b.x)};
  }
  Fq2 scale(Fp s, Fq2 a) const { return {F_.mul(s, a.x), F_.mul(s, a.y)}; }
  Fq2 conj(Fq2 a) const { return {a.x, F_.neg(a.y)}; }
  // z * conj(z) = x^2 - nu y^2, an element of F_p.
  Fp norm(Fq2 a) const { return F_.sub(F_.mul(a.x, a.x), F_.mul(F_.nonresidue(), F_.mul(a.y, a.y))); }

  Fq2 inv(Fq2 a) const {
    if (is_zero(a)) throw DomainError("inverse of zero in F_{p^2}");
    return scale(F_.inv(norm(a)), conj(a));
  }
  Fq2 div(Fq2 a, Fq2 b) const { return mul(a, inv(b)); }
  Fq2 pow(Fq2 a, std::uint64_t e) const {
    Fq2 r = one();
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  // z is a square in F_{p^2} iff its norm is a square in F_p.
  bool is_square(Fq2 a) const { return F_.is_square(norm(a)); }

  // The lexicographically smaller of (x, y) and its negation.
  Fq2 canonical_root(Fq2 r) const {
    Fq2 n = neg(r);
    return n < r ? n : r;
  }

  std::optional<Fq2> sqrt(Fq2 a) const {
    if (is_zero(a)) return zero();
    if (a.y.v == 0) {
      if (auto r = F_.sqrt(a.x)) return canonical_root(embed(*r));
      // a/nu is a residue, so (c w)^2 = c^2 nu = a.
      auto c = F_.sqrt(F_.div(a.x, F_.nonresidue()));
      if (!c) throw InvariantError("non-residue quotient of two non-residues");
      return canonical_root(Fq2{F_.zero(), *c});
    }
    auto n = F_.sqrt(norm(a));
    if (!n) return std::nullopt;
    Fp half = F_.inv(F_.make(2));
    for (Fp root_norm : {*n, F_.neg(*n)}) {
      Fp u2 = F_.mul(F_.add(a.x, root_norm), half);
      if (u2.v == 0) continue;
      if (auto u = F_.sqrt(u2)) {
        Fp v = F_.div(a.y, F_.mul(F_.make(2), *u));
        return canonical_root(Fq2{*u, v});
      }
    }
    throw InvariantError("square root in F_{p^2} not found for a square");
  }

  // Packs to x + p*y in [0, p^2).
  std::uint64_t pack(Fq2 a) const { return a.x.v + static_cast<std::uint64_t>(F_.modulus()) * a.y.v; }
  Fq2 unpack(std::uint64_t i) const {
    return {Fp{static_cast<std::uint32_t>(i % F_.modulus())}, Fp{static_cast<std::uint32_t>(i / F_.modulus())}};
  }

  std::string format(Fq2 a) const {
    if (a.y.v == 0) return std::to_string(a.x.v);
    return std::to_string(a.x.v) + "+" + std::to_string(a.y.v) + "w";
  }

 private:
  PrimeField F_;
};

}  // namespace sl2lab
