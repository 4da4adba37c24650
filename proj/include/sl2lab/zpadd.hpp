#pragma once

// Additive and multiplicative combinatorics over Z/pZ and F_{p^2}: sets of
// residues, the discrete Fourier transform, convolution, sumsets, the dilate
// lemma, sum-product measurement and the two expanding polynomials.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "sl2lab/bitset.hpp"
#include "sl2lab/certificate.hpp"
#include "sl2lab/errors.hpp"
#include "sl2lab/exact.hpp"
#include "sl2lab/ffield.hpp"

namespace sl2lab {

class ZpSet {
 public:
  explicit ZpSet(std::uint32_t p) : p_(p), bits_(p) {
    if (p < 2) throw DomainError("modulus must be at least 2");
  }
  static ZpSet of(std::uint32_t p, std::initializer_list<std::int64_t> xs) {
    ZpSet s(p);
    for (std::int64_t x : xs) s.insert(x);
    return s;
  }
  static ZpSet of(std::uint32_t p, const std::vector<std::uint32_t>& xs) {
    ZpSet s(p);
    for (std::uint32_t x : xs) s.insert(x);
    return s;
  }
  static ZpSet range(std::uint32_t p, std::int64_t lo, std::int64_t hi) {
    ZpSet s(p);
    for (std::int64_t x = lo; x <= hi; ++x) s.insert(x);
    return s;
  }

  std::uint32_t modulus() const { return p_; }
  std::uint64_t size() const { return bits_.count(); }
  bool empty() const { return bits_.empty(); }
  bool contains(std::uint32_t x) const { return x < p_ && bits_.test(x); }

  bool insert(std::int64_t x) {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return bits_.set(static_cast<std::uint64_t>(r));
  }

  std::vector<std::uint32_t> elements() const {
    std::vector<std::uint32_t> out;
    out.reserve(size());
    bits_.for_each([&](std::uint64_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
    return out;
  }

  // {xi * a : a in A}
  ZpSet dilate(std::uint32_t xi) const {
    ZpSet out(p_);
    bits_.for_each([&](std::uint64_t a) { out.insert(static_cast<std::int64_t>(a * xi % p_)); });
    return out;
  }
  ZpSet negate() const { return dilate(p_ - 1); }

  void check_modulus(const ZpSet& other) const {
    if (other.p_ != p_) {
      throw ContextMismatch("residue sets mod " + std::to_string(p_) + " and mod " + std::to_string(other.p_));
    }
  }

  friend bool operator==(const ZpSet& a, const ZpSet& b) { return a.p_ == b.p_ && a.bits_ == b.bits_; }

 private:
  std::uint32_t p_;
  Bitset bits_;
};

inline ZpSet sumset(const ZpSet& A, const ZpSet& B) {
  A.check_modulus(B);
  const std::uint64_t p = A.modulus();
  ZpSet out(A.modulus());
  const auto bs = B.elements();
  for (std::uint32_t a : A.elements()) {
    for (std::uint32_t b : bs) out.insert(static_cast<std::int64_t>((a + b) % p));
    if (out.size() == p) break;
  }
  return out;
}

inline ZpSet difference_set(const ZpSet& A, const ZpSet& B) { return sumset(A, B.negate()); }

// {a b : a in A, b in B}
inline ZpSet product_set(const ZpSet& A, const ZpSet& B) {
  A.check_modulus(B);
  const std::uint64_t p = A.modulus();
  ZpSet out(A.modulus());
  const auto bs = B.elements();
  for (std::uint32_t a : A.elements()) {
    for (std::uint32_t b : bs) out.insert(static_cast<std::int64_t>(static_cast<std::uint64_t>(a) * b % p));
  }
  return out;
}

// log(|A - B| / sqrt(|A| |B|))
inline double additive_ruzsa_distance(const ZpSet& A, const ZpSet& B) {
  if (A.empty() || B.empty()) throw DomainError("Ruzsa distance of an empty set");
  return std::log(static_cast<double>(difference_set(A, B).size()) /
                  std::sqrt(static_cast<double>(A.size()) * static_cast<double>(B.size())));
}

using DensityFn = std::vector<std::complex<double>>;

inline constexpr std::uint32_t kMaxDftModulus = 4099;

inline DensityFn indicator(const ZpSet& A) {
  DensityFn f(A.modulus(), 0.0);
  for (std::uint32_t a : A.elements()) f[a] = 1.0;
  return f;
}

// f^(y) = sum_x f(x) e^(-2 pi i x y / p), evaluated directly.
inline DensityFn fourier(const DensityFn& f) {
  const std::size_t p = f.size();
  if (p == 0 || p > kMaxDftModulus) throw DomainError("direct transform supports lengths 1.." + std::to_string(kMaxDftModulus));
  std::vector<std::complex<double>> roots(p);
  for (std::size_t k = 0; k < p; ++k) roots[k] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) / p);
  DensityFn out(p);
  for (std::size_t y = 0; y < p; ++y) {
    std::complex<double> acc = 0.0;
    std::size_t k = 0;
    for (std::size_t x = 0; x < p; ++x) {
      acc += f[x] * roots[k];
      k += y;
      if (k >= p) k -= p;
    }
    out[y] = acc;
  }
  return out;
}

inline double l2_norm_squared(const DensityFn& f) {
  double s = 0.0;
  for (const auto& z : f) s += std::norm(z);
  return s;
}

// (A * B)(x) = #{(y, z) in A x B : y + z = x}
inline std::vector<std::uint64_t> convolve(const ZpSet& A, const ZpSet& B) {
  A.check_modulus(B);
  const std::uint32_t p = A.modulus();
  std::vector<std::uint64_t> out(p, 0);
  const auto bs = B.elements();
  for (std::uint32_t a : A.elements()) {
    for (std::uint32_t b : bs) {
      std::uint32_t s = a + b;
      ++out[s >= p ? s - p : s];
    }
  }
  return out;
}

struct SorgeResult {
  std::uint32_t xi = 0;
  std::uint64_t sumset_size = 0;  // |A + xi A|
  std::uint64_t count = 0;        // xi in S meeting the c-scaled bound
  Certificate certificate{"sorge"};
};

// Scans S for the xi maximizing |A + xi A| (ties to the smallest xi) and
// certifies |A + xi A| >= (1/p + p/(|S| |A|^2))^-1 together with the count
// of xi reaching c times that bound, all in exact integers.
inline SorgeResult sorge_find_xi(const ZpSet& A, const ZpSet& S, Rational c = {1, 2}) {
  A.check_modulus(S);
  if (A.empty() || S.empty()) throw HypothesisError("dilate lemma needs non-empty A and S");
  if (S.contains(0)) throw HypothesisError("dilate lemma needs 0 outside S");
  if (c.num == 0 || c.num > c.den) throw DomainError("c must lie in (0, 1]");
  const BigInt p = A.modulus();
  const BigInt s_size = S.size();
  const BigInt a_size = A.size();
  const BigInt sa2 = s_size * a_size * a_size;
  SorgeResult res;
  std::optional<std::uint64_t> best;
  for (std::uint32_t xi : S.elements()) {
    std::uint64_t size = sumset(A, A.dilate(xi)).size();
    if (!best || size > *best) {
      best = size;
      res.xi = xi;
    }
    // size >= (c_num / c_den) p |S||A|^2 / (|S||A|^2 + p^2)
    if (BigInt(size) * (sa2 + p * p) * c.den >= BigInt(c.num) * p * sa2) ++res.count;
  }
  res.sumset_size = *best;
  Certificate& cert = res.certificate;
  cert.set("p", p);
  cert.set("S", s_size);
  cert.set("A", a_size);
  cert.set("sumset", res.sumset_size);
  cert.set("count", res.count);
  cert.set("c_num", c.num);
  cert.set("c_den", c.den);
  cert.set("xi", res.xi);
  cert.check("sorge");
  cert.check("sorge_count");
  return res;
}

struct SumProductStats {
  std::uint64_t size = 0;
  std::uint64_t sum_size = 0;
  std::uint64_t product_size = 0;
  double exponent = 0.0;  // log max(|A+A|, |A.A|) / log |A| - 1
};

inline SumProductStats sumproduct_stats(const ZpSet& A) {
  if (A.contains(0)) throw DomainError("sum-product statistics need A inside F_p^*");
  if (A.size() < 2) throw DomainError("sum-product statistics need |A| >= 2");
  SumProductStats s;
  s.size = A.size();
  s.sum_size = sumset(A, A).size();
  s.product_size = product_set(A, A).size();
  s.exponent = std::log(static_cast<double>(std::max(s.sum_size, s.product_size))) / std::log(static_cast<double>(s.size)) - 1.0;
  return s;
}

// w(x) = x + 1/x
inline Fq2 w(const QuadField& K, Fq2 x) { return K.add(x, K.inv(x)); }

// Products of at most r elements of A u A^-1 inside F_q^*, q = p or p^2
// (base-field elements are embedded with zero w-part).
class MulBall {
 public:
  MulBall(const QuadField& K, const std::vector<Fq2>& base, int r) : K_(K), radius_(r) {
    if (r < 1) throw DomainError("multiplicative ball radius must be at least 1");
    std::vector<Fq2> steps;
    for (Fq2 a : base) {
      if (K.is_zero(a)) throw DomainError("multiplicative ball over a set containing 0");
      steps.push_back(a);
      steps.push_back(K.inv(a));
    }
    std::unordered_set<std::uint64_t> distinct;
    for (Fq2 a : base) distinct.insert(K.pack(a));
    base_size_ = distinct.size();
    std::vector<Fq2> frontier{K.one()};
    seen_.insert(K.pack(K.one()));
    members_.push_back(K.one());
    for (int k = 0; k < r && !frontier.empty(); ++k) {
      std::vector<Fq2> next;
      for (Fq2 x : frontier) {
        for (Fq2 s : steps) {
          Fq2 y = K.mul(x, s);
          if (seen_.insert(K.pack(y)).second) {
            next.push_back(y);
            members_.push_back(y);
          }
        }
      }
      frontier = std::move(next);
    }
    std::sort(members_.begin(), members_.end(), [&](Fq2 a, Fq2 b) { return K.pack(a) < K.pack(b); });
  }

  int radius() const { return radius_; }
  std::size_t base_size() const { return base_size_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<Fq2>& members() const { return members_; }
  bool contains(Fq2 x) const { return seen_.count(K_.pack(x)) != 0; }

 private:
  QuadField K_;
  int radius_;
  std::size_t base_size_ = 0;
  std::vector<Fq2> members_;
  std::unordered_set<std::uint64_t> seen_;
};

enum class ExpanderKind { amtar, corz };

struct ExpanderImage {
  ExpanderKind kind = ExpanderKind::amtar;
  std::size_t base_size = 0;
  std::size_t ball_size = 0;
  std::vector<Fq2> image;  // ascending packed order
  double exponent = 0.0;   // log |image| / log |A| - 1
};

// amtar: {w(x) w(y) : x, y in A_2}
// corz:  {a1 (x y + 1/(x y)) + a2 (y/x + x/y) : x, y in A_20}
inline ExpanderImage expander_sets(const QuadField& K, const std::vector<Fq2>& base, ExpanderKind kind,
                                   Fq2 a1 = {}, Fq2 a2 = {}) {
  if (kind == ExpanderKind::corz && (K.is_zero(a1) || K.is_zero(a2))) {
    throw DomainError("corz coefficients must be non-zero");
  }
  MulBall ball(K, base, kind == ExpanderKind::amtar ? 2 : 20);
  std::unordered_set<std::uint64_t> image;
  const auto& xs = ball.members();
  std::vector<Fq2> inverses;
  inverses.reserve(xs.size());
  for (Fq2 x : xs) inverses.push_back(K.inv(x));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      Fq2 v;
      if (kind == ExpanderKind::amtar) {
        v = K.mul(K.add(xs[i], inverses[i]), K.add(xs[j], inverses[j]));
      } else {
        Fq2 xy = K.mul(xs[i], xs[j]);
        Fq2 y_over_x = K.mul(inverses[i], xs[j]);
        v = K.add(K.mul(a1, K.add(xy, K.inv(xy))), K.mul(a2, K.add(y_over_x, K.inv(y_over_x))));
      }
      image.insert(K.pack(v));
    }
  }
  ExpanderImage out;
  out.kind = kind;
  out.base_size = ball.base_size();
  out.ball_size = ball.size();
  std::vector<std::uint64_t> packed(image.begin(), image.end());
  std::sort(packed.begin(), packed.end());
  for (std::uint64_t v : packed) out.image.push_back(K.unpack(v));
  out.exponent = out.base_size > 1 ? std::log(static_cast<double>(out.image.size())) /
                                             std::log(static_cast<double>(out.base_size)) -
                                         1.0
                                   : 0.0;
  return out;
}

}  // namespace sl2lab
