#pragma once

// Exact integer helpers for threshold checks and certificates.

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "sl2lab/errors.hpp"

namespace sl2lab {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(BigInt base, unsigned exp) {
  BigInt r = 1;
  while (exp) {
    if (exp & 1u) r *= base;
    base *= base;
    exp >>= 1;
  }
  return r;
}

// floor(n^(1/k)) for n >= 0, by bisection.
inline BigInt iroot_floor(const BigInt& n, unsigned k) {
  if (n < 0 || k == 0) throw DomainError("integer root of a negative number or of order 0");
  if (n < 2 || k == 1) return n;
  BigInt lo = 0;
  BigInt hi = 1;
  while (big_pow(hi, k) <= n) hi <<= 1;
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) >> 1;
    (big_pow(mid, k) <= n ? lo : hi) = mid;
  }
  return lo;
}

// Smallest integer exceeding 2 p^(5/3) + 1, i.e. floor(cbrt(8 p^5)) + 2.
inline std::uint64_t attac_min_size(std::uint64_t p) {
  return static_cast<std::uint64_t>(iroot_floor(8 * big_pow(p, 5), 3)) + 2;
}

// Smallest integer exceeding 6 p^(8/3), i.e. floor(cbrt(216 p^8)) + 1.
inline std::uint64_t factorize_min_size(std::uint64_t p) {
  return static_cast<std::uint64_t>(iroot_floor(216 * big_pow(p, 8), 3)) + 1;
}

// A non-negative rational num/den with den > 0.
struct Rational {
  std::uint64_t num = 1;
  std::uint64_t den = 1;

  static Rational parse(const std::string& text) {
    Rational r;
    try {
      auto slash = text.find('/');
      if (slash == std::string::npos) {
        std::size_t dot = text.find('.');
        if (dot == std::string::npos) {
          r.num = std::stoull(text);
          r.den = 1;
        } else {
          std::string digits = text.substr(0, dot) + text.substr(dot + 1);
          r.num = std::stoull(digits.empty() ? "0" : digits);
          r.den = 1;
          for (std::size_t i = dot + 1; i < text.size(); ++i) r.den *= 10;
        }
      } else {
        r.num = std::stoull(text.substr(0, slash));
        r.den = std::stoull(text.substr(slash + 1));
      }
    } catch (const std::exception&) {
      throw DomainError("not a rational number: '" + text + "'");
    }
    if (r.den == 0) throw DomainError("zero denominator in '" + text + "'");
    return r;
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

}  // namespace sl2lab
