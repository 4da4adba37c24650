#pragma once

// SL_2(F_p): elements, the column-based perfect index, eigendata over F_{p^2}
// and conjugacy-class labels.

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sl2lab/errors.hpp"
#include "sl2lab/ffield.hpp"

namespace sl2lab {

using Index = std::uint64_t;

// Row-major [[a, b], [c, d]] with ad - bc = 1.
struct SL2 {
  Fp a, b, c, d;

  friend constexpr bool operator==(const SL2&, const SL2&) = default;
};

// A 2x2 matrix over F_{p^2}; used for eigenbasis coordinates and the
// escape action on M_2.
struct Mat2q {
  Fq2 a, b, c, d;

  friend constexpr bool operator==(const Mat2q&, const Mat2q&) = default;
};

// A projective point of F_{p^2}^2, scaled so its first nonzero coordinate is 1.
struct ProjVec {
  Fq2 x, y;

  friend constexpr bool operator==(const ProjVec&, const ProjVec&) = default;
  friend constexpr auto operator<=>(const ProjVec&, const ProjVec&) = default;
};

enum class EigenKind { split, nonsplit, parabolic, central };

inline const char* to_string(EigenKind k) {
  switch (k) {
    case EigenKind::split: return "split";
    case EigenKind::nonsplit: return "non-split";
    case EigenKind::parabolic: return "parabolic";
    case EigenKind::central: return "central";
  }
  return "?";
}

// Roots of x^2 - tr(g) x + 1. vectors[i] belongs to values[i]; central
// elements carry no vectors (every vector is an eigenvector), parabolic
// elements carry one.
struct EigenData {
  std::array<Fq2, 2> values{};
  std::vector<ProjVec> vectors;
  EigenKind kind = EigenKind::central;
};

enum class ClassTag : std::uint8_t { generic, central, unipotent_square, unipotent_nonsquare };

struct ConjClassId {
  Fp trace;
  ClassTag tag = ClassTag::generic;

  friend constexpr bool operator==(const ConjClassId&, const ConjClassId&) = default;
  friend constexpr auto operator<=>(const ConjClassId&, const ConjClassId&) = default;
};

class SL2Group {
 public:
  explicit SL2Group(std::uint32_t p) : F_(p), K_(F_) {}

  const PrimeField& field() const { return F_; }
  const QuadField& quad() const { return K_; }
  std::uint32_t p() const { return F_.modulus(); }
  Index order() const {
    Index p = F_.modulus();
    return p * (p * p - 1);
  }

  SL2 identity() const { return {F_.one(), F_.zero(), F_.zero(), F_.one()}; }
  SL2 minus_identity() const { return {F_.neg(F_.one()), F_.zero(), F_.zero(), F_.neg(F_.one())}; }
  bool is_central(const SL2& g) const { return g == identity() || g == minus_identity(); }

  bool is_element(Fp a, Fp b, Fp c, Fp d) const {
    return F_.sub(F_.mul(a, d), F_.mul(b, c)) == F_.one();
  }

  SL2 make(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) const {
    SL2 g{F_.make(a), F_.make(b), F_.make(c), F_.make(d)};
    if (!is_element(g.a, g.b, g.c, g.d)) {
      throw DomainError("matrix [[" + std::to_string(a) + "," + std::to_string(b) + "],[" + std::to_string(c) + "," +
                        std::to_string(d) + "]] does not have determinant 1 mod " + std::to_string(p()));
    }
    return g;
  }

  // [[1, x], [0, 1]]
  SL2 upper(Fp x) const { return {F_.one(), x, F_.zero(), F_.one()}; }
  // [[1, 0], [y, 1]]
  SL2 lower(Fp y) const { return {F_.one(), F_.zero(), y, F_.one()}; }
  // [[r, 0], [0, 1/r]]
  SL2 diag(Fp r) const { return {r, F_.zero(), F_.zero(), F_.inv(r)}; }
  SL2 transpose(const SL2& g) const { return {g.a, g.c, g.b, g.d}; }

  SL2 mul(const SL2& g, const SL2& h) const {
    return {F_.mul_add(g.a, h.a, g.b, h.c), F_.mul_add(g.a, h.b, g.b, h.d), F_.mul_add(g.c, h.a, g.d, h.c),
            F_.mul_add(g.c, h.b, g.d, h.d)};
  }
  SL2 inv(const SL2& g) const { return {g.d, F_.neg(g.b), F_.neg(g.c), g.a}; }
  // h g h^-1
  SL2 conj(const SL2& g, const SL2& h) const { return mul(mul(h, g), inv(h)); }
  Fp trace(const SL2& g) const { return F_.add(g.a, g.d); }
  bool commute(const SL2& g, const SL2& h) const { return mul(g, h) == mul(h, g); }

  // First column (a, c) != (0, 0) is ranked a*p + c - 1; the second column is
  // the particular solution of ad - bc = 1 plus t*(a, c). idx = rank*p + t.
  Index encode(const SL2& g) const {
    const Index p = F_.modulus();
    Index column = static_cast<Index>(g.a.v) * p + g.c.v - 1;
    Fp t = g.a.v != 0 ? F_.div(g.b, g.a) : F_.div(g.d, g.c);
    return column * p + t.v;
  }

  SL2 decode(Index idx) const {
    if (idx >= order()) {
      throw DomainError("index " + std::to_string(idx) + " outside [0, " + std::to_string(order()) + ")");
    }
    const Index p = F_.modulus();
    Index column = idx / p + 1;
    Fp t{static_cast<std::uint32_t>(idx % p)};
    Fp a{static_cast<std::uint32_t>(column / p)};
    Fp c{static_cast<std::uint32_t>(column % p)};
    Fp b0, d0;
    if (a.v != 0) {
      d0 = F_.inv(a);
    } else {
      b0 = F_.neg(F_.inv(c));
    }
    return {a, F_.add(b0, F_.mul(t, a)), c, F_.add(d0, F_.mul(t, c))};
  }

  Mat2q lift(const SL2& g) const { return {K_.embed(g.a), K_.embed(g.b), K_.embed(g.c), K_.embed(g.d)}; }

  Mat2q mul(const Mat2q& x, const Mat2q& y) const {
    return {K_.add(K_.mul(x.a, y.a), K_.mul(x.b, y.c)), K_.add(K_.mul(x.a, y.b), K_.mul(x.b, y.d)),
            K_.add(K_.mul(x.c, y.a), K_.mul(x.d, y.c)), K_.add(K_.mul(x.c, y.b), K_.mul(x.d, y.d))};
  }

  ProjVec normalize(Fq2 x, Fq2 y) const {
    if (!K_.is_zero(x)) return {K_.one(), K_.div(y, x)};
    if (!K_.is_zero(y)) return {K_.zero(), K_.one()};
    throw DomainError("zero vector has no projective class");
  }

  std::pair<Fq2, Fq2> apply(const SL2& g, const ProjVec& v) const {
    return {K_.add(K_.mul(K_.embed(g.a), v.x), K_.mul(K_.embed(g.b), v.y)),
            K_.add(K_.mul(K_.embed(g.c), v.x), K_.mul(K_.embed(g.d), v.y))};
  }

  // g v is parallel to v, tested as det[v, g v] = 0.
  bool has_eigenvector(const SL2& g, const ProjVec& v) const {
    auto [gx, gy] = apply(g, v);
    return K_.sub(K_.mul(v.x, gy), K_.mul(v.y, gx)) == K_.zero();
  }

  EigenData eigen(const SL2& g) const {
    EigenData out;
    Fp t = trace(g);
    Fp disc = F_.sub(F_.mul(t, t), F_.make(4));
    Fq2 half = K_.embed(F_.inv(F_.make(2)));
    if (disc.v == 0) {
      Fq2 lambda = K_.mul(K_.embed(t), half);
      out.values = {lambda, lambda};
      if (is_central(g)) {
        out.kind = EigenKind::central;
        return out;
      }
      out.kind = EigenKind::parabolic;
      Fp l = lambda.x;
      Fp n11 = F_.sub(g.a, l), n12 = g.b, n21 = g.c, n22 = F_.sub(g.d, l);
      // The kernel of a rank-one matrix is orthogonal to any nonzero row.
      if (n11.v != 0 || n12.v != 0) {
        out.vectors.push_back(normalize(K_.embed(F_.neg(n12)), K_.embed(n11)));
      } else {
        out.vectors.push_back(normalize(K_.embed(F_.neg(n22)), K_.embed(n21)));
      }
      return out;
    }
    auto s = K_.sqrt(K_.embed(disc));
    if (!s) throw InvariantError("base-field element without a square root in F_{p^2}");
    out.kind = K_.in_base(*s) ? EigenKind::split : EigenKind::nonsplit;
    out.values = {K_.mul(K_.add(K_.embed(t), *s), half), K_.mul(K_.sub(K_.embed(t), *s), half)};
    for (Fq2 lambda : out.values) {
      if (g.b.v != 0) {
        out.vectors.push_back(normalize(K_.embed(g.b), K_.sub(lambda, K_.embed(g.a))));
      } else if (g.c.v != 0) {
        out.vectors.push_back(normalize(K_.sub(lambda, K_.embed(g.d)), K_.embed(g.c)));
      } else {
        // Diagonal: lambda is a or d.
        out.vectors.push_back(lambda == K_.embed(g.a) ? ProjVec{K_.one(), K_.zero()} : ProjVec{K_.zero(), K_.one()});
      }
    }
    return out;
  }

  // Coordinates of g in the basis (v1, v2): M^-1 g M with M = [v1 v2].
  Mat2q in_basis(const SL2& g, const ProjVec& v1, const ProjVec& v2) const {
    Fq2 det = K_.sub(K_.mul(v1.x, v2.y), K_.mul(v2.x, v1.y));
    if (K_.is_zero(det)) throw DomainError("basis vectors are parallel");
    Fq2 inv_det = K_.inv(det);
    Mat2q m{v1.x, v2.x, v1.y, v2.y};
    Mat2q m_inv{K_.mul(v2.y, inv_det), K_.neg(K_.mul(v2.x, inv_det)), K_.neg(K_.mul(v1.y, inv_det)),
                K_.mul(v1.x, inv_det)};
    return mul(mul(m_inv, lift(g)), m);
  }

  ConjClassId class_id(const SL2& g) const {
    Fp t = trace(g);
    Fp two = F_.make(2);
    if (t != two && t != F_.neg(two)) return {t, ClassTag::generic};
    if (is_central(g)) return {t, ClassTag::central};
    // g = +-I + N with N nilpotent; the class is fixed by the residue class of
    // the upper-right entry of N, or of minus the lower-left one when that is 0.
    Fp key = g.b.v != 0 ? g.b : F_.neg(g.c);
    return {t, F_.legendre(key) == 1 ? ClassTag::unipotent_square : ClassTag::unipotent_nonsquare};
  }

  // C_G(g). For non-central g this is {x I + y g : det = 1}, i.e.
  // x^2 + t x y + y^2 = 1.
  std::vector<SL2> centralizer(const SL2& g) const {
    std::vector<SL2> out;
    if (is_central(g)) {
      out.reserve(order());
      for (Index i = 0; i < order(); ++i) out.push_back(decode(i));
      return out;
    }
    Fp t = trace(g);
    Fp half = F_.inv(F_.make(2));
    Fp tt4 = F_.sub(F_.mul(t, t), F_.make(4));
    for (std::uint32_t yv = 0; yv < p(); ++yv) {
      Fp y{yv};
      // x = (-t y +- sqrt(y^2 (t^2 - 4) + 4)) / 2
      Fp disc = F_.add(F_.mul(F_.mul(y, y), tt4), F_.make(4));
      auto s = F_.sqrt(disc);
      if (!s) continue;
      Fp minus_ty = F_.neg(F_.mul(t, y));
      for (Fp root : {*s, F_.neg(*s)}) {
        Fp x = F_.mul(F_.add(minus_ty, root), half);
        out.push_back({F_.add(x, F_.mul(y, g.a)), F_.mul(y, g.b), F_.mul(y, g.c), F_.add(x, F_.mul(y, g.d))});
        if (s->v == 0) break;
      }
    }
    return out;
  }

  // "a,b;c,d" with decimal (possibly negative) entries.
  SL2 parse(const std::string& text) const {
    std::array<std::int64_t, 4> e{};
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
      const char sep = i == 1 ? ';' : ',';
      std::size_t end = i == 3 ? text.size() : text.find(sep, pos);
      if (end == std::string::npos) throw DomainError("matrix literal must look like a,b;c,d: '" + text + "'");
      std::string field = text.substr(pos, end - pos);
      try {
        std::size_t used = 0;
        e[i] = std::stoll(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw DomainError("bad matrix entry '" + field + "' in '" + text + "'");
      }
      pos = end + 1;
    }
    return make(e[0], e[1], e[2], e[3]);
  }

  std::string format(const SL2& g) const {
    std::ostringstream os;
    os << g.a.v << ',' << g.b.v << ';' << g.c.v << ',' << g.d.v;
    return os.str();
  }

 private:
  PrimeField F_;
  QuadField K_;
};

}  // namespace sl2lab
