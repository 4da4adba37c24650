#pragma once

// Unipotents from large subsets of the upper Borel subgroup, the
// L(y) U(x) L(y') U(x') decomposition, and bounded-length factorization of
// arbitrary elements over very large sets.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "sl2lab/certificate.hpp"
#include "sl2lab/errors.hpp"
#include "sl2lab/exact.hpp"
#include "sl2lab/gset.hpp"
#include "sl2lab/sl2.hpp"
#include "sl2lab/word.hpp"
#include "sl2lab/zpadd.hpp"

namespace sl2lab {

// [[r, x], [0, 1/r]]
struct BorelElem {
  Fp r, x;

  SL2 to_sl2(const SL2Group& G) const {
    if (r.v == 0) throw DomainError("Borel element with r = 0");
    return {r, x, G.field().zero(), G.field().inv(r)};
  }
  static BorelElem from(const SL2& g) {
    if (g.c.v != 0) throw DomainError("matrix is not upper triangular");
    return {g.a, g.b};
  }
};

// Group elements paired with words over a source set that evaluate to them.
class TrackedSet {
 public:
  explicit TrackedSet(const SL2Group& G) : G_(G) {}

  // Every member of A tracked by the one-letter word naming itself.
  static TrackedSet of_letters(const GroupSet& A) {
    TrackedSet t(A.group());
    A.for_each([&](Index i) { t.words_.emplace(i, Word::single(i)); });
    return t;
  }

  const SL2Group& group() const { return G_; }
  std::size_t size() const { return words_.size(); }
  bool contains(Index i) const { return words_.count(i) != 0; }

  void add(Index element, Word w) {
    if (w.evaluate(G_) != G_.decode(element)) throw InvariantError("tracked word does not evaluate to its element");
    words_.insert_or_assign(element, std::move(w));
  }

  const Word& word(Index i) const {
    auto it = words_.find(i);
    if (it == words_.end()) throw DomainError("element " + std::to_string(i) + " is not tracked");
    return it->second;
  }

  std::size_t max_length() const {
    std::size_t n = 0;
    for (const auto& [i, w] : words_) n = std::max(n, w.length());
    return n;
  }

  GroupSet members() const {
    GroupSet s(G_);
    for (const auto& [i, w] : words_) s.insert(i);
    return s;
  }

  // Replaces each letter (a member, possibly inverted) by its tracked word.
  Word expand(const Word& over_members) const {
    Word out;
    for (const Letter& l : over_members.letters()) out.append(l.inverted ? word(l.ref).inverse() : word(l.ref));
    return out;
  }

 private:
  SL2Group G_;
  std::map<Index, Word> words_;
};

struct AttacResult {
  Fp r, t, u;
  std::uint64_t pr_size = 0;      // |P_r(A)|
  std::uint64_t s_size = 0;       // |S|
  std::uint64_t dilate_size = 0;  // |P_r - t^2 P_r|
  std::vector<Word> unipotent;    // unipotent[x] evaluates to U(x); letters name members of A
  Certificate certificate{"attac"};
};

// Replays the unipotent construction: r with the largest fibre P_r, t from
// the dilate lemma so that |P_r - t^2 P_r| > 2p/3, then every x in Z/pZ as a
// sum of two values of T R_a T^-1 R_b^-1 = U(r (t^2 a - b) + (1 - r^2) u t).
inline AttacResult attac_unipotents(const GroupSet& A) {
  const SL2Group& G = A.group();
  const PrimeField& F = G.field();
  const std::uint32_t p = G.p();
  A.for_each([&](Index i) {
    if (G.decode(i).c.v != 0) throw DomainError("attac_unipotents needs A inside the upper-triangular subgroup");
  });
  AttacResult res;
  Certificate& cert = res.certificate;
  cert.set("p", p);
  cert.set("A", A.size());
  if (A.size() < attac_min_size(p)) {
    throw HypothesisError("|A| = " + std::to_string(A.size()) + " does not exceed 2 p^(5/3) + 1 (needs >= " +
                          std::to_string(attac_min_size(p)) + ")");
  }
  cert.check("attac_threshold");

  std::vector<std::vector<std::uint32_t>> fibre(p);
  A.for_each([&](Index i) {
    SL2 g = G.decode(i);
    fibre[g.a.v].push_back(g.b.v);
  });
  std::uint32_t r = 1;
  for (std::uint32_t k = 1; k < p; ++k) {
    if (fibre[k].size() > fibre[r].size()) r = k;
  }
  res.r = Fp{r};
  const std::vector<std::uint32_t>& P = fibre[r];
  for (auto& f : fibre) std::sort(f.begin(), f.end());
  res.pr_size = P.size();
  if (big_pow(res.pr_size, 3) <= 8 * big_pow(p, 2)) throw InvariantError("largest fibre not above 2 p^(2/3)");

  ZpSet S(p), S_dilates(p);
  for (std::uint32_t t = 1; t < p; ++t) {
    if (t == r || fibre[t].empty()) continue;
    S.insert(t);
    S_dilates.insert(F.neg(F.mul(Fp{t}, Fp{t})).v);
  }
  res.s_size = S.size();
  if (big_pow(res.s_size, 3) <= big_pow(p, 2)) throw InvariantError("|S| not above p^(2/3)");

  const ZpSet Pset = ZpSet::of(p, P);
  SorgeResult sorge = sorge_find_xi(Pset, S_dilates);
  std::uint32_t t = 0;
  for (std::uint32_t cand : S.elements()) {
    if (F.neg(F.mul(Fp{cand}, Fp{cand})).v == sorge.xi) {
      t = cand;
      break;
    }
  }
  res.t = Fp{t};
  res.u = Fp{fibre[t].front()};
  res.dilate_size = sorge.sumset_size;
  cert.set("P_r", res.pr_size);
  cert.set("S", res.s_size);
  cert.set("dilate", res.dilate_size);
  cert.check("attac_dilate");
  if (!cert.passed()) throw InvariantError("dilate below 2p/3: " + cert.failures());

  // value -> lexicographically least (a, b) realizing it
  const Fp t2 = F.mul(res.t, res.t);
  const Fp shift = F.mul(F.sub(F.one(), F.mul(res.r, res.r)), F.mul(res.u, res.t));
  std::vector<std::optional<std::pair<std::uint32_t, std::uint32_t>>> source(p);
  for (std::uint32_t a : P) {
    for (std::uint32_t b : P) {
      Fp v = F.add(F.mul(res.r, F.sub(F.mul(t2, Fp{a}), Fp{b})), shift);
      if (!source[v.v]) source[v.v] = std::make_pair(a, b);
    }
  }
  std::vector<std::uint32_t> values;
  for (std::uint32_t v = 0; v < p; ++v) {
    if (source[v]) values.push_back(v);
  }

  const Index T = G.encode(BorelElem{res.t, res.u}.to_sl2(G));
  auto piece = [&](std::uint32_t v) {
    auto [a, b] = *source[v];
    Index ra = G.encode(BorelElem{res.r, Fp{a}}.to_sl2(G));
    Index rb = G.encode(BorelElem{res.r, Fp{b}}.to_sl2(G));
    return Word({{T, false}, {ra, false}, {T, true}, {rb, true}});
  };

  res.unipotent.resize(p);
  for (std::uint32_t y = 1; y < p; ++y) {
    std::optional<std::uint32_t> first;
    for (std::uint32_t s1 : values) {
      std::uint32_t s2 = F.sub(Fp{y}, Fp{s1}).v;
      if (source[s2]) {
        first = s1;
        break;
      }
    }
    if (!first) throw InvariantError("target " + std::to_string(y) + " is not a sum of two constructed values");
    res.unipotent[y] = piece(*first) + piece(F.sub(Fp{y}, Fp{*first}).v);
  }
  for (std::uint32_t y = 0; y < p; ++y) {
    if (res.unipotent[y].length() > 8) throw InvariantError("unipotent word longer than 8");
    if (res.unipotent[y].evaluate(G) != G.upper(Fp{y})) {
      throw InvariantError("unipotent word for x = " + std::to_string(y) + " evaluates incorrectly");
    }
  }
  cert.set("r", r);
  cert.set("t", t);
  cert.set("u", res.u.v);
  cert.witnesses = {T};
  return res;
}

struct LUFactors {
  Fp y, x, y2, x2;  // g = L(y) U(x) L(y2) U(x2)
};

// Scans y2 = 0, 1, ...; for each, g U(-x2) L(-y2) must equal
// L(y) U(x) = [[1, x], [y, 1 + x y]], which fixes x2 through the (1,1) entry.
inline LUFactors lu_decompose(const SL2Group& G, const SL2& g) {
  const PrimeField& F = G.field();
  for (std::uint32_t yv = 0; yv < G.p(); ++yv) {
    Fp y2{yv};
    Fp ay = F.mul(g.a, y2);
    Fp x2;
    if (ay.v != 0) {
      x2 = F.div(F.add(F.sub(F.one(), g.a), F.mul(y2, g.b)), ay);
    } else if (F.sub(g.a, F.mul(y2, g.b)) == F.one()) {
      x2 = F.zero();
    } else {
      continue;
    }
    SL2 m = G.mul(G.mul(g, G.upper(F.neg(x2))), G.lower(F.neg(y2)));
    if (m.a != F.one()) throw InvariantError("LU scan produced a non-unit corner");
    LUFactors out{m.c, m.b, y2, x2};
    SL2 back = G.mul(G.mul(G.lower(out.y), G.upper(out.x)), G.mul(G.lower(out.y2), G.upper(out.x2)));
    if (back != g) throw InvariantError("LU factors do not multiply back");
    return out;
  }
  throw InvariantError("no LU decomposition found for " + G.format(g));
}

struct FactorizeOptions {
  bool force = false;
};

// Built once per A: the largest projective-row buckets give upper and lower
// triangular elements of A A^-1 (each a two-letter word), the unipotent
// tables come from attac_unipotents (the lower one through transposition),
// and every target is L(y) U(x) L(y') U(x').
class Factorizer {
 public:
  explicit Factorizer(const GroupSet& A, FactorizeOptions opts = {}) : G_(A.group()), A_(A) {
    const std::uint32_t p = G_.p();
    certificate.set("p", p);
    certificate.set("A", A.size());
    if (A.size() < factorize_min_size(p)) {
      if (!opts.force) {
        throw HypothesisError("|A| = " + std::to_string(A.size()) + " does not exceed 6 p^(8/3) (needs >= " +
                              std::to_string(factorize_min_size(p)) + "); pass force to try anyway");
      }
    } else {
      certificate.check("factorize_threshold");
    }

    TrackedSet upper_c = bucket_quotients(/*by_lower_row=*/true);
    TrackedSet lower_c = bucket_quotients(/*by_lower_row=*/false);
    certificate.set("upper_bucket", upper_c.size());
    certificate.set("lower_bucket", lower_c.size());
    const std::uint64_t need = attac_min_size(p);
    if (upper_c.size() < need || lower_c.size() < need) {
      throw HypothesisError("bucket extraction shortfall: buckets of " + std::to_string(upper_c.size()) + " and " +
                            std::to_string(lower_c.size()) + " elements, need " + std::to_string(need));
    }

    upper_ = attac_unipotents(upper_c.members());
    for (const Word& w : upper_.unipotent) u_words_.push_back(upper_c.expand(w));

    GroupSet transposed(G_);
    lower_c.members().for_each([&](Index i) { transposed.insert(G_.transpose(G_.decode(i))); });
    lower_ = attac_unipotents(transposed);
    for (const Word& w : lower_.unipotent) {
      // (x1 ... xn)^T = xn^T ... x1^T, and (x^-1)^T = (x^T)^-1.
      Word back;
      for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
        back.push_back({G_.encode(G_.transpose(G_.decode(it->ref))), it->inverted});
      }
      l_words_.push_back(lower_c.expand(back));
    }
    for (std::uint32_t v = 0; v < p; ++v) {
      check(u_words_[v], G_.upper(Fp{v}), 16, "upper unipotent");
      check(l_words_[v], G_.lower(Fp{v}), 16, "lower unipotent");
    }
  }

  const SL2Group& group() const { return G_; }
  const AttacResult& upper() const { return upper_; }
  const AttacResult& lower() const { return lower_; }
  const Word& upper_word(std::uint32_t x) const { return u_words_.at(x); }
  const Word& lower_word(std::uint32_t y) const { return l_words_.at(y); }

  // A word over A u A^-1 of length at most 64, verified before it is returned.
  Word factorize(const SL2& target) const {
    Index idx = G_.encode(target);
    if (A_.contains(idx)) return Word::single(idx);
    LUFactors f = lu_decompose(G_, target);
    Word w = l_words_[f.y.v] + u_words_[f.x.v] + l_words_[f.y2.v] + u_words_[f.x2.v];
    check(w, target, 64, "factorization");
    return w;
  }

  Certificate certificate{"factorize"};

 private:
  void check(const Word& w, const SL2& expect, std::size_t max_len, const char* what) const {
    if (w.length() > max_len) throw InvariantError(std::string(what) + " word longer than " + std::to_string(max_len));
    if (w.evaluate(G_) != expect) throw InvariantError(std::string(what) + " word evaluates incorrectly");
  }

  // Projective class of the lower row (c : d) or of the upper row (a : b),
  // numbered 0..p with p for (0 : 1).
  std::uint32_t row_class(const SL2& g, bool lower_row) const {
    const PrimeField& F = G_.field();
    Fp first = lower_row ? g.c : g.a;
    Fp second = lower_row ? g.d : g.b;
    return first.v != 0 ? F.div(second, first).v : G_.p();
  }

  // Elements a b^-1 for a in the largest bucket and b its lowest-index
  // member; equal lower rows make these upper triangular, equal upper rows
  // lower triangular.
  TrackedSet bucket_quotients(bool by_lower_row) const {
    std::vector<std::uint64_t> counts(G_.p() + 1, 0);
    A_.for_each([&](Index i) { ++counts[row_class(G_.decode(i), by_lower_row)]; });
    const std::uint32_t best =
        static_cast<std::uint32_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
    TrackedSet out(G_);
    std::optional<Index> base;
    SL2 base_inv{};
    A_.for_each([&](Index i) {
      SL2 a = G_.decode(i);
      if (row_class(a, by_lower_row) != best) return;
      if (!base) {
        base = i;
        base_inv = G_.inv(a);
      }
      out.add(G_.encode(G_.mul(a, base_inv)), Word({{i, false}, {*base, true}}));
    });
    return out;
  }

  SL2Group G_;
  GroupSet A_;
  AttacResult upper_, lower_;
  std::vector<Word> u_words_, l_words_;
};

inline Word factorize(const GroupSet& A, const SL2& target, FactorizeOptions opts = {}) {
  return Factorizer(A, opts).factorize(target);
}

}  // namespace sl2lab
