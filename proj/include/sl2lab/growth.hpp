#pragma once

// The trace-amplification engine for subsets of SL_2(F_p). Each step returns
// its witnesses together with a certificate of the explicit inequality it
// guarantees: centralizer meets (tron), non-unipotent elements of A_2 (crud),
// simultaneously diagonalizable subsets (kow), escape from subspaces
// (carbo/rats/kot), the V g V g^-1 V expansion (chich), trace growth
// (funn/unda), size from traces (andu) and the full growth pipeline.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
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

inline ZpSet trace_set(const GroupSet& A) {
  ZpSet out(A.p());
  const SL2Group& G = A.group();
  A.for_each([&](Index i) { out.insert(G.trace(G.decode(i)).v); });
  return out;
}

// Number of conjugacy classes of G that meet A.
inline std::uint64_t class_count(const GroupSet& A) {
  std::set<ConjClassId> ids;
  const SL2Group& G = A.group();
  A.for_each([&](Index i) { ids.insert(G.class_id(G.decode(i))); });
  return ids.size();
}

inline bool is_unipotent_trace(const SL2Group& G, Fp t) {
  const PrimeField& F = G.field();
  return t == F.make(2) || t == F.make(-2);
}

namespace detail {

inline std::uint64_t centralizer_meet_size(const SL2Group& G, const SL2& g, const GroupSet& D) {
  if (G.is_central(g)) return D.size();
  std::uint64_t n = 0;
  for (const SL2& c : G.centralizer(g)) n += D.contains(c) ? 1 : 0;
  return n;
}

inline void require_generating(const GroupSet& A, const char* what) {
  GenerationResult gen = generates(A);
  if (gen.decision == Decision::undecided) {
    throw CapExceeded(std::string(what) + ": generation undecided at this scale");
  }
  if (!gen.generates()) {
    throw HypothesisError(std::string(what) + ": A generates a subgroup of order " + std::to_string(gen.closure_size) +
                          ", not all of SL2(F_" + std::to_string(A.p()) + ")");
  }
}

}  // namespace detail

struct TronResult {
  SL2 g;
  Index g_index = 0;
  GroupSet meet;  // C_G(g) n A^-1 A
  Certificate certificate{"tron"};
};

// g in A maximizing |C_G(g) n A^-1 A| (ties to the smallest index), with
// |C_G(g) n A^-1 A| |A A A^-1| >= |Lambda_A| |A|.
inline TronResult tron_find(const GroupSet& A) {
  if (A.empty()) throw DomainError("tron_find needs a non-empty set");
  const SL2Group& G = A.group();
  const GroupSet D = product_set(A.inverse(), A);
  std::optional<std::pair<std::uint64_t, Index>> best;
  A.for_each([&](Index i) {
    std::uint64_t n = detail::centralizer_meet_size(G, G.decode(i), D);
    if (!best || n > best->first) best = {n, i};
  });
  const SL2 g = G.decode(best->second);
  GroupSet meet(G);
  if (G.is_central(g)) {
    meet = D;
  } else {
    for (const SL2& c : G.centralizer(g)) {
      if (D.contains(c)) meet.insert(c);
    }
  }
  TronResult res{g, best->second, std::move(meet)};
  Certificate& cert = res.certificate;
  cert.set("A", A.size());
  cert.set("meet", res.meet.size());
  cert.set("classes", class_count(A));
  cert.set("AAAinv", product_set(product_set(A, A), A.inverse()).size());
  cert.witnesses = {res.g_index};
  cert.check("tron");
  return res;
}

struct CrudResult {
  GroupSet B;  // elements of A_2 with trace other than +-2
  Certificate certificate{"crud"};
};

inline CrudResult crud_filter(const Balls& balls, bool assume_generating = false) {
  const GroupSet& A = balls.base();
  if (!assume_generating) detail::require_generating(A, "crud_filter");
  const SL2Group& G = A.group();
  GroupSet B(G);
  balls(2).for_each([&](Index i) {
    if (!is_unipotent_trace(G, G.trace(G.decode(i)))) B.insert(i);
  });
  CrudResult res{std::move(B)};
  res.certificate.set("A", A.size());
  res.certificate.set("A2", balls(2).size());
  res.certificate.set("B", res.B.size());
  res.certificate.vacuous = A.size() <= 4;
  res.certificate.check("crud");
  return res;
}

inline CrudResult crud_filter(const GroupSet& A, bool assume_generating = false) {
  return crud_filter(Balls(A), assume_generating);
}

struct KowResult {
  GroupSet V;  // simultaneously diagonalizable, inside A_4
  SL2 g;       // the tron element of B; V lies in its centralizer
  ProjVec v1, v2;
  Certificate certificate{"kow"};
};

inline KowResult kow_diag(const Balls& balls, bool assume_generating = false) {
  const GroupSet& A = balls.base();
  const SL2Group& G = A.group();
  const std::uint64_t T = trace_set(A).size();
  if (T < 2) throw HypothesisError("kow_diag needs |Tr(A)| >= 2, got " + std::to_string(T));
  if (A.size() < 4) throw HypothesisError("kow_diag needs |A| >= 4, got " + std::to_string(A.size()));
  CrudResult crud = crud_filter(balls, assume_generating);
  const Fq2 one = G.quad().one();
  const Fq2 zero = G.quad().zero();
  KowResult res{GroupSet(G), G.identity(), ProjVec{one, zero}, ProjVec{zero, one}};
  if (!crud.B.empty()) {
    TronResult tron = tron_find(crud.B);
    res.g = tron.g;
    res.V = std::move(tron.meet);
    std::optional<SL2> basis_source;
    res.V.for_each([&](Index i) {
      if (!basis_source && !G.is_central(G.decode(i))) basis_source = G.decode(i);
    });
    EigenData eig = G.eigen(basis_source.value_or(res.g));
    res.v1 = eig.vectors.at(0);
    res.v2 = eig.vectors.at(1);
  }
  const GroupSet& A4 = balls(4);
  res.V.for_each([&](Index i) {
    SL2 h = G.decode(i);
    if (!A4.contains(i)) throw InvariantError("kow: element of V outside A_4");
    if (!G.has_eigenvector(h, res.v1) || !G.has_eigenvector(h, res.v2)) {
      throw InvariantError("kow: element of V not diagonal in the common basis");
    }
  });
  Certificate& cert = res.certificate;
  cert.set("A", A.size());
  cert.set("T", T);
  cert.set("B", crud.B.size());
  cert.set("V", res.V.size());
  cert.set("A6", balls(6).size());
  cert.vacuous = T <= 2 || A.size() <= 4;
  cert.witnesses = {G.encode(res.g)};
  cert.check("kow");
  return res;
}

inline KowResult kow_diag(const GroupSet& A, bool assume_generating = false) {
  return kow_diag(Balls(A), assume_generating);
}

// A finite union of proper subspaces of M_2(F_{p^2}); each subspace is cut
// out by linear functionals on (h11, h12, h21, h22).
class SubspaceList {
 public:
  using Functional = std::array<Fq2, 4>;
  struct Subspace {
    std::vector<Functional> annihilator;
    std::string label;
  };

  explicit SubspaceList(const QuadField& K) : K_(K) {}

  void add(Subspace s) {
    bool proper = false;
    for (const Functional& f : s.annihilator) {
      for (Fq2 c : f) proper = proper || !K_.is_zero(c);
    }
    if (!proper) throw DomainError("subspace '" + s.label + "' is all of M_2");
    subspaces_.push_back(std::move(s));
  }

  std::size_t size() const { return subspaces_.size(); }
  bool empty() const { return subspaces_.empty(); }
  const std::vector<Subspace>& subspaces() const { return subspaces_; }

  bool contains(const Mat2q& h) const {
    for (const Subspace& s : subspaces_) {
      bool inside = true;
      for (const Functional& f : s.annihilator) {
        Fq2 v = K_.add(K_.add(K_.mul(f[0], h.a), K_.mul(f[1], h.b)), K_.add(K_.mul(f[2], h.c), K_.mul(f[3], h.d)));
        if (!K_.is_zero(v)) {
          inside = false;
          break;
        }
      }
      if (inside) return true;
    }
    return false;
  }

  // {h : h v is parallel to u}, i.e. u_perp^T h v = 0 with u_perp = (-u_y, u_x).
  Functional parallel_functional(const ProjVec& v, const ProjVec& u) const {
    Fq2 p1 = K_.neg(u.y), p2 = u.x;
    return {K_.mul(p1, v.x), K_.mul(p1, v.y), K_.mul(p2, v.x), K_.mul(p2, v.y)};
  }

  // H'_{v1} u H'_{v2}: matrices having v1 (or v2) as an eigenvector.
  static SubspaceList eigen_loci(const QuadField& K, const ProjVec& v1, const ProjVec& v2) {
    SubspaceList W(K);
    W.add({{W.parallel_functional(v1, v1)}, "H'(v1)"});
    W.add({{W.parallel_functional(v2, v2)}, "H'(v2)"});
    return W;
  }

  // {h : h v_i parallel to v_j} for i, j in {1, 2}.
  static SubspaceList cross_loci(const QuadField& K, const ProjVec& v1, const ProjVec& v2) {
    SubspaceList W(K);
    const ProjVec* vs[2] = {&v1, &v2};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        W.add({{W.parallel_functional(*vs[i], *vs[j])},
               "h v" + std::to_string(i + 1) + " || v" + std::to_string(j + 1)});
      }
    }
    return W;
  }

 private:
  QuadField K_;
  std::vector<Subspace> subspaces_;
};

enum class EscapeMode { generic, rats, kot };

struct EscapeOptions {
  int depth_cap = 20;
  int min_depth = 1;
};

struct EscapeResult {
  int depth = 0;                  // realized m
  std::vector<Index> witnesses;   // ascending, or the single first witness in rats mode
  std::vector<Word> words;        // rats mode: the word of the witness over A u A^-1
  std::uint64_t ball_size = 0;    // |A_m|
  std::uint64_t base_size = 0;    // |A|
  double fraction() const { return base_size ? static_cast<double>(witnesses.size()) / base_size : 0.0; }
};

// Iterative deepening over m >= min_depth for g in A_m with g x outside W.
// rats mode stops at the first witness in breadth-first order (depth, then
// the letter order of WordBall); the other modes return every escaping
// element of A_m at the smallest such m.
inline EscapeResult escape(const GroupSet& A, const Mat2q& x, const SubspaceList& W, EscapeMode mode,
                           const EscapeOptions& opts = {}) {
  if (opts.depth_cap < 1 || opts.min_depth < 1) throw DomainError("escape depths must be positive");
  const SL2Group& G = A.group();
  WordBall wb(A);
  EscapeResult res;
  res.base_size = A.size();
  std::size_t scanned = 0;
  for (int m = 1; m <= opts.depth_cap; ++m) {
    wb.expand_to(m);
    const std::size_t end = wb.ball_end(m);
    if (m >= opts.min_depth) {
      std::vector<std::size_t> hits;
      const std::size_t from = mode == EscapeMode::rats ? scanned : 0;
      for (std::size_t pos = from; pos < end; ++pos) {
        if (!W.contains(G.mul(G.lift(G.decode(wb.at(pos))), x))) {
          hits.push_back(pos);
          if (mode == EscapeMode::rats) break;
        }
      }
      scanned = end;
      if (!hits.empty()) {
        res.depth = m;
        res.ball_size = end;
        for (std::size_t pos : hits) res.witnesses.push_back(wb.at(pos));
        if (mode == EscapeMode::rats) {
          res.words.push_back(wb.word(hits.front()));
        } else {
          std::sort(res.witnesses.begin(), res.witnesses.end());
        }
        return res;
      }
    }
    if (wb.exhausted() && m >= opts.min_depth) {
      throw HypothesisError("the orbit under <A> lies inside W (closure of size " + std::to_string(wb.size()) +
                            " exhausted at depth " + std::to_string(wb.depth()) + ")");
    }
  }
  throw CapExceeded("no escape within depth cap " + std::to_string(opts.depth_cap) + ": |A_" +
                    std::to_string(opts.depth_cap) + "| = " + std::to_string(wb.ball_end(opts.depth_cap)) + ", " +
                    std::to_string(W.size()) + " subspaces");
}

inline Mat2q identity_matrix(const SL2Group& G) { return G.lift(G.identity()); }

// A witness g with g v_i not parallel to v_j for all i, j; re-verified
// through the coordinates of g in the basis.
inline EscapeResult escape_rats(const GroupSet& A, const ProjVec& v1, const ProjVec& v2,
                                const EscapeOptions& opts = {}) {
  const SL2Group& G = A.group();
  if (A.p() <= 3) throw HypothesisError("escape from the cross loci needs p > 3");
  EscapeResult res = escape(A, identity_matrix(G), SubspaceList::cross_loci(G.quad(), v1, v2), EscapeMode::rats, opts);
  const QuadField& K = G.quad();
  Mat2q m = G.in_basis(G.decode(res.witnesses.front()), v1, v2);
  if (K.is_zero(m.a) || K.is_zero(m.b) || K.is_zero(m.c) || K.is_zero(m.d)) {
    throw InvariantError("rats witness has a zero entry in the basis");
  }
  if (res.words.front().evaluate(G) != G.decode(res.witnesses.front())) {
    throw InvariantError("rats witness word does not evaluate to the witness");
  }
  return res;
}

// Every element of A_m with neither v1 nor v2 as an eigenvector.
inline EscapeResult escape_kot(const GroupSet& A, const ProjVec& v1, const ProjVec& v2,
                               const EscapeOptions& opts = {}) {
  const SL2Group& G = A.group();
  EscapeResult res = escape(A, identity_matrix(G), SubspaceList::eigen_loci(G.quad(), v1, v2), EscapeMode::kot, opts);
  for (Index i : res.witnesses) {
    SL2 g = G.decode(i);
    if (G.has_eigenvector(g, v1) || G.has_eigenvector(g, v2)) {
      throw InvariantError("kot witness keeps a basis vector as eigenvector");
    }
  }
  return res;
}

// g diag(r, 1/r) g^-1 written out entrywise.
inline SL2 mandru(const SL2Group& G, const SL2& g, Fp r) {
  const PrimeField& F = G.field();
  Fp ri = F.inv(r);
  Fp ad = F.mul(g.a, g.d), bc = F.mul(g.b, g.c);
  return {F.sub(F.mul(r, ad), F.mul(ri, bc)), F.mul(F.sub(ri, r), F.mul(g.a, g.b)),
          F.mul(F.sub(r, ri), F.mul(g.c, g.d)), F.sub(F.mul(ri, ad), F.mul(r, bc))};
}

struct ChichResult {
  GroupSet P;  // V g V g^-1 V
  Certificate certificate{"chich"};
};

inline ChichResult chich_expand(const GroupSet& V, const SL2& g, const ProjVec& v1, const ProjVec& v2) {
  const SL2Group& G = V.group();
  const QuadField& K = G.quad();
  V.for_each([&](Index i) {
    SL2 h = G.decode(i);
    if (!G.has_eigenvector(h, v1) || !G.has_eigenvector(h, v2)) {
      throw HypothesisError("chich_expand: V is not diagonal in the given basis");
    }
  });
  Mat2q gm = G.in_basis(g, v1, v2);
  if (K.is_zero(gm.a) || K.is_zero(gm.b) || K.is_zero(gm.c) || K.is_zero(gm.d)) {
    throw HypothesisError("chich_expand: g maps a basis vector onto a multiple of a basis vector");
  }
  const SL2 g_inv = G.inv(g);
  GroupSet conj(G);
  V.for_each([&](Index i) { conj.insert(G.mul(G.mul(g, G.decode(i)), g_inv)); });
  std::unordered_set<std::uint64_t> products;
  conj.for_each([&](Index i) {
    Mat2q h = G.in_basis(G.decode(i), v1, v2);
    Fq2 off = K.mul(h.b, h.c);
    if (!K.is_zero(off) && !K.is_zero(h.a) && !K.is_zero(h.d)) products.insert(K.pack(off));
  });
  ChichResult res{product_set(product_set(V, conj), V)};
  Certificate& cert = res.certificate;
  cert.set("V", V.size());
  cert.set("P", res.P.size());
  cert.set("products", products.size());
  cert.vacuous = V.size() <= 20;
  cert.witnesses = {G.encode(g)};
  cert.check("chich");
  cert.check("chich_products");
  return res;
}

struct TraceGrowthResult {
  ZpSet traces{2};  // Tr(A_{2 k0})
  int k0 = 0;
  int k_used = 0;   // 2 k0
  SL2 h;
  ProjVec v1, v2;
  std::uint64_t x_size = 0;
  double exponent = 0.0;  // log |Tr(A_k)| / log |A|
  Certificate certificate{"unda"};
};

namespace detail {

// An element of A_2 with trace other than +-2, following the case split of
// the trace-growth argument.
inline SL2 non_unipotent_seed(const GroupSet& A) {
  const SL2Group& G = A.group();
  std::optional<SL2> found;
  A.for_each([&](Index i) {
    if (!found && !is_unipotent_trace(G, G.trace(G.decode(i)))) found = G.decode(i);
  });
  if (found) return *found;
  std::optional<SL2> g1;
  A.for_each([&](Index i) {
    if (!g1 && !G.is_central(G.decode(i))) g1 = G.decode(i);
  });
  if (!g1) throw HypothesisError("every element of A is central");
  const ProjVec fixed = G.eigen(*g1).vectors.at(0);
  std::optional<SL2> g2;
  A.for_each([&](Index i) {
    if (!g2 && !G.has_eigenvector(G.decode(i), fixed)) g2 = G.decode(i);
  });
  if (!g2) throw HypothesisError("A lies in a Borel subgroup");
  SL2 h = G.mul(*g1, *g2);
  if (is_unipotent_trace(G, G.trace(h))) h = G.mul(G.inv(*g1), *g2);
  if (is_unipotent_trace(G, G.trace(h))) throw InvariantError("both g1 g2 and g1^-1 g2 have trace +-2");
  return h;
}

}  // namespace detail

inline TraceGrowthResult trace_growth(const Balls& balls, const EscapeOptions& opts = {},
                                      bool assume_generating = false) {
  const GroupSet& A = balls.base();
  const SL2Group& G = A.group();
  const QuadField& K = G.quad();
  if (!assume_generating) detail::require_generating(A, "trace_growth");
  TraceGrowthResult res;
  res.h = detail::non_unipotent_seed(A);
  EigenData eig = G.eigen(res.h);
  res.v1 = eig.vectors.at(0);
  res.v2 = eig.vectors.at(1);

  EscapeOptions kot_opts = opts;
  kot_opts.min_depth = std::max(2, opts.min_depth);
  EscapeResult kot = escape_kot(A, res.v1, res.v2, kot_opts);
  res.k0 = kot.depth;
  res.k_used = 2 * res.k0;
  const GroupSet X = GroupSet::from_indices(G, kot.witnesses);
  res.x_size = X.size();

  // Diagonal pairs (g11, g22) in the eigenbasis of h, grouped by trace.
  std::set<std::pair<std::uint64_t, std::uint64_t>> diag;
  std::map<std::uint32_t, std::uint64_t> per_trace;
  X.for_each([&](Index i) {
    SL2 g = G.decode(i);
    Mat2q m = G.in_basis(g, res.v1, res.v2);
    if (K.is_zero(m.b) || K.is_zero(m.c)) throw InvariantError("element of X with a zero off-diagonal entry");
    if (diag.insert({K.pack(m.a), K.pack(m.d)}).second) ++per_trace[G.trace(g).v];
  });
  std::uint64_t dt = 0;
  for (const auto& [t, n] : per_trace) dt = std::max(dt, n);

  res.traces = trace_set(balls(res.k_used));
  Certificate& cert = res.certificate;
  cert.set("A", A.size());
  cert.set("X", X.size());
  cert.set("D", diag.size());
  cert.set("Dt", dt);
  cert.set("trX", trace_set(X).size());
  cert.set("trXXinv", trace_set(product_set(X, X.inverse())).size());
  cert.set("trAk0p2", trace_set(balls(res.k0 + 2)).size());
  cert.set("trA2k0", res.traces.size());
  cert.set("k0", res.k0);
  cert.witnesses = {G.encode(res.h)};
  cert.check("funn");
  cert.check("unda_pigeonhole");
  cert.check("unda_hx");
  cert.check("unda_chain");
  res.exponent = A.size() > 1 ? std::log(static_cast<double>(res.traces.size())) / std::log(static_cast<double>(A.size())) : 0.0;
  cert.measured["trace_exponent"] = res.exponent;
  cert.measured["kot_fraction"] = kot.fraction();
  return res;
}

struct AnduResult {
  KowResult kow;
  EscapeResult rats;
  ChichResult chich;
  int k = 0;  // P lies in A_k
  Certificate certificate{"andu"};
};

inline AnduResult size_from_traces(const Balls& balls, const EscapeOptions& opts = {}, bool assume_generating = false) {
  const GroupSet& A = balls.base();
  const SL2Group& G = A.group();
  if (G.p() <= 3) throw HypothesisError("size_from_traces needs p > 3");
  KowResult kow = kow_diag(balls, assume_generating);
  EscapeResult rats = escape_rats(A, kow.v1, kow.v2, opts);
  const SL2 g = G.decode(rats.witnesses.front());
  ChichResult chich = chich_expand(kow.V, g, kow.v1, kow.v2);
  const int k = 12 + 2 * rats.depth;
  const GroupSet& Ak = balls(k);
  std::uint64_t outside = 0;
  chich.P.for_each([&](Index i) { outside += Ak.contains(i) ? 0 : 1; });

  AnduResult res{std::move(kow), std::move(rats), std::move(chich), k};
  Certificate& cert = res.certificate;
  cert.set("A", A.size());
  cert.set("T", trace_set(A).size());
  cert.set("A6", balls(6).size());
  cert.set("P", res.chich.P.size());
  cert.set("P_outside", outside);
  cert.set("k", k);
  cert.set("m", res.rats.depth);
  const BigInt n = (cert.get("T") - 2) * (cert.get("A") - 4);
  cert.vacuous = n <= 20 * 4 * cert.get("A6");
  cert.witnesses = {res.rats.witnesses.front()};
  cert.check("andu");
  cert.check("andu_containment");
  return res;
}

struct GrowthOptions {
  EscapeOptions escape;
  bool check_generation = true;
};

struct GrowthReport {
  std::vector<Certificate> stages;
  bool early_exit = false;  // |A_{6K}| >= |A|^(7/6)
  int k_used = 0;
  std::uint64_t size = 0;
  std::uint64_t triple_size = 0;  // |A A A|
  bool saturated = false;         // A A A is the whole group
  double tripling_exponent = 0.0;

  bool passed() const {
    for (const Certificate& c : stages) {
      if (c.asserted && !c.passed()) return false;
    }
    return true;
  }
  const Certificate* stage(const std::string& name) const {
    for (const Certificate& c : stages) {
      if (c.stage == name) return &c;
    }
    return nullptr;
  }
};

// Runs the whole chain on A: trace growth, the |A_{6K}| < |A|^(7/6) branch
// (with the power-chain certificate when it fails), kow/rats/chich/andu on
// A_K, and the corz trace identity over F_{p^2}. Later stages keep running
// after the early exit so that every certificate is reported.
inline GrowthReport growth_certificate(const GroupSet& A, double delta, const GrowthOptions& opts = {}) {
  const SL2Group& G = A.group();
  if (A.empty()) throw HypothesisError("growth_certificate needs a non-empty set");
  if (opts.check_generation) detail::require_generating(A, "growth_certificate");
  if (std::log(static_cast<double>(A.size())) >= (3.0 - delta) * std::log(static_cast<double>(G.p()))) {
    throw HypothesisError("|A| = " + std::to_string(A.size()) + " is not below p^(3 - delta)");
  }
  GrowthReport rep;
  rep.size = A.size();
  Balls balls(A);

  TraceGrowthResult unda = trace_growth(balls, opts.escape, true);
  rep.k_used = unda.k_used;
  rep.stages.push_back(unda.certificate);
  const int K = unda.k_used;

  const GroupSet AA = product_set(A, A);
  const GroupSet AAA = product_set(AA, A);
  rep.triple_size = AAA.size();
  rep.saturated = AAA.full();
  rep.tripling_exponent = A.size() > 1 ? std::log(static_cast<double>(AAA.size()) / A.size()) / std::log(static_cast<double>(A.size())) : 0.0;

  Certificate furcht("furcht");
  furcht.set("A", A.size());
  furcht.set("A_3", balls(3).size());
  for (int n : {4, 5, 6, 6 * K}) furcht.set("A_" + std::to_string(n), balls(n).size());
  furcht.set("AAA", AAA.size());
  furcht.set("AAAinv", product_set(AA, A.inverse()).size());
  furcht.set("A6K", balls(6 * K).size());
  rep.early_exit = big_pow(furcht.get("A6K"), 6) >= big_pow(furcht.get("A"), 7);
  for (int n : {4, 5, 6}) furcht.check("furcht_" + std::to_string(n));
  if (6 * K > 6) furcht.check("furcht_" + std::to_string(6 * K));
  furcht.check("kanad");
  furcht.measured["tripling_exponent"] = rep.tripling_exponent;
  furcht.note = rep.early_exit ? "|A_6K| >= |A|^(7/6): growth follows from the power chain" : "|A_6K| < |A|^(7/6)";
  rep.stages.push_back(furcht);

  Balls scaled = balls.scaled(K);
  AnduResult andu = size_from_traces(scaled, opts.escape, true);
  rep.stages.push_back(andu.kow.certificate);
  Certificate rats("rats", false);
  rats.set("m", andu.rats.depth);
  rats.set("ball", andu.rats.ball_size);
  rats.witnesses = andu.rats.witnesses;
  rep.stages.push_back(rats);
  rep.stages.push_back(andu.chich.certificate);
  rep.stages.push_back(andu.certificate);

  // Trace identity over F_{p^2}: tr(diag(x) g diag(y) g^-1) =
  // a1 (x y + 1/(x y)) + a2 (y/x + x/y) with a1 = a d, a2 = -b c in the basis.
  const QuadField& Kq = G.quad();
  const SL2 g = G.decode(andu.rats.witnesses.front());
  const Mat2q gm = G.in_basis(g, andu.kow.v1, andu.kow.v2);
  const Fq2 a1 = Kq.mul(gm.a, gm.d);
  const Fq2 a2 = Kq.neg(Kq.mul(gm.b, gm.c));
  std::vector<std::pair<SL2, Fq2>> eigs;
  std::unordered_set<std::uint64_t> distinct;
  andu.kow.V.for_each([&](Index i) {
    SL2 v = G.decode(i);
    Fq2 x = G.in_basis(v, andu.kow.v1, andu.kow.v2).a;
    eigs.push_back({v, x});
    distinct.insert(Kq.pack(x));
  });
  const std::size_t probe = std::min<std::size_t>(eigs.size(), 48);
  for (std::size_t i = 0; i < probe; ++i) {
    for (std::size_t j = 0; j < probe; ++j) {
      const auto& [vx, x] = eigs[i];
      const auto& [vy, y] = eigs[j];
      Fq2 lhs = Kq.embed(G.trace(G.mul(G.mul(vx, g), G.mul(vy, G.inv(g)))));
      Fq2 xy = Kq.mul(x, y);
      Fq2 y_over_x = Kq.div(y, x);
      Fq2 rhs = Kq.add(Kq.mul(a1, Kq.add(xy, Kq.inv(xy))), Kq.mul(a2, Kq.add(y_over_x, Kq.inv(y_over_x))));
      if (lhs != rhs) throw InvariantError("trace identity over F_{p^2} failed");
    }
  }
  Certificate corz("corz", false);
  corz.set("V_eigenvalues", distinct.size());
  corz.set("pairs_checked", probe * probe);
  if (!distinct.empty() && !Kq.is_zero(a1) && !Kq.is_zero(a2)) {
    std::vector<Fq2> base;
    for (std::uint64_t v : distinct) base.push_back(Kq.unpack(v));
    std::sort(base.begin(), base.end(), [&](Fq2 a, Fq2 b) { return Kq.pack(a) < Kq.pack(b); });
    ExpanderImage img = expander_sets(Kq, base, ExpanderKind::corz, a1, a2);
    corz.set("ball", img.ball_size);
    corz.set("image", img.image.size());
    corz.measured["exponent"] = img.exponent;
  }
  corz.note = "a1 = " + Kq.format(a1) + ", a2 = " + Kq.format(a2);
  rep.stages.push_back(corz);
  return rep;
}

inline nlohmann::json to_json(const GrowthReport& r) {
  nlohmann::json stages = nlohmann::json::array();
  for (const Certificate& c : r.stages) stages.push_back(to_json(c));
  return {{"passed", r.passed()},           {"early_exit", r.early_exit},
          {"k_used", r.k_used},             {"size", r.size},
          {"triple_size", r.triple_size},   {"saturated", r.saturated},
          {"tripling_exponent", r.tripling_exponent}, {"stages", std::move(stages)}};
}

}  // namespace sl2lab
