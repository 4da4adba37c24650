#pragma once

// Finite subsets of SL_2(F_p) and the set algebra built on them: product
// sets, balls A_r, Ruzsa distance and covering, generation, and the two
// non-abelian fixtures (a coset gH and H u {g}).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <memory>
#include <optional>
#include <span>
#include <unordered_set>
#include <deque>
#include <vector>

#include "json.hpp"

#include "sl2lab/bitset.hpp"
#include "sl2lab/errors.hpp"
#include "sl2lab/sl2.hpp"
#include "sl2lab/word.hpp"

namespace sl2lab {

class GroupSet {
 public:
  static constexpr Index kDenseUniverseCap = Index{1} << 30;

  explicit GroupSet(const SL2Group& G) : G_(G), dense_(G.order() <= kDenseUniverseCap) {
    if (dense_) bits_ = Bitset(G.order());
  }

  static GroupSet full(const SL2Group& G) {
    GroupSet s(G);
    if (!s.dense_) s.densify();
    s.bits_.fill();
    return s;
  }
  static GroupSet of(const SL2Group& G, std::span<const SL2> elements) {
    GroupSet s(G);
    for (const SL2& g : elements) s.insert(g);
    return s;
  }
  static GroupSet of(const SL2Group& G, std::initializer_list<SL2> elements) {
    return of(G, std::span<const SL2>(elements.begin(), elements.size()));
  }
  static GroupSet from_indices(const SL2Group& G, std::span<const Index> indices) {
    GroupSet s(G);
    for (Index i : indices) {
      if (i >= G.order()) throw DomainError("canonical index out of range");
      s.insert(i);
    }
    return s;
  }

  const SL2Group& group() const { return G_; }
  std::uint32_t p() const { return G_.p(); }
  Index universe() const { return G_.order(); }
  bool dense() const { return dense_; }
  std::uint64_t size() const { return dense_ ? bits_.count() : sparse_.size(); }
  bool empty() const { return size() == 0; }
  bool full() const { return size() == universe(); }

  bool contains(Index i) const { return dense_ ? bits_.test(i) : sparse_.count(i) != 0; }
  bool contains(const SL2& g) const { return contains(G_.encode(g)); }

  bool insert(Index i) {
    if (dense_) return bits_.set(i);
    bool added = sparse_.insert(i).second;
    if (added && sparse_.size() > universe() / 64) densify();
    return added;
  }
  bool insert(const SL2& g) { return insert(G_.encode(g)); }

  // Ascending canonical index order.
  template <typename F>
  void for_each(F&& f) const {
    if (dense_) {
      bits_.for_each(f);
      return;
    }
    for (Index i : indices()) f(i);
  }

  std::vector<Index> indices() const {
    if (dense_) return bits_.to_vector();
    std::vector<Index> out(sparse_.begin(), sparse_.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<SL2> elements() const {
    std::vector<SL2> out;
    out.reserve(size());
    for_each([&](Index i) { out.push_back(G_.decode(i)); });
    return out;
  }

  GroupSet inverse() const {
    GroupSet out(G_);
    for_each([&](Index i) { out.insert(G_.inv(G_.decode(i))); });
    return out;
  }

  GroupSet& unite(const GroupSet& other) {
    check_context(other);
    if (dense_ && other.dense_) {
      bits_ |= other.bits_;
    } else {
      other.for_each([&](Index i) { insert(i); });
    }
    return *this;
  }

  GroupSet intersect(const GroupSet& other) const {
    check_context(other);
    GroupSet out(G_);
    const GroupSet& small = size() <= other.size() ? *this : other;
    const GroupSet& large = size() <= other.size() ? other : *this;
    small.for_each([&](Index i) {
      if (large.contains(i)) out.insert(i);
    });
    return out;
  }

  GroupSet minus(const GroupSet& other) const {
    check_context(other);
    GroupSet out(G_);
    for_each([&](Index i) {
      if (!other.contains(i)) out.insert(i);
    });
    return out;
  }

  bool is_subset_of(const GroupSet& other) const {
    check_context(other);
    if (dense_ && other.dense_) return bits_.is_subset_of(other.bits_);
    bool ok = true;
    for_each([&](Index i) { ok = ok && other.contains(i); });
    return ok;
  }

  friend bool operator==(const GroupSet& a, const GroupSet& b) {
    if (a.p() != b.p() || a.size() != b.size()) return false;
    return a.is_subset_of(b);
  }

  void check_context(const GroupSet& other) const {
    if (other.p() != p()) {
      throw ContextMismatch("sets over SL2(F_" + std::to_string(p()) + ") and SL2(F_" + std::to_string(other.p()) +
                            ") combined");
    }
  }

 private:
  void densify() {
    bits_ = Bitset(universe());
    for (Index i : sparse_) bits_.set(i);
    sparse_.clear();
    dense_ = true;
  }

  SL2Group G_;
  bool dense_;
  Bitset bits_;
  std::unordered_set<Index> sparse_;
};

// {x y : x in A, y in B}. When |A| + |B| > |G| every g is a product
// (gB^-1 meets A), so the full group is returned without enumeration.
inline GroupSet product_set(const GroupSet& A, const GroupSet& B) {
  A.check_context(B);
  const SL2Group& G = A.group();
  if (A.empty() || B.empty()) return GroupSet(G);
  if (A.size() + B.size() > G.order()) return GroupSet::full(G);
  GroupSet out(G);
  const std::vector<SL2> left = A.elements();
  const std::vector<SL2> right = B.elements();
  for (const SL2& x : left) {
    for (const SL2& y : right) out.insert(G.mul(x, y));
    if (out.full()) break;
  }
  return out;
}

inline GroupSet product_set(const GroupSet& A, const GroupSet& B, const GroupSet& C) {
  return product_set(product_set(A, B), C);
}

// A u A^-1 u {1}
inline GroupSet symmetric_closure(const GroupSet& A) {
  GroupSet out = A;
  out.unite(A.inverse());
  out.insert(A.group().identity());
  return out;
}

// Memoized balls A_r. A_{r+1} = A_r u (S_r A_1) where S_r = A_r \ A_{r-1} is
// the newest sphere. A scaled view with factor k treats A_k as its base, so
// (A_k)_r = A_{rk} shares the same memo.
class Balls {
 public:
  explicit Balls(GroupSet A) : store_(std::make_shared<Store>(std::move(A))) {}

  Balls scaled(int k) const {
    if (k < 1) throw DomainError("ball scale must be positive");
    Balls view = *this;
    view.scale_ = scale_ * k;
    return view;
  }

  int scale() const { return scale_; }
  const SL2Group& group() const { return store_->base.group(); }

  // A itself for the unscaled view, A_k for a view scaled by k.
  const GroupSet& base() const { return scale_ == 1 ? store_->base : radius(scale_); }

  // A_{r * scale}
  const GroupSet& operator()(int r) const { return radius(r * scale_); }

  // Radius at which the ball stopped growing (the generated subgroup), if reached.
  std::optional<int> stable_radius() const { return store_->stable_at; }

 private:
  struct Store {
    explicit Store(GroupSet A) : base(std::move(A)) {
      const SL2Group& G = base.group();
      radii.push_back(GroupSet::of(G, {G.identity()}));
      radii.push_back(symmetric_closure(base));
      step = radii[1].elements();
    }
    GroupSet base;
    std::deque<GroupSet> radii;
    std::vector<SL2> step;
    std::optional<int> stable_at;
  };

  const GroupSet& radius(int r) const {
    if (r < 0) throw DomainError("negative ball radius");
    Store& s = *store_;
    const SL2Group& G = s.base.group();
    while (static_cast<int>(s.radii.size()) <= r && !s.stable_at) {
      const int k = static_cast<int>(s.radii.size()) - 1;
      const GroupSet& cur = s.radii[k];
      GroupSet next = cur;
      if (cur.size() + s.radii[1].size() > G.order()) {
        next = GroupSet::full(G);
      } else {
        GroupSet sphere = k == 0 ? cur : cur.minus(s.radii[k - 1]);
        sphere.for_each([&](Index i) {
          if (next.full()) return;
          SL2 x = G.decode(i);
          for (const SL2& y : s.step) next.insert(G.mul(x, y));
        });
      }
      if (next.size() == cur.size()) {
        s.stable_at = k;
        break;
      }
      s.radii.push_back(std::move(next));
    }
    return s.radii[std::min<std::size_t>(r, s.radii.size() - 1)];
  }

  std::shared_ptr<Store> store_;
  int scale_ = 1;
};

inline GroupSet ball(const GroupSet& A, int r) {
  if (r < 1) throw DomainError("ball radius must be at least 1");
  return Balls(A)(r);
}

// Breadth-first enumeration of A_r that remembers, for every element, the
// first word (shortlex over the letter list) reaching it. Letters are the
// elements of A in ascending index order followed by their inverses.
class WordBall {
 public:
  explicit WordBall(const GroupSet& A) : G_(A.group()), visited_(A.group()) {
    A.for_each([&](Index i) { letters_.push_back({i, false}); });
    A.for_each([&](Index i) { letters_.push_back({i, true}); });
    for (const Letter& l : letters_) {
      SL2 x = G_.decode(l.ref);
      steps_.push_back(l.inverted ? G_.inv(x) : x);
    }
    Index id = G_.encode(G_.identity());
    visited_.insert(id);
    order_.push_back(id);
    parent_.push_back(0);
    via_.push_back(kNoLetter);
    layer_end_.push_back(1);
  }

  const SL2Group& group() const { return G_; }
  int depth() const { return static_cast<int>(layer_end_.size()) - 1; }
  bool exhausted() const { return exhausted_; }
  std::size_t size() const { return order_.size(); }
  const GroupSet& members() const { return visited_; }
  const std::vector<Letter>& letters() const { return letters_; }

  // Adds the next sphere; returns false once nothing new appears.
  bool expand() {
    if (exhausted_) return false;
    const std::size_t begin = depth() == 0 ? 0 : layer_end_[depth() - 1];
    const std::size_t end = layer_end_.back();
    for (std::size_t pos = begin; pos < end; ++pos) {
      SL2 x = G_.decode(order_[pos]);
      for (std::uint32_t li = 0; li < steps_.size(); ++li) {
        Index y = G_.encode(G_.mul(x, steps_[li]));
        if (visited_.insert(y)) {
          order_.push_back(y);
          parent_.push_back(static_cast<std::uint32_t>(pos));
          via_.push_back(li);
        }
      }
    }
    if (order_.size() == end) {
      exhausted_ = true;
      return false;
    }
    layer_end_.push_back(order_.size());
    return true;
  }

  void expand_to(int r) {
    while (depth() < r && expand()) {
    }
  }

  // Positions [begin, end) of the elements first reached at depth r.
  std::pair<std::size_t, std::size_t> layer(int r) const {
    if (r > depth()) return {order_.size(), order_.size()};
    return {r == 0 ? 0 : layer_end_[r - 1], layer_end_[r]};
  }
  // Positions [0, end) of A_r.
  std::size_t ball_end(int r) const { return layer_end_[std::min(r, depth())]; }

  Index at(std::size_t pos) const { return order_[pos]; }

  Word word(std::size_t pos) const {
    std::vector<Letter> rev;
    while (via_[pos] != kNoLetter) {
      rev.push_back(letters_[via_[pos]]);
      pos = parent_[pos];
    }
    return Word(std::vector<Letter>(rev.rbegin(), rev.rend()));
  }

  GroupSet ball(int r) {
    expand_to(r);
    GroupSet out(G_);
    for (std::size_t pos = 0; pos < ball_end(r); ++pos) out.insert(order_[pos]);
    return out;
  }

 private:
  static constexpr std::uint32_t kNoLetter = ~std::uint32_t{0};

  SL2Group G_;
  std::vector<Letter> letters_;
  std::vector<SL2> steps_;
  GroupSet visited_;
  std::vector<Index> order_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> via_;
  std::vector<std::size_t> layer_end_;
  bool exhausted_ = false;
};

// log(|A B^-1| / sqrt(|A| |B|))
inline double ruzsa_distance(const GroupSet& A, const GroupSet& B) {
  if (A.empty() || B.empty()) throw DomainError("Ruzsa distance of an empty set");
  const double num = static_cast<double>(product_set(A, B.inverse()).size());
  return std::log(num / std::sqrt(static_cast<double>(A.size()) * static_cast<double>(B.size())));
}

struct CoverResult {
  std::vector<Index> representatives;
  std::uint64_t product_size = 0;  // |A B|
  std::uint64_t bound = 0;         // floor(|A B| / |B|)
  bool covers = false;             // A within the union of a_j B_2
};

// Greedy maximal family of disjoint translates a_j B, scanned in ascending
// index order; then A is covered by the a_j B B^-1, a subset of a_j B_2.
inline CoverResult ruzsa_cover(const GroupSet& A, const GroupSet& B) {
  A.check_context(B);
  if (B.empty()) throw DomainError("covering by an empty set");
  const SL2Group& G = A.group();
  CoverResult res;
  GroupSet used(G);
  const std::vector<SL2> bs = B.elements();
  std::vector<SL2> translate;
  A.for_each([&](Index i) {
    SL2 a = G.decode(i);
    translate.clear();
    for (const SL2& b : bs) {
      SL2 ab = G.mul(a, b);
      if (used.contains(ab)) return;
      translate.push_back(ab);
    }
    for (const SL2& x : translate) used.insert(x);
    res.representatives.push_back(i);
  });
  res.product_size = product_set(A, B).size();
  res.bound = res.product_size / B.size();
  const GroupSet B2 = ball(B, 2);
  std::vector<SL2> reps_inv;
  for (Index r : res.representatives) reps_inv.push_back(G.inv(G.decode(r)));
  res.covers = true;
  A.for_each([&](Index i) {
    if (!res.covers) return;
    SL2 x = G.decode(i);
    bool hit = false;
    for (const SL2& ri : reps_inv) {
      if (B2.contains(G.mul(ri, x))) {
        hit = true;
        break;
      }
    }
    res.covers = hit;
  });
  return res;
}

enum class Decision { yes, no, undecided };

struct GenerationResult {
  Decision decision = Decision::undecided;
  std::uint64_t closure_size = 0;
  std::optional<GroupSet> closure;
  bool generates() const { return decision == Decision::yes; }
};

inline constexpr Index kDefaultClosureCap = Index{1} << 25;

// Whether <A> = SL_2(F_p), by growing balls until they stop changing.
inline GenerationResult generates(const GroupSet& A, Index cap = kDefaultClosureCap) {
  GenerationResult res;
  if (A.universe() > cap) return res;
  Balls balls(A);
  int r = 1;
  while (!balls.stable_radius()) balls(++r);
  const GroupSet& closure = balls(*balls.stable_radius());
  res.closure_size = closure.size();
  res.decision = closure.full() ? Decision::yes : Decision::no;
  res.closure = closure;
  return res;
}

// Upper-triangular Borel subgroup {[[r, x], [0, 1/r]]}.
inline GroupSet borel_subgroup(const SL2Group& G) {
  GroupSet H(G);
  const PrimeField& F = G.field();
  for (std::uint32_t r = 1; r < G.p(); ++r) {
    for (std::uint32_t x = 0; x < G.p(); ++x) H.insert(SL2{Fp{r}, Fp{x}, F.zero(), F.inv(Fp{r})});
  }
  return H;
}

enum class FixtureKind { coset, subgroup_plus_point };

struct Fixture {
  GroupSet set;
  GroupSet subgroup;
  SL2 point;
};

// coset: gH with H the Borel subgroup and g = [[0,1],[-1,0]] outside its
// normalizer. subgroup_plus_point: H u {g}.
inline Fixture pathological_fixture(const SL2Group& G, FixtureKind kind) {
  if (G.p() < 5) throw DomainError("fixtures need p >= 5");
  GroupSet H = borel_subgroup(G);
  SL2 g = G.make(0, 1, -1, 0);
  if (kind == FixtureKind::coset) {
    return {product_set(GroupSet::of(G, {g}), H), H, g};
  }
  GroupSet A = H;
  A.insert(g);
  return {A, H, g};
}

// Little-endian u64 count followed by the sorted u64 indices.
inline std::vector<std::uint8_t> to_binary(const GroupSet& A) {
  std::vector<Index> idx = A.indices();
  std::vector<std::uint8_t> out;
  out.reserve(8 * (idx.size() + 1));
  auto put = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  put(idx.size());
  for (Index i : idx) put(i);
  return out;
}

inline GroupSet from_binary(const SL2Group& G, std::span<const std::uint8_t> bytes) {
  auto get = [&](std::size_t at) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[at + i]) << (8 * i);
    return v;
  };
  if (bytes.size() < 8) throw DomainError("set blob shorter than its header");
  std::uint64_t n = get(0);
  if (bytes.size() != 8 * (n + 1)) throw DomainError("set blob length does not match its count");
  GroupSet out(G);
  Index prev = 0;
  for (std::uint64_t k = 0; k < n; ++k) {
    Index i = get(8 * (k + 1));
    if (i >= G.order()) throw DomainError("set blob index out of range");
    if (k > 0 && i <= prev) throw DomainError("set blob indices not strictly increasing");
    out.insert(i);
    prev = i;
  }
  return out;
}

inline nlohmann::json to_json(const GroupSet& A) { return nlohmann::json(A.indices()); }

inline GroupSet from_json(const SL2Group& G, const nlohmann::json& j) {
  std::vector<Index> idx = j.get<std::vector<Index>>();
  if (!std::is_sorted(idx.begin(), idx.end()) || std::adjacent_find(idx.begin(), idx.end()) != idx.end()) {
    throw DomainError("set JSON must be a strictly increasing index list");
  }
  return GroupSet::from_indices(G, idx);
}

}  // namespace sl2lab
