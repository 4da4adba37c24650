#pragma once

// Cayley-graph experiments on SL2(F_p): exact diameter, girth, the lazy
// random walk, its spectral gap, random generator pairs, and integer
// evaluation of reduced words.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sl2lab/bitset.hpp"
#include "sl2lab/errors.hpp"
#include "sl2lab/gset.hpp"
#include "sl2lab/parallel.hpp"
#include "sl2lab/rng.hpp"
#include "sl2lab/sl2.hpp"

namespace sl2lab {

// {[[1, k], [0, 1]], [[1, 0], [k, 1]]}
inline std::vector<SL2> offdiag_pair(const SL2Group& G, std::int64_t k) {
  return {G.make(1, k, 0, 1), G.make(1, 0, k, 1)};
}

class CayleyContext {
 public:
  CayleyContext(const SL2Group& G, std::vector<SL2> generators) : G_(G), gens_(std::move(generators)) {
    if (gens_.empty()) throw DomainError("a Cayley graph needs at least one generator");
    GroupSet steps(G_);
    for (const SL2& g : gens_) {
      steps.insert(g);
      steps.insert(G_.inv(g));
    }
    steps_ = steps.elements();
  }

  const SL2Group& group() const { return G_; }
  const std::vector<SL2>& generators() const { return gens_; }
  // A u A^-1 without repeats, ascending by index.
  const std::vector<SL2>& steps() const { return steps_; }

  // Formal letters for reduced words: generator i is letter i, its inverse
  // is letter n + i.
  std::size_t letter_count() const { return 2 * gens_.size(); }
  SL2 letter(std::size_t l) const { return l < gens_.size() ? gens_[l] : G_.inv(gens_[l - gens_.size()]); }
  std::size_t inverse_letter(std::size_t l) const { return l < gens_.size() ? l + gens_.size() : l - gens_.size(); }

 private:
  SL2Group G_;
  std::vector<SL2> gens_;
  std::vector<SL2> steps_;
};

inline std::uint64_t girth_depth(std::uint32_t p) {
  return static_cast<std::uint64_t>(std::floor(std::log(static_cast<double>(p)) / (2.0 * std::log(4.0))));
}

struct SphereCounts {
  std::vector<std::uint64_t> spheres;  // spheres[r] = number of elements at distance r
  std::uint64_t reached = 0;
};

// Level-synchronous BFS from I over g -> s g with frontier and visited
// bitsets. Each level splits the frontier into word ranges; candidates are
// merged in range order, so the result does not depend on the worker count.
inline SphereCounts bfs_spheres(const CayleyContext& ctx, Index cap = kDefaultClosureCap,
                                unsigned workers = worker_count()) {
  const SL2Group& G = ctx.group();
  const Index n = G.order();
  if (n > cap) throw CapExceeded("|G| = " + std::to_string(n) + " exceeds the BFS cap " + std::to_string(cap));
  Bitset visited(n), frontier(n);
  const Index id = G.encode(G.identity());
  visited.set(id);
  frontier.set(id);
  SphereCounts out;
  out.spheres.push_back(1);
  const auto& steps = ctx.steps();
  while (!frontier.empty()) {
    const std::size_t words = frontier.word_count();
    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(words, 8 * std::size_t{workers}));
    std::vector<std::vector<Index>> found(chunks);
    parallel_for(
        chunks,
        [&](std::size_t c) {
          const std::size_t lo = words * c / chunks, hi = words * (c + 1) / chunks;
          frontier.for_each_in_words(lo, hi, [&](std::uint64_t i) {
            const SL2 g = G.decode(i);
            for (const SL2& s : steps) {
              Index j = G.encode(G.mul(s, g));
              if (!visited.test(j)) found[c].push_back(j);
            }
          });
        },
        workers);
    Bitset next(n);
    for (const auto& chunk : found) {
      for (Index j : chunk) {
        if (visited.set(j)) next.set(j);
      }
    }
    if (next.empty()) break;
    out.spheres.push_back(next.count());
    frontier = std::move(next);
  }
  out.reached = visited.count();
  return out;
}

struct DiameterResult {
  std::uint64_t diameter = 0;
  std::vector<std::uint64_t> spheres;
};

// The graph is vertex transitive, so the eccentricity of I is the diameter.
inline DiameterResult bfs_diameter(const CayleyContext& ctx, Index cap = kDefaultClosureCap,
                                   unsigned workers = worker_count()) {
  SphereCounts s = bfs_spheres(ctx, cap, workers);
  if (s.reached != ctx.group().order()) {
    throw HypothesisError("generators do not generate: closure has " + std::to_string(s.reached) + " of " +
                          std::to_string(ctx.group().order()) + " elements");
  }
  return {s.spheres.size() - 1, std::move(s.spheres)};
}

struct GirthResult {
  std::optional<std::uint64_t> girth;  // empty: no relation of length <= max_len
  std::uint64_t max_len = 0;
};

// Shortest nonempty reduced word equal to I. BFS over reduced words from I,
// remembering the letter that first reached each element; an edge to an
// already reached element (other than straight back along the arrival
// letter) closes a reduced relation of length d(u) + d(v) + 1.
inline GirthResult girth(const CayleyContext& ctx, std::uint64_t max_len, Index cap = kDefaultClosureCap) {
  const SL2Group& G = ctx.group();
  GirthResult res;
  res.max_len = max_len;
  const std::size_t L = ctx.letter_count();
  std::vector<SL2> letters(L);
  for (std::size_t l = 0; l < L; ++l) {
    letters[l] = ctx.letter(l);
    if (letters[l] == G.identity()) {
      if (max_len >= 1) res.girth = 1;
      return res;
    }
  }
  struct Node {
    std::uint32_t depth;
    std::int32_t letter;
  };
  std::unordered_map<Index, Node> seen;
  const Index id = G.encode(G.identity());
  seen.emplace(id, Node{0, -1});
  std::vector<Index> frontier{id};
  std::uint64_t best = max_len + 1;
  for (std::uint64_t d = 0; !frontier.empty(); ++d) {
    if (2 * d + 1 > max_len || 2 * d + 1 >= best) break;
    std::vector<Index> next;
    for (Index u : frontier) {
      const Node nu = seen.at(u);
      const SL2 g = G.decode(u);
      for (std::size_t l = 0; l < L; ++l) {
        if (nu.letter >= 0 && l == ctx.inverse_letter(static_cast<std::size_t>(nu.letter))) continue;
        Index v = G.encode(G.mul(letters[l], g));
        auto it = seen.find(v);
        if (it == seen.end()) {
          seen.emplace(v, Node{static_cast<std::uint32_t>(d + 1), static_cast<std::int32_t>(l)});
          next.push_back(v);
        } else {
          best = std::min<std::uint64_t>(best, d + it->second.depth + 1);
        }
      }
    }
    if (seen.size() > cap) throw CapExceeded("girth search exceeded " + std::to_string(cap) + " elements");
    frontier = std::move(next);
  }
  if (best <= max_len) res.girth = best;
  return res;
}

constexpr Index kDefaultWalkCap = Index{1} << 22;

struct WalkDistribution {
  std::vector<double> prob;  // by canonical index
  std::uint64_t steps = 0;
  Index start = 0;
};

// Lazy kernel: mass 1/2 on I and 1/(2|S|) on each s in S = A u A^-1.
class LazyWalk {
 public:
  explicit LazyWalk(const CayleyContext& ctx, Index cap = kDefaultWalkCap) : G_(ctx.group()) {
    n_ = G_.order();
    if (n_ > cap) throw CapExceeded("|G| = " + std::to_string(n_) + " exceeds the walk cap " + std::to_string(cap));
    k_ = ctx.steps().size();
    next_.resize(n_ * k_);
    for (Index x = 0; x < n_; ++x) {
      const SL2 g = G_.decode(x);
      for (std::size_t s = 0; s < k_; ++s) next_[x * k_ + s] = static_cast<std::uint32_t>(G_.encode(G_.mul(g, ctx.steps()[s])));
    }
  }

  Index order() const { return n_; }

  // phi'(x) = phi(x)/2 + (1/(2|S|)) sum_s phi(x s)
  std::vector<double> apply(const std::vector<double>& phi) const {
    std::vector<double> out(n_);
    const double w = 0.5 / static_cast<double>(k_);
    for (Index x = 0; x < n_; ++x) {
      double acc = 0.0;
      for (std::size_t s = 0; s < k_; ++s) acc += phi[next_[x * k_ + s]];
      out[x] = 0.5 * phi[x] + w * acc;
    }
    return out;
  }

  WalkDistribution distribution(std::uint64_t steps, const SL2& start) const {
    WalkDistribution d{std::vector<double>(n_, 0.0), steps, G_.encode(start)};
    d.prob[d.start] = 1.0;
    for (std::uint64_t i = 0; i < steps; ++i) d.prob = apply(d.prob);
    return d;
  }

  double l1_to_uniform(const std::vector<double>& phi) const {
    const double u = 1.0 / static_cast<double>(n_);
    double acc = 0.0;
    for (double v : phi) acc += std::abs(v - u);
    return acc;
  }

 private:
  SL2Group G_;
  Index n_ = 0;
  std::size_t k_ = 0;
  std::vector<std::uint32_t> next_;
};

inline WalkDistribution walk_distribution(const CayleyContext& ctx, std::uint64_t steps, const SL2& start) {
  return LazyWalk(ctx).distribution(steps, start);
}

struct MixingResult {
  std::uint64_t steps = 0;
  std::vector<double> l1;  // l1[n] for n = 0..steps
  bool monotone = true;    // l1 never increased along the trajectory
};

// Least n with sum_g |phi_n(g) - 1/|G|| <= threshold, starting at I. Every
// step is recorded, which is what the monotonicity check reads.
inline MixingResult mixing_time(const CayleyContext& ctx, double threshold = 0.5, std::uint64_t max_steps = 100000) {
  LazyWalk walk(ctx);
  std::vector<double> phi(walk.order(), 0.0);
  phi[ctx.group().encode(ctx.group().identity())] = 1.0;
  MixingResult res;
  res.l1.push_back(walk.l1_to_uniform(phi));
  while (res.l1.back() > threshold) {
    if (res.steps == max_steps) throw CapExceeded("walk did not mix within " + std::to_string(max_steps) + " steps");
    phi = walk.apply(phi);
    ++res.steps;
    res.l1.push_back(walk.l1_to_uniform(phi));
    if (res.l1.back() > res.l1[res.l1.size() - 2] + 1e-12) res.monotone = false;
  }
  return res;
}

enum class SpectralMethod { automatic, dense, iterative };

constexpr Index kDenseSpectralLimit = 5040;

struct SpectralResult {
  double lambda2 = 0.0;
  double gap = 0.0;         // 1 - lambda2
  double lambda_min = 0.0;  // dense only
  double residual = 0.0;
  std::uint64_t iterations = 0;
  std::string method;
  std::vector<double> eigenvalues;  // dense only, ascending
};

inline Eigen::MatrixXd lazy_kernel_matrix(const CayleyContext& ctx) {
  const SL2Group& G = ctx.group();
  const Index n = G.order();
  const double w = 0.5 / static_cast<double>(ctx.steps().size());
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Index x = 0; x < n; ++x) {
    const SL2 g = G.decode(x);
    T(x, x) += 0.5;
    for (const SL2& s : ctx.steps()) T(x, G.encode(G.mul(g, s))) += w;
  }
  return T;
}

inline SpectralResult spectral_gap(const CayleyContext& ctx, SpectralMethod method = SpectralMethod::automatic,
                                   double tol = 1e-8, std::uint64_t max_iter = 1000000) {
  const Index n = ctx.group().order();
  if (method == SpectralMethod::automatic) method = n <= kDenseSpectralLimit ? SpectralMethod::dense : SpectralMethod::iterative;
  SpectralResult res;
  if (method == SpectralMethod::dense) {
    if (n > kDenseSpectralLimit) throw CapExceeded("dense eigensolve limited to |G| <= 5040");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lazy_kernel_matrix(ctx), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw InvariantError("dense eigensolver failed");
    const Eigen::VectorXd& ev = solver.eigenvalues();
    res.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    res.lambda2 = ev(ev.size() - 2);
    res.lambda_min = ev(0);
    res.method = "dense";
  } else {
    // Power iteration on the complement of the constant vector. The lazy
    // kernel is positive semidefinite, so the dominant eigenvalue there is
    // lambda2 itself.
    LazyWalk walk(ctx);
    std::vector<double> v(n);
    Rng rng(0x5eed);
    for (double& x : v) x = uniform_unit(rng) - 0.5;
    auto project = [&](std::vector<double>& x) {
      double mean = 0.0;
      for (double y : x) mean += y;
      mean /= static_cast<double>(n);
      double norm = 0.0;
      for (double& y : x) {
        y -= mean;
        norm += y * y;
      }
      norm = std::sqrt(norm);
      for (double& y : x) y /= norm;
    };
    project(v);
    res.method = "iterative";
    for (;;) {
      std::vector<double> w = walk.apply(v);
      double lambda = 0.0;
      for (Index i = 0; i < n; ++i) lambda += v[i] * w[i];
      double r2 = 0.0;
      for (Index i = 0; i < n; ++i) r2 += (w[i] - lambda * v[i]) * (w[i] - lambda * v[i]);
      res.lambda2 = lambda;
      res.residual = std::sqrt(r2);
      ++res.iterations;
      if (res.residual < tol) break;
      if (res.iterations >= max_iter) {
        throw CapExceeded("power iteration did not converge: residual " + std::to_string(res.residual) + " after " +
                          std::to_string(res.iterations) + " iterations");
      }
      v = std::move(w);
      project(v);
    }
  }
  res.gap = 1.0 - res.lambda2;
  return res;
}

struct PairRecord {
  std::uint64_t trial = 0;
  Index g = 0, h = 0;
  bool generates = false;
  std::uint64_t closure = 0;
  std::optional<std::uint64_t> girth;     // only relations of length <= girth_depth are searched
  std::optional<std::uint64_t> diameter;  // generating pairs only
};

struct PairStats {
  std::uint32_t p = 0;
  std::uint64_t girth_depth = 0;
  std::vector<PairRecord> records;

  double generating_fraction() const {
    if (records.empty()) return 0.0;
    std::size_t k = 0;
    for (const auto& r : records) k += r.generates;
    return static_cast<double>(k) / static_cast<double>(records.size());
  }
  // Among generating pairs, the share with a relation of length <= girth_depth.
  double short_loop_fraction() const {
    std::size_t gen = 0, loops = 0;
    for (const auto& r : records) {
      if (!r.generates) continue;
      ++gen;
      loops += r.girth.has_value();
    }
    return gen == 0 ? 0.0 : static_cast<double>(loops) / static_cast<double>(gen);
  }
  double mean_diameter() const {
    double sum = 0.0;
    std::size_t k = 0;
    for (const auto& r : records) {
      if (r.diameter) {
        sum += static_cast<double>(*r.diameter);
        ++k;
      }
    }
    return k == 0 ? 0.0 : sum / static_cast<double>(k);
  }
};

inline PairRecord random_pair_trial(const SL2Group& G, std::uint64_t seed, std::uint64_t trial,
                                    Index cap = kDefaultClosureCap) {
  Rng rng = trial_rng(seed, trial);
  PairRecord r;
  r.trial = trial;
  r.g = uniform_below(rng, G.order());
  r.h = uniform_below(rng, G.order());
  CayleyContext ctx(G, {G.decode(r.g), G.decode(r.h)});
  SphereCounts s = bfs_spheres(ctx, cap, 1);
  r.closure = s.reached;
  r.generates = s.reached == G.order();
  if (r.generates) r.diameter = s.spheres.size() - 1;
  r.girth = girth(ctx, girth_depth(G.p()), cap).girth;
  return r;
}

inline PairStats random_pairs(const SL2Group& G, std::uint64_t trials, std::uint64_t seed,
                              Index cap = kDefaultClosureCap, unsigned workers = worker_count()) {
  PairStats stats;
  stats.p = G.p();
  stats.girth_depth = girth_depth(G.p());
  stats.records = parallel_map<PairRecord>(
      trials, [&](std::size_t t) { return random_pair_trial(G, seed, t, cap); }, workers);
  return stats;
}

// Integer 2x2 matrices for words over Z.
using Int128 = __int128;

struct IntMat {
  Int128 a = 1, b = 0, c = 0, d = 1;
  bool operator==(const IntMat&) const = default;
};

inline std::string to_string(Int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  std::string s;
  while (u) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

struct IntEval {
  IntMat m;
  bool widened = false;  // some product overflowed 64 bits and was redone in 128
};

// Letters 0..n-1 are the generators and n..2n-1 their inverses.
inline IntEval evaluate_integer_word(const std::vector<IntMat>& gens, const std::vector<std::size_t>& letters) {
  const std::size_t n = gens.size();
  auto letter = [&](std::size_t l) {
    if (l < n) return gens[l];
    const IntMat& g = gens[l - n];
    return IntMat{g.d, -g.b, -g.c, g.a};
  };
  IntEval out;
  std::array<std::int64_t, 4> acc{1, 0, 0, 1};
  bool narrow = true;
  for (std::size_t l : letters) {
    IntMat x = letter(l);
    if (narrow) {
      std::array<std::int64_t, 4> r{};
      std::array<std::int64_t, 4> xs{static_cast<std::int64_t>(x.a), static_cast<std::int64_t>(x.b),
                                     static_cast<std::int64_t>(x.c), static_cast<std::int64_t>(x.d)};
      bool overflow = false;
      auto dot = [&](std::int64_t p, std::int64_t q, std::int64_t s, std::int64_t t) {
        std::int64_t u, v, w;
        overflow |= __builtin_mul_overflow(p, q, &u);
        overflow |= __builtin_mul_overflow(s, t, &v);
        overflow |= __builtin_add_overflow(u, v, &w);
        return w;
      };
      r[0] = dot(acc[0], xs[0], acc[1], xs[2]);
      r[1] = dot(acc[0], xs[1], acc[1], xs[3]);
      r[2] = dot(acc[2], xs[0], acc[3], xs[2]);
      r[3] = dot(acc[2], xs[1], acc[3], xs[3]);
      if (!overflow) {
        acc = r;
        continue;
      }
      narrow = false;
      out.widened = true;
      out.m = {acc[0], acc[1], acc[2], acc[3]};
    }
    const IntMat& m = out.m;
    out.m = {m.a * x.a + m.b * x.c, m.a * x.b + m.b * x.d, m.c * x.a + m.d * x.c, m.c * x.b + m.d * x.d};
  }
  if (narrow) out.m = {acc[0], acc[1], acc[2], acc[3]};
  return out;
}

inline IntMat int_mat(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  if (static_cast<Int128>(a) * d - static_cast<Int128>(b) * c != 1) throw DomainError("integer generator must have determinant 1");
  return {a, b, c, d};
}

inline std::vector<IntMat> offdiag_integer_pair(std::int64_t k) { return {int_mat(1, k, 0, 1), int_mat(1, 0, k, 1)}; }

struct FreeWordResult {
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;  // words reducing to I mod p
  std::uint64_t integer_identities = 0;
  std::uint64_t widened = 0;
  std::uint64_t max_len = 0;
  Int128 max_abs_entry = 0;
  std::vector<std::vector<std::size_t>> violating_words;
};

// A random nonempty reduced word of length <= max_len over n generators: the
// length is uniform on [1, max_len], the first letter uniform, and each later
// letter uniform among those that do not cancel the previous one.
inline std::vector<std::size_t> random_reduced_word(Rng& rng, std::size_t n, std::uint64_t max_len) {
  const std::size_t L = 2 * n;
  const std::uint64_t len = 1 + uniform_below(rng, max_len);
  std::vector<std::size_t> w;
  w.push_back(uniform_below(rng, L));
  while (w.size() < len) {
    const std::size_t back = w.back() < n ? w.back() + n : w.back() - n;
    std::size_t l = uniform_below(rng, L - 1);
    if (l >= back) ++l;
    w.push_back(l);
  }
  return w;
}

inline bool reduces_to_identity(const IntMat& m, std::uint32_t p) {
  auto mod = [&](Int128 v) {
    Int128 r = v % p;
    return r < 0 ? r + p : r;
  };
  return mod(m.a) == 1 && mod(m.b) == 0 && mod(m.c) == 0 && mod(m.d) == 1;
}

inline std::uint64_t free_word_max_len(std::uint32_t p) {
  return p < 3 ? 0 : static_cast<std::uint64_t>(std::floor(std::log2(static_cast<double>(p - 2))));
}

inline void check_free_word_args(std::uint32_t p, std::uint64_t max_len) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (max_len == 0) throw DomainError("max_len must be positive");
  if (max_len > free_word_max_len(p)) {
    throw HypothesisError("max_len " + std::to_string(max_len) + " exceeds floor(log2(p - 2)) = " +
                          std::to_string(free_word_max_len(p)));
  }
}

inline FreeWordResult free_word_check(const std::vector<IntMat>& gens, std::uint32_t p, std::uint64_t max_len,
                                      std::uint64_t trials, std::uint64_t seed) {
  check_free_word_args(p, max_len);
  FreeWordResult res;
  res.trials = trials;
  res.max_len = max_len;
  Rng rng = trial_rng(seed, 0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::vector<std::size_t> w = random_reduced_word(rng, gens.size(), max_len);
    IntEval e = evaluate_integer_word(gens, w);
    res.widened += e.widened;
    for (Int128 v : {e.m.a, e.m.b, e.m.c, e.m.d}) res.max_abs_entry = std::max(res.max_abs_entry, v < 0 ? -v : v);
    if (e.m == IntMat{}) ++res.integer_identities;
    if (reduces_to_identity(e.m, p)) {
      ++res.violations;
      if (res.violating_words.size() < 16) res.violating_words.push_back(w);
    }
  }
  return res;
}

}  // namespace sl2lab
