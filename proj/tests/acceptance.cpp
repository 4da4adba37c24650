// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "sl2lab/borel.hpp"
#include "sl2lab/cayley.hpp"
#include "sl2lab/growth.hpp"
#include "sl2lab/zpadd.hpp"

using namespace sl2lab;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

GroupSet random_set(const SL2Group& G, std::size_t k, std::mt19937_64& rng) {
  GroupSet A(G);
  while (A.size() < k) A.insert(rng() % G.order());
  return A;
}

GroupSet random_generating(const SL2Group& G, std::size_t k, std::mt19937_64& rng) {
  for (;;) {
    GroupSet A = random_set(G, k, rng);
    if (generates(A).generates()) return A;
  }
}

std::vector<oracle::M> as_oracle(const std::vector<SL2>& v) {
  std::vector<oracle::M> out;
  for (const SL2& g : v) out.push_back(oracle::from(g));
  return out;
}

// Evaluates a word with the oracle's arithmetic only.
oracle::M oracle_eval(const SL2Group& G, const Word& w) {
  const std::int64_t p = G.p();
  oracle::M acc = oracle::identity();
  for (const Letter& l : w.letters()) {
    oracle::M x = oracle::from(G.decode(l.ref));
    acc = oracle::mul(acc, l.inverted ? oracle::inv(x, p) : x, p);
  }
  return acc;
}

void c1_inequalities(Check& c) {
  int triples = 0, stage_runs = 0, sorge_runs = 0;
  for (std::uint32_t p : {5u, 7u}) {
    SL2Group G(p);
    std::mt19937_64 rng(1000 + p);
    for (int i = 0; i < 500; ++i, ++triples) {
      GroupSet A = random_set(G, 1 + rng() % 12, rng), B = random_set(G, 1 + rng() % 12, rng),
               C = random_set(G, 1 + rng() % 12, rng);
      Certificate cert("ruzsa");
      cert.set("AC", product_set(A, C.inverse()).size());
      cert.set("AB", product_set(A, B.inverse()).size());
      cert.set("BC", product_set(B, C.inverse()).size());
      cert.set("B", B.size());
      cert.set("A", A.size());
      cert.set("AA", product_set(A, A).size());
      cert.set("AAinv", product_set(A, A.inverse()).size());
      cert.check("ruzsa_injection");
      cert.check("ruzsa_eq24");
      CoverResult cover = ruzsa_cover(A, B);
      cert.set("reps", cover.representatives.size());
      cert.set("AB", cover.product_size);
      cert.check("bet");
      c.require(cert.passed() && cover.covers, "ruzsa/bet at p=" + std::to_string(p) + ": " + cert.failures());
    }
  }
  for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
    SL2Group G(p);
    std::mt19937_64 rng(2000 + p);
    for (int i = 0; i < 50; ++i, ++stage_runs) {
      GroupSet A(G);
      do A = random_generating(G, 4 + rng() % 7, rng); while (trace_set(A).size() < 2);
      Balls balls(A);
      Certificate furcht("furcht");
      furcht.set("A", A.size());
      furcht.set("A_3", balls(3).size());
      for (int n = 4; n <= 6; ++n) {
        furcht.set("A_" + std::to_string(n), balls(n).size());
        furcht.check("furcht_" + std::to_string(n));
      }
      std::vector<const Certificate*> certs;
      TronResult tron = tron_find(A);
      CrudResult crud = crud_filter(balls);
      KowResult kow = kow_diag(balls);
      TraceGrowthResult unda = trace_growth(balls);
      AnduResult andu = size_from_traces(balls);
      for (const Certificate* x : {&furcht, &tron.certificate, &crud.certificate, &kow.certificate,
                                   &unda.certificate, &andu.chich.certificate, &andu.certificate}) {
        c.require(x->passed() && x->recheck(), x->stage + " at p=" + std::to_string(p) + ": " + x->failures());
      }
    }
  }
  std::mt19937_64 rng(3000);
  for (std::uint32_t p : {13u, 101u, 251u, 499u, 997u}) {
    for (int i = 0; i < 10; ++i, ++sorge_runs) {
      ZpSet A(p), S(p);
      std::size_t ka = 2 + rng() % std::min<std::uint32_t>(40, p - 2), ks = 1 + rng() % std::min<std::uint32_t>(40, p - 1);
      while (A.size() < ka) A.insert(rng() % p);
      while (S.size() < ks) S.insert(1 + rng() % (p - 1));
      SorgeResult r = sorge_find_xi(A, S, Rational{1, 2});
      c.require(r.certificate.passed(), "sorge at p=" + std::to_string(p) + ": " + r.certificate.failures());
    }
  }
  c.detail << triples << " triples, " << stage_runs << " generating sets, " << sorge_runs << " sorge instances";
}

void c2_fixtures(Check& c) {
  SL2Group G(5);
  Fixture coset = pathological_fixture(G, FixtureKind::coset);
  std::uint64_t aainv = product_set(coset.set, coset.set.inverse()).size();
  std::uint64_t aa = product_set(coset.set, coset.set).size();
  Fixture plus = pathological_fixture(G, FixtureKind::subgroup_plus_point);
  GroupSet A2 = product_set(plus.set, plus.set);
  GroupSet A3 = product_set(A2, plus.set);
  std::set<oracle::M> H;
  for (const oracle::M& m : oracle::all_sl2(5)) {
    if (m[2] == 0) H.insert(m);
  }
  std::size_t hgh = oracle::product(oracle::product(H, {oracle::from(plus.point)}, 5), H, 5).size();
  c.require(aainv == 20, "|gH (gH)^-1| = " + std::to_string(aainv));
  c.require(aa > 20, "|gH gH| = " + std::to_string(aa));
  c.require(A2.size() <= 61, "|(H u {g})^2| = " + std::to_string(A2.size()));
  c.require(A3.size() >= hgh, "|(H u {g})^3| = " + std::to_string(A3.size()));
  c.detail << "|gH(gH)^-1| = " << aainv << ", |gHgH| = " << aa << ", |A^2| = " << A2.size() << ", |A^3| = " << A3.size()
           << ", |HgH| = " << hgh;
}

void c3_identities(Check& c) {
  std::mt19937_64 rng(4000);
  for (std::uint32_t p : {5u, 31u, 101u, 1009u}) {
    for (int i = 0; i < 10; ++i) {
      ZpSet A(p), B(p);
      std::size_t ka = 1 + rng() % std::min<std::uint32_t>(p, 60), kb = 1 + rng() % std::min<std::uint32_t>(p, 60);
      while (A.size() < ka) A.insert(rng() % p);
      while (B.size() < kb) B.insert(rng() % p);
      c.require(convolve(A, B) == oracle::naive_convolve(A.elements(), B.elements(), p), "convolve at p=" + std::to_string(p));
      DensityFn f = indicator(A);
      double lhs = l2_norm_squared(fourier(f)), rhs = p * l2_norm_squared(f);
      c.require(std::abs(lhs - rhs) <= 1e-6, "Parseval at p=" + std::to_string(p));
    }
  }
  for (int i = 0; i < 1000; ++i) {
    std::uint32_t p = i % 2 ? 1009 : 10007;
    QuadField K(p);
    Fq2 x, y;
    do x = K.make(rng() % p, rng() % p); while (K.is_zero(x));
    do y = K.make(rng() % p, rng() % p); while (K.is_zero(y));
    c.require(K.mul(w(K, x), w(K, y)) == K.add(w(K, K.mul(x, y)), w(K, K.div(x, y))), "w identity");
  }
  for (int i = 0; i < 500; ++i) {
    std::uint32_t p = std::vector<std::uint32_t>{5, 7, 101, 1009, 10007}[i % 5];
    SL2Group G(p);
    SL2 g = G.decode(rng() % G.order());
    Fp r{static_cast<std::uint32_t>(1 + rng() % (p - 1))};
    oracle::M d = {r.v, 0, 0, G.field().inv(r).v};
    oracle::M expect = oracle::mul(oracle::mul(oracle::from(g), d, p), oracle::inv(oracle::from(g), p), p);
    c.require(oracle::from(mandru(G, g, r)) == expect, "mandru");
  }
  c.detail << "40 convolutions, 1000 w pairs, 500 conjugations";
}

void c4_attac(Check& c) {
  int runs = 0;
  for (std::uint32_t p : {13u, 17u}) {
    SL2Group G(p);
    GroupSet H = borel_subgroup(G);
    std::mt19937_64 rng(5000 + p);
    std::vector<GroupSet> sets = {H};
    std::vector<Index> idx = H.indices();
    for (int i = 0; i < 10; ++i) {
      std::shuffle(idx.begin(), idx.end(), rng);
      std::size_t k = attac_min_size(p) + rng() % (H.size() - attac_min_size(p) + 1);
      sets.push_back(GroupSet::from_indices(G, std::span<const Index>(idx.data(), k)));
    }
    for (const GroupSet& A : sets) {
      ++runs;
      AttacResult r = attac_unipotents(A);
      c.require(r.unipotent.size() == p, "unipotent count");
      for (std::uint32_t x = 0; x < p; ++x) {
        const Word& w = r.unipotent[x];
        bool in_a = true;
        for (const Letter& l : w.letters()) in_a = in_a && A.contains(l.ref);
        c.require(in_a && w.length() <= 8 && oracle_eval(G, w) == oracle::M{1, x, 0, 1},
                  "U(" + std::to_string(x) + ") at p=" + std::to_string(p));
      }
    }
  }
  c.detail << runs << " sets, all unipotents verified";
}

void c5_factorize(Check& c) {
  const std::uint32_t p = 251;
  SL2Group G(p);
  Rng rng = trial_rng(6000, 0);
  GroupSet A(G);
  for (Index i = 0; i < G.order(); ++i) {
    if (uniform_unit(rng) < 0.96) A.insert(i);
  }
  Factorizer fz(A);
  std::size_t verified = 0, longest = 0;
  for (int t = 0; t < 100; ++t) {
    SL2 target = G.decode(uniform_below(rng, G.order()));
    Word w = fz.factorize(target);
    bool in_a = true;
    for (const Letter& l : w.letters()) in_a = in_a && A.contains(l.ref);
    bool ok = in_a && w.length() <= 64 && oracle_eval(G, w) == oracle::from(target);
    verified += ok;
    longest = std::max(longest, w.length());
  }
  c.require(verified == 100, std::to_string(verified) + "/100 verified");
  c.detail << "|A| = " << A.size() << ", " << verified << "/100 verified, longest word " << longest;
}

void c6_diameter(Check& c) {
  for (std::uint32_t p : {5u, 7u}) {
    SL2Group G(p);
    std::vector<SL2> gens = offdiag_pair(G, 1);
    int dense = oracle::dense_diameter(as_oracle(gens), p);
    c.require(static_cast<int>(bfs_diameter(CayleyContext(G, gens)).diameter) == dense,
              "diameter vs dense oracle at p=" + std::to_string(p));
  }
  std::ostringstream trend;
  for (std::uint32_t p : primes_in_range(5, 61)) {
    SL2Group G(p);
    CayleyContext ctx(G, offdiag_pair(G, 1));
    std::uint64_t d = bfs_diameter(ctx).diameter;
    std::uint64_t L = girth_depth(p);
    GirthResult g = girth(ctx, L);
    c.require(!g.girth.has_value(), "relation of length <= " + std::to_string(L) + " at p=" + std::to_string(p));
    char buf[48];
    std::snprintf(buf, sizeof buf, " %u:%llu(%.2f)", p, static_cast<unsigned long long>(d), d / std::log(static_cast<double>(p)));
    trend << buf;
  }
  c.detail << "diameter(diameter/log p):" << trend.str();
}

void c7_random_pairs(Check& c) {
  double prev = 2.0;
  for (std::uint32_t p : {11u, 31u, 61u}) {
    PairStats s = random_pairs(SL2Group(p), 200, 7000);
    double gen = s.generating_fraction(), loops = s.short_loop_fraction();
    char buf[96];
    std::snprintf(buf, sizeof buf, "p=%u gen=%.3f short=%.3f (L=%llu); ", p, gen, loops,
                  static_cast<unsigned long long>(s.girth_depth));
    c.detail << buf;
    c.require(gen >= 0.9, "generating fraction " + std::to_string(gen) + " < 0.9 at p=" + std::to_string(p));
    c.require(loops <= prev, "short-loop fraction increased at p=" + std::to_string(p));
    prev = loops;
  }
}

void c8_walk(Check& c) {
  SL2Group G(5);
  std::vector<SL2> gens = offdiag_pair(G, 1);
  CayleyContext ctx(G, gens);
  MixingResult m = mixing_time(ctx);
  int dense_n = oracle::dense_mixing_time(as_oracle(gens), 5);
  c.require(static_cast<int>(m.steps) == dense_n, "mixing time " + std::to_string(m.steps) + " vs " + std::to_string(dense_n));
  bool monotone = true;
  for (std::size_t i = 1; i < m.l1.size(); ++i) monotone = monotone && m.l1[i] <= m.l1[i - 1] + 1e-15;
  c.require(monotone, "L1 increased along the walk");
  SpectralResult dense = spectral_gap(ctx, SpectralMethod::dense);
  SpectralResult iter = spectral_gap(ctx, SpectralMethod::iterative, 1e-12);
  c.require(std::abs(dense.lambda2 - iter.lambda2) <= 1e-8, "iterative lambda2 off");
  // Independent dense eigensolve of the oracle kernel.
  const std::vector<oracle::M> elems = oracle::all_sl2(5);
  std::map<oracle::M, int> id;
  for (std::size_t i = 0; i < elems.size(); ++i) id[elems[i]] = static_cast<int>(i);
  std::set<oracle::M> steps;
  for (const oracle::M& g : as_oracle(gens)) {
    steps.insert(g);
    steps.insert(oracle::inv(g, 5));
  }
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(120, 120);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    T(i, i) += 0.5;
    for (const oracle::M& s : steps) T(i, id.at(oracle::mul(elems[i], s, 5))) += 0.5 / steps.size();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(T, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  c.require(std::abs(ev(ev.size() - 2) - dense.lambda2) <= 1e-8, "lambda2 vs oracle eigensolve");
  c.require(ev(0) >= -1e-10 && dense.lambda_min >= -1e-10, "negative eigenvalue");
  char buf[128];
  std::snprintf(buf, sizeof buf, "mixing n = %llu (oracle %d), lambda2 = %.10f, lambda_min = %.3g",
                static_cast<unsigned long long>(m.steps), dense_n, dense.lambda2, ev(0));
  c.detail << buf;
}

void c9_growth(Check& c) {
  int nonsat = 0, grew = 0, passed = 0, total = 0;
  for (std::uint32_t p : {11u, 31u}) {
    SL2Group G(p);
    std::mt19937_64 rng(9000 + p);
    for (int i = 0; i < 20; ++i, ++total) {
      GrowthReport rep = growth_certificate(random_generating(G, 10, rng), 0.5);
      passed += rep.passed();
      c.require(rep.passed(), "growth stage failed at p=" + std::to_string(p));
      if (!rep.saturated) {
        ++nonsat;
        grew += rep.tripling_exponent > 0.0;
      }
    }
  }
  c.require(grew == nonsat, "non-positive tripling exponent");
  c.detail << passed << "/" << total << " passed, " << grew << "/" << nonsat << " non-saturated with positive exponent";
}

void c10_freewords(Check& c) {
  FreeWordResult r = free_word_check(offdiag_integer_pair(3), 10007, 13, 10000, 10000);
  c.require(r.violations == 0, std::to_string(r.violations) + " words reduce to I");
  c.detail << r.trials << " words of length <= " << r.max_len << ", " << r.violations << " identities mod p, "
           << r.widened << " widened to 128 bits";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Check&)> run;
  };
  const Criterion criteria[] = {
      {1, "exact inequality suite", c1_inequalities},
      {2, "pathological fixtures at p = 5", c2_fixtures},
      {3, "identity and oracle suite", c3_identities},
      {4, "unipotents from Borel subsets", c4_attac},
      {5, "factorization at p = 251", c5_factorize},
      {6, "diameter and girth lab", c6_diameter},
      {7, "random pairs", c7_random_pairs},
      {8, "walk suite at p = 5", c8_walk},
      {9, "growth certificate sweep", c9_growth},
      {10, "free words, offdiag3 at p = 10007", c10_freewords},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail << "exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s [%d] %s (%.1fs): %s\n", c.ok ? "PASS" : "FAIL", cr.id, cr.name, secs, c.detail.str().c_str());
    std::fflush(stdout);
    failed += !c.ok;
  }
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
