#pragma once

// Experiment harness behind the sl2lab command: a validated configuration,
// one record per trial (CSV row or JSON line) plus a summary, and exit codes
// 0 (done, hypothesis failures recorded), 1 (invariant breach), 2 (usage).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "sl2lab/borel.hpp"
#include "sl2lab/cayley.hpp"
#include "sl2lab/errors.hpp"
#include "sl2lab/ffield.hpp"
#include "sl2lab/growth.hpp"
#include "sl2lab/gset.hpp"
#include "sl2lab/parallel.hpp"
#include "sl2lab/rng.hpp"
#include "sl2lab/zpadd.hpp"

namespace sl2lab {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"diameter", "girth",     "mixing",   "spectral",
                                                 "growth",   "sumproduct", "sorge",   "attac",
                                                 "factorize", "random-pairs", "freewords", "fixtures"};
  return names;
}

struct ExperimentConfig {
  std::string subcommand;
  std::vector<std::uint32_t> primes;
  std::string gens = "offdiag1";
  std::uint64_t trials = 1;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::optional<std::uint64_t> depth_cap;  // girth length, escape depth, free-word length
  std::optional<std::uint64_t> size;       // random set size
  std::uint64_t random_sets = 0;
  double delta = 0.5;
  double density = 0.96;
  std::string set = "random:10";
  std::string dilates = "all";
  std::string c = "1/2";
  bool force = false;

  nlohmann::json to_json() const {
    nlohmann::json j = {{"subcommand", subcommand}, {"primes", primes}, {"gens", gens},
                        {"trials", trials},         {"seed", seed},     {"format", format},
                        {"random_sets", random_sets}, {"delta", delta}, {"density", density},
                        {"set", set},               {"dilates", dilates}, {"c", c},
                        {"force", force}};
    j["depth_cap"] = depth_cap ? nlohmann::json(*depth_cap) : nlohmann::json(nullptr);
    j["size"] = size ? nlohmann::json(*size) : nlohmann::json(nullptr);
    return j;
  }

  // FNV-1a over the canonical JSON form, as 16 hex digits.
  std::string hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : to_json().dump()) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
  }

  void validate() const {
    if (std::find(subcommands().begin(), subcommands().end(), subcommand) == subcommands().end()) {
      throw UsageError("unknown subcommand '" + subcommand + "'");
    }
    if (primes.empty()) throw UsageError("no prime given (use --p or --p-range)");
    for (std::uint32_t p : primes) {
      if (!is_prime(p)) throw UsageError(std::to_string(p) + " is not prime");
      if (p < 3) throw UsageError("p must be an odd prime");
    }
    if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
    if (trials == 0) throw UsageError("--trials must be positive");
    if (density <= 0.0 || density > 1.0) throw UsageError("--density must lie in (0, 1]");
    if (delta <= 0.0 || delta >= 3.0) throw UsageError("--delta must lie in (0, 3)");
  }
};

inline std::vector<std::uint32_t> parse_prime_range(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--p-range expects A:B");
  std::uint64_t lo, hi;
  try {
    lo = std::stoull(text.substr(0, colon));
    hi = std::stoull(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw UsageError("--p-range expects A:B with integers, got '" + text + "'");
  }
  if (lo > hi || hi > 0xffffffffULL) throw UsageError("bad --p-range '" + text + "'");
  std::vector<std::uint32_t> out;
  for (std::uint32_t p : primes_in_range(static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi))) out.push_back(p);
  if (out.empty()) throw UsageError("no primes in " + text);
  return out;
}

// Generator specs: "offdiagK", "random:K" or literal matrices "a,b;c,d|...".
inline std::vector<SL2> parse_generators(const SL2Group& G, const std::string& spec, Rng& rng) {
  if (spec.rfind("offdiag", 0) == 0) {
    try {
      return offdiag_pair(G, std::stoll(spec.substr(7)));
    } catch (const std::invalid_argument&) {
      throw UsageError("bad generator spec '" + spec + "'");
    }
  }
  if (spec.rfind("random:", 0) == 0) {
    std::uint64_t k;
    try {
      k = std::stoull(spec.substr(7));
    } catch (const std::exception&) {
      throw UsageError("bad generator spec '" + spec + "'");
    }
    if (k == 0) throw UsageError("random generator count must be positive");
    std::vector<SL2> out;
    for (std::uint64_t i = 0; i < k; ++i) out.push_back(G.decode(uniform_below(rng, G.order())));
    return out;
  }
  std::vector<SL2> out;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t bar = spec.find('|', pos);
    std::string lit = spec.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos);
    try {
      out.push_back(G.parse(lit));
    } catch (const DomainError& e) {
      throw UsageError(std::string("bad generator literal: ") + e.what());
    }
    if (bar == std::string::npos) break;
    pos = bar + 1;
  }
  return out;
}

inline std::vector<IntMat> parse_integer_generators(const std::string& spec) {
  if (spec.rfind("offdiag", 0) == 0) {
    try {
      return offdiag_integer_pair(std::stoll(spec.substr(7)));
    } catch (const std::invalid_argument&) {
    }
  }
  std::vector<IntMat> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t bar = spec.find('|', pos);
    std::string lit = spec.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos);
    std::int64_t v[4];
    char s1, s2, s3;
    std::istringstream in(lit);
    if (!(in >> v[0] >> s1 >> v[1] >> s2 >> v[2] >> s3 >> v[3]) || s1 != ',' || s2 != ';' || s3 != ',') {
      throw UsageError("bad integer generator '" + lit + "' (expected a,b;c,d)");
    }
    try {
      out.push_back(int_mat(v[0], v[1], v[2], v[3]));
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    if (bar == std::string::npos) break;
    pos = bar + 1;
  }
  return out;
}

// Subsets of Z/pZ: "range:a:b", "random:K" (inside F_p^*) or "x,y,z".
inline ZpSet parse_zp_set(std::uint32_t p, const std::string& spec, Rng& rng) {
  try {
    if (spec.rfind("range:", 0) == 0) {
      auto colon = spec.find(':', 6);
      if (colon == std::string::npos) throw UsageError("range sets are range:a:b");
      return ZpSet::range(p, std::stoll(spec.substr(6, colon - 6)), std::stoll(spec.substr(colon + 1)));
    }
    if (spec == "all") return ZpSet::range(p, 1, p - 1);
    if (spec.rfind("random:", 0) == 0) {
      std::uint64_t k = std::stoull(spec.substr(7));
      if (k == 0 || k > p - 1) throw UsageError("random set size must lie in [1, p - 1]");
      ZpSet s(p);
      while (s.size() < k) s.insert(1 + static_cast<std::uint32_t>(uniform_below(rng, p - 1)));
      return s;
    }
    ZpSet s(p);
    std::stringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) s.insert(static_cast<std::uint32_t>(((std::stoll(item) % p) + p) % p));
    if (s.empty()) throw UsageError("empty set '" + spec + "'");
    return s;
  } catch (const std::invalid_argument&) {
    throw UsageError("bad set spec '" + spec + "'");
  } catch (const std::out_of_range&) {
    throw UsageError("bad set spec '" + spec + "'");
  }
}

inline GroupSet random_subset(const SL2Group& G, std::uint64_t k, Rng& rng) {
  if (k > G.order()) throw DomainError("subset larger than the group");
  GroupSet s(G);
  while (s.size() < k) s.insert(uniform_below(rng, G.order()));
  return s;
}

inline std::string join_word(const std::vector<std::size_t>& w, std::size_t n) {
  static const char* names = "XYZW";
  std::string out;
  for (std::size_t l : w) {
    std::size_t g = l % n;
    char ch = g < 4 ? names[g] : '?';
    out.push_back(l < n ? ch : static_cast<char>(ch - 'A' + 'a'));
  }
  return out;
}

// Writes records as JSON lines or CSV rows with a fixed column order.
class Emitter {
 public:
  Emitter(std::ostream& os, const ExperimentConfig& cfg, std::vector<std::string> columns)
      : os_(os), csv_(cfg.format == "csv"), hash_(cfg.hash()), seed_(cfg.seed) {
    columns_ = {"record", "p", "trial"};
    for (auto& c : columns) columns_.push_back(std::move(c));
    for (const char* c : {"error", "seed", "config_hash"}) columns_.push_back(c);
    if (csv_) {
      for (std::size_t i = 0; i < columns_.size(); ++i) os_ << (i ? "," : "") << columns_[i];
      os_ << "\n";
    }
  }

  void emit(nlohmann::json rec) {
    rec["seed"] = seed_;
    rec["config_hash"] = hash_;
    if (!rec.contains("record")) rec["record"] = "trial";
    if (!csv_) {
      os_ << rec.dump() << "\n";
      return;
    }
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      if (i) os_ << ",";
      auto it = rec.find(columns_[i]);
      if (it == rec.end() || it->is_null()) continue;
      os_ << cell(*it);
    }
    os_ << "\n";
  }

 private:
  static std::string cell(const nlohmann::json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }

  std::ostream& os_;
  bool csv_;
  std::string hash_;
  std::uint64_t seed_;
  std::vector<std::string> columns_;
};

namespace detail {

// Runs one trial, turning recoverable failures into an error record.
template <typename F>
nlohmann::json guarded(std::uint32_t p, std::uint64_t trial, F&& f) {
  nlohmann::json rec = {{"p", p}, {"trial", trial}};
  try {
    nlohmann::json body = f();
    for (auto& [k, v] : body.items()) rec[k] = v;
  } catch (const HypothesisError& e) {
    rec["error"] = std::string("hypothesis: ") + e.what();
  } catch (const CapExceeded& e) {
    rec["error"] = std::string("cap: ") + e.what();
  } catch (const DomainError& e) {
    rec["error"] = std::string("domain: ") + e.what();
  }
  return rec;
}

inline std::vector<nlohmann::json> run_trials(const ExperimentConfig& cfg, std::uint32_t p,
                                              const std::function<nlohmann::json(std::uint64_t)>& body) {
  return parallel_map<nlohmann::json>(cfg.trials, [&](std::size_t t) { return guarded(p, t, [&] { return body(t); }); });
}

inline std::uint64_t count_if(const std::vector<nlohmann::json>& recs, const char* key) {
  std::uint64_t n = 0;
  for (const auto& r : recs) n += r.contains(key) && r[key].is_boolean() && r[key].get<bool>();
  return n;
}

inline std::uint64_t count_errors(const std::vector<nlohmann::json>& recs) {
  std::uint64_t n = 0;
  for (const auto& r : recs) n += r.contains("error");
  return n;
}

inline nlohmann::json summary(std::uint32_t p, const std::vector<nlohmann::json>& recs) {
  return {{"record", "summary"}, {"p", p}, {"trials", recs.size()}, {"errors", count_errors(recs)}};
}

inline nlohmann::json opt(const std::optional<std::uint64_t>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

}  // namespace detail

// Summaries are written when a prime produced more than one trial record.
inline int run(const ExperimentConfig& cfg, std::ostream& os) {
  cfg.validate();
  const std::string& cmd = cfg.subcommand;
  using nlohmann::json;
  using detail::guarded;

  auto gens_for = [&](const SL2Group& G, std::uint64_t trial) {
    Rng rng = trial_rng(cfg.seed, trial);
    return parse_generators(G, cfg.gens, rng);
  };

  if (cmd == "diameter" || cmd == "girth" || cmd == "mixing" || cmd == "spectral") {
    Emitter out(os, cfg, {"generates", "girth", "diameter", "mixing_n", "lambda2"});
    for (std::uint32_t p : cfg.primes) {
      SL2Group G(p);
      gens_for(G, 0);  // surfaces bad literals as usage errors before any trial runs
      auto recs = detail::run_trials(cfg, p, [&](std::uint64_t t) -> json {
        CayleyContext ctx(G, gens_for(G, t));
        json r;
        if (cmd == "diameter") {
          SphereCounts s = bfs_spheres(ctx, kDefaultClosureCap, 1);
          r["generates"] = s.reached == G.order();
          r["closure"] = s.reached;
          if (s.reached != G.order()) {
            r["error"] = "hypothesis: generators do not generate (closure " + std::to_string(s.reached) + ")";
            return r;
          }
          r["diameter"] = s.spheres.size() - 1;
          r["spheres"] = s.spheres;
          r["diameter_over_log_p"] = static_cast<double>(s.spheres.size() - 1) / std::log(static_cast<double>(p));
        } else if (cmd == "girth") {
          std::uint64_t len = cfg.depth_cap.value_or(girth_depth(p));
          r["girth"] = detail::opt(girth(ctx, len).girth);
          r["max_len"] = len;
        } else if (cmd == "mixing") {
          MixingResult m = mixing_time(ctx);
          r["mixing_n"] = m.steps;
          r["monotone"] = m.monotone;
          r["l1"] = m.l1;
        } else {
          SpectralResult s = spectral_gap(ctx);
          double lp = std::log(static_cast<double>(p));
          r["lambda2"] = s.lambda2;
          r["gap"] = s.gap;
          r["method"] = s.method;
          r["gap_log_p"] = json::array({s.gap * lp, s.gap * lp * lp, s.gap * lp * lp * lp});
          if (s.method == "dense") r["lambda_min"] = s.lambda_min;
        }
        return r;
      });
      for (auto& r : recs) out.emit(r);
      if (recs.size() > 1) out.emit(detail::summary(p, recs));
    }
    return 0;
  }

  if (cmd == "random-pairs") {
    Emitter out(os, cfg, {"generates", "girth", "diameter", "mixing_n", "lambda2"});
    for (std::uint32_t p : cfg.primes) {
      SL2Group G(p);
      PairStats st = random_pairs(G, cfg.trials, cfg.seed);
      for (const PairRecord& r : st.records) {
        out.emit({{"p", p},
                  {"trial", r.trial},
                  {"g", G.format(G.decode(r.g))},
                  {"h", G.format(G.decode(r.h))},
                  {"generates", r.generates},
                  {"closure", r.closure},
                  {"girth", detail::opt(r.girth)},
                  {"girth_depth", st.girth_depth},
                  {"diameter", detail::opt(r.diameter)}});
      }
      out.emit({{"record", "summary"},
                {"p", p},
                {"trials", st.records.size()},
                {"generating_fraction", st.generating_fraction()},
                {"short_loop_fraction", st.short_loop_fraction()},
                {"mean_diameter", st.mean_diameter()},
                {"girth_depth", st.girth_depth}});
    }
    return 0;
  }

  if (cmd == "growth") {
    Emitter out(os, cfg, {"size", "passed", "early_exit", "k_used", "triple_size", "saturated", "tripling_exponent"});
    const std::uint64_t k = cfg.size.value_or(10);
    for (std::uint32_t p : cfg.primes) {
      SL2Group G(p);
      const std::uint64_t sets = cfg.random_sets ? cfg.random_sets : cfg.trials;
      ExperimentConfig inner = cfg;
      inner.trials = sets;
      GrowthOptions gopt;
      if (cfg.depth_cap) gopt.escape.depth_cap = static_cast<int>(*cfg.depth_cap);
      auto recs = detail::run_trials(inner, p, [&](std::uint64_t t) -> json {
        Rng rng = trial_rng(cfg.seed, t);
        GroupSet A(G);
        std::uint64_t attempts = 0;
        if (cfg.random_sets) {
          do {
            A = random_subset(G, k, rng);
            ++attempts;
            if (attempts > 1000) throw HypothesisError("no generating set found in 1000 draws");
          } while (!generates(A).generates());
        } else {
          A = GroupSet::of(G, parse_generators(G, cfg.gens, rng));
        }
        GrowthReport rep = growth_certificate(A, cfg.delta, gopt);
        json r = to_json(rep);
        r["attempts"] = attempts;
        r["set"] = A.indices();
        return r;
      });
      for (auto& r : recs) out.emit(r);
      if (recs.size() > 1) {
        json s = detail::summary(p, recs);
        std::uint64_t nonsat = 0, grew = 0;
        for (const auto& r : recs) {
          if (r.contains("saturated") && !r["saturated"].get<bool>()) {
            ++nonsat;
            grew += r["tripling_exponent"].get<double>() > 0.0;
          }
        }
        s["passed"] = detail::count_if(recs, "passed");
        s["non_saturated"] = nonsat;
        s["positive_exponent"] = grew;
        out.emit(s);
      }
    }
    return 0;
  }

  if (cmd == "sumproduct" || cmd == "sorge") {
    Emitter out(os, cfg, {"size", "sum_size", "product_size", "exponent", "xi", "sumset", "count", "passed"});
    Rational c = Rational::parse(cfg.c);
    for (std::uint32_t p : cfg.primes) {
      {
        Rng probe = trial_rng(cfg.seed, 0);
        parse_zp_set(p, cfg.set, probe);
        if (cmd == "sorge") parse_zp_set(p, cfg.dilates, probe);
      }
      auto recs = detail::run_trials(cfg, p, [&](std::uint64_t t) -> json {
        Rng rng = trial_rng(cfg.seed, t);
        ZpSet A = parse_zp_set(p, cfg.set, rng);
        json r = {{"size", A.size()}, {"set", A.elements()}};
        if (cmd == "sumproduct") {
          SumProductStats s = sumproduct_stats(A);
          r["sum_size"] = s.sum_size;
          r["product_size"] = s.product_size;
          r["exponent"] = s.exponent;
        } else {
          ZpSet S = parse_zp_set(p, cfg.dilates, rng);
          SorgeResult s = sorge_find_xi(A, S, c);
          r["xi"] = s.xi;
          r["sumset"] = s.sumset_size;
          r["count"] = s.count;
          r["passed"] = s.certificate.passed();
          r["certificate"] = to_json(s.certificate);
        }
        return r;
      });
      for (auto& r : recs) out.emit(r);
      if (recs.size() > 1) out.emit(detail::summary(p, recs));
    }
    return 0;
  }

  if (cmd == "attac") {
    Emitter out(os, cfg, {"size", "r", "t", "u", "P_r", "dilate", "max_word", "verified"});
    for (std::uint32_t p : cfg.primes) {
      SL2Group G(p);
      const GroupSet H = borel_subgroup(G);
      const std::vector<Index> h_idx = H.indices();
      auto recs = detail::run_trials(cfg, p, [&](std::uint64_t t) -> json {
        GroupSet A(G);
        if (cfg.size) {
          if (*cfg.size > h_idx.size()) throw DomainError("--size exceeds |H|");
          Rng rng = trial_rng(cfg.seed, t);
          while (A.size() < *cfg.size) A.insert(h_idx[uniform_below(rng, h_idx.size())]);
        } else {
          A = H;
        }
        AttacResult res = attac_unipotents(A);
        std::size_t longest = 0;
        for (const Word& w : res.unipotent) longest = std::max(longest, w.length());
        return {{"size", A.size()},    {"r", res.r.v},          {"t", res.t.v},     {"u", res.u.v},
                {"P_r", res.pr_size},  {"dilate", res.dilate_size}, {"max_word", longest}, {"verified", true},
                {"certificate", to_json(res.certificate)}};
      });
      for (auto& r : recs) out.emit(r);
      if (recs.size() > 1) out.emit(detail::summary(p, recs));
    }
    return 0;
  }

  if (cmd == "factorize") {
    Emitter out(os, cfg, {"size", "target", "length", "verified"});
    for (std::uint32_t p : cfg.primes) {
      SL2Group G(p);
      Rng rng = trial_rng(cfg.seed, ~std::uint64_t{0});
      GroupSet A(G);
      for (Index i = 0; i < G.order(); ++i) {
        if (uniform_unit(rng) < cfg.density) A.insert(i);
      }
      std::optional<Factorizer> F;
      json setup = guarded(p, 0, [&]() -> json {
        F.emplace(A, FactorizeOptions{cfg.force});
        return json::object();
      });
      if (!F) {
        setup["record"] = "summary";
        setup["size"] = A.size();
        out.emit(setup);
        continue;
      }
      auto recs = detail::run_trials(cfg, p, [&](std::uint64_t t) -> json {
        Rng trng = trial_rng(cfg.seed, t);
        SL2 target = G.decode(uniform_below(trng, G.order()));
        Word w = F->factorize(target);
        return {{"size", A.size()}, {"target", G.format(target)}, {"length", w.length()}, {"verified", true},
                {"word", word_to_json(w, G)}};
      });
      for (auto& r : recs) out.emit(r);
      if (recs.size() > 1) {
        json s = detail::summary(p, recs);
        std::uint64_t longest = 0;
        for (const auto& r : recs) {
          if (r.contains("length")) longest = std::max(longest, r["length"].get<std::uint64_t>());
        }
        s["verified"] = detail::count_if(recs, "verified");
        s["max_length"] = longest;
        s["size"] = A.size();
        out.emit(s);
      }
    }
    return 0;
  }

  if (cmd == "freewords") {
    Emitter out(os, cfg, {"length", "word", "identity_mod_p", "widened"});
    const std::vector<IntMat> gens = parse_integer_generators(cfg.gens);
    for (std::uint32_t p : cfg.primes) {
      const std::uint64_t len = cfg.depth_cap.value_or(free_word_max_len(p));
      try {
        check_free_word_args(p, len);
      } catch (const DomainError& e) {
        throw UsageError(e.what());
      } catch (const HypothesisError& e) {
        throw UsageError(e.what());
      }
      auto recs = detail::run_trials(cfg, p, [&](std::uint64_t t) -> json {
        Rng rng = trial_rng(cfg.seed, t);
        std::vector<std::size_t> w = random_reduced_word(rng, gens.size(), len);
        IntEval e = evaluate_integer_word(gens, w);
        return {{"length", w.size()},
                {"word", join_word(w, gens.size())},
                {"matrix", {to_string(e.m.a), to_string(e.m.b), to_string(e.m.c), to_string(e.m.d)}},
                {"identity_mod_p", reduces_to_identity(e.m, p)},
                {"widened", e.widened}};
      });
      for (auto& r : recs) out.emit(r);
      json s = detail::summary(p, recs);
      s["violations"] = detail::count_if(recs, "identity_mod_p");
      s["max_len"] = len;
      out.emit(s);
    }
    return 0;
  }

  // fixtures
  Emitter out(os, cfg, {"kind", "size"});
  for (std::uint32_t p : cfg.primes) {
    SL2Group G(p);
    json coset = guarded(p, 0, [&]() -> json {
      Fixture f = pathological_fixture(G, FixtureKind::coset);
      return {{"kind", "coset"},
              {"size", f.set.size()},
              {"A_Ainv", product_set(f.set, f.set.inverse()).size()},
              {"AA", product_set(f.set, f.set).size()}};
    });
    json plus = guarded(p, 1, [&]() -> json {
      Fixture f = pathological_fixture(G, FixtureKind::subgroup_plus_point);
      GroupSet A2 = product_set(f.set, f.set);
      GroupSet g = GroupSet::of(G, {f.point});
      return {{"kind", "subgroup_plus_point"},
              {"size", f.set.size()},
              {"A2", A2.size()},
              {"A3", product_set(A2, f.set).size()},
              {"HgH", product_set(f.subgroup, g, f.subgroup).size()}};
    });
    out.emit(coset);
    out.emit(plus);
  }
  return 0;
}

}  // namespace sl2lab
