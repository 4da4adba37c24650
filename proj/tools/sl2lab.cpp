// sl2lab: batch experiments on SL2(F_p).
//
//   sl2lab diameter --p 5 --gens offdiag1 --format json
//   sl2lab growth --p 11 --random-sets 20 --size 10 --seed 7
//   sl2lab random-pairs --p-range 11:61 --trials 200 --format csv --out pairs.csv

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "sl2lab/cli.hpp"

namespace {

void add_common(CLI::App* sub, sl2lab::ExperimentConfig& cfg, std::vector<std::uint32_t>& p_list,
                std::string& p_range, std::string& out_path) {
  sub->add_option("--p", p_list, "prime(s)")->delimiter(',');
  sub->add_option("--p-range", p_range, "all primes in A:B");
  sub->add_option("--trials", cfg.trials, "number of trials")->capture_default_str();
  sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  sub->add_option("--format", cfg.format, "csv or json (JSON lines)")->capture_default_str();
  sub->add_option("--out", out_path, "write records to FILE instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact experiments on growth and diameter in SL2(F_p)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sl2lab 1.0");

  sl2lab::ExperimentConfig cfg;
  std::vector<std::uint32_t> p_list;
  std::string p_range, out_path;
  std::uint64_t depth_cap = 0, size = 0;

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"diameter", "exact Cayley-graph diameter by BFS"},
      {"girth", "shortest reduced relation up to --depth-cap"},
      {"mixing", "lazy random-walk mixing time"},
      {"spectral", "second eigenvalue of the lazy walk"},
      {"growth", "growth certificate chain on generating sets"},
      {"sumproduct", "|A+A| and |A.A| for A in F_p^*"},
      {"sorge", "dilate xi maximizing |A + xi A|"},
      {"attac", "unipotents from subsets of the Borel subgroup"},
      {"factorize", "short words for targets over a dense set"},
      {"random-pairs", "generation, girth and diameter for random pairs"},
      {"freewords", "reduced integer words reduced mod p"},
      {"fixtures", "product sizes of the coset and subgroup-plus-point sets"},
  };
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, cfg, p_list, p_range, out_path);
    const std::string name = s.name;
    if (name == "diameter" || name == "girth" || name == "mixing" || name == "spectral" || name == "growth" ||
        name == "freewords") {
      sub->add_option("--gens", cfg.gens, "offdiagK | random:K | a,b;c,d|...")->capture_default_str();
    }
    if (name == "girth" || name == "growth" || name == "freewords") {
      sub->add_option("--depth-cap", depth_cap, "girth length, escape depth or word length");
    }
    if (name == "growth") {
      sub->add_option("--random-sets", cfg.random_sets, "number of random generating sets");
      sub->add_option("--size", size, "size of each random set (default 10)");
      sub->add_option("--delta", cfg.delta, "require |A| < p^(3 - delta)")->capture_default_str();
    }
    if (name == "attac") sub->add_option("--size", size, "random subsets of this size (default: the whole subgroup)");
    if (name == "sumproduct" || name == "sorge") {
      sub->add_option("--set", cfg.set, "range:a:b | random:K | x,y,...")->capture_default_str();
    }
    if (name == "sorge") {
      sub->add_option("--dilates", cfg.dilates, "candidate set S (same syntax, or all)")->capture_default_str();
      sub->add_option("--c", cfg.c, "fraction c of the bound counted")->capture_default_str();
    }
    if (name == "factorize") {
      sub->add_option("--density", cfg.density, "density of the random set A")->capture_default_str();
      sub->add_flag("--force", cfg.force, "run below the size threshold");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (depth_cap) cfg.depth_cap = depth_cap;
  if (size) cfg.size = size;

  try {
    if (!p_list.empty() && !p_range.empty()) throw sl2lab::UsageError("give either --p or --p-range");
    cfg.primes = p_range.empty() ? p_list : sl2lab::parse_prime_range(p_range);
    cfg.validate();

    // Buffer the records so that a usage error never leaves a half-written file.
    std::ostringstream buffer;
    int code = sl2lab::run(cfg, buffer);
    if (out_path.empty()) {
      std::cout << buffer.str();
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw sl2lab::UsageError("cannot write " + out_path);
      out << buffer.str();
    }
    return code;
  } catch (const sl2lab::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const sl2lab::InvariantError& e) {
    std::cerr << "invariant breach: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
