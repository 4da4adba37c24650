#pragma once

// Certificates: named cardinalities plus inequalities between integer
// expressions in them. Every inequality is produced by a rule from the stored
// quantities, so a certificate can be re-evaluated from its numbers alone.

#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "sl2lab/errors.hpp"
#include "sl2lab/exact.hpp"
#include "sl2lab/sl2.hpp"

namespace sl2lab {

enum class Rel { le, lt, ge, gt };

inline const char* to_string(Rel r) {
  switch (r) {
    case Rel::le: return "<=";
    case Rel::lt: return "<";
    case Rel::ge: return ">=";
    case Rel::gt: return ">";
  }
  return "?";
}

struct Inequality {
  std::string name;
  BigInt lhs;
  Rel rel = Rel::ge;
  BigInt rhs;

  bool holds() const {
    switch (rel) {
      case Rel::le: return lhs <= rhs;
      case Rel::lt: return lhs < rhs;
      case Rel::ge: return lhs >= rhs;
      case Rel::gt: return lhs > rhs;
    }
    return false;
  }
  std::string render() const { return lhs.str() + " " + to_string(rel) + " " + rhs.str(); }
};

using Quantities = std::map<std::string, BigInt>;

namespace detail {

inline const BigInt& need(const Quantities& q, const std::string& key) {
  auto it = q.find(key);
  if (it == q.end()) throw InvariantError("certificate is missing quantity '" + key + "'");
  return it->second;
}

inline Inequality evaluate_rule(const std::string& name, const Quantities& q) {
  auto Q = [&](const char* key) -> const BigInt& { return need(q, key); };
  auto make = [&](BigInt lhs, Rel rel, BigInt rhs) { return Inequality{name, std::move(lhs), rel, std::move(rhs)}; };

  if (name == "tron") return make(Q("meet") * Q("AAAinv"), Rel::ge, Q("classes") * Q("A"));
  if (name == "crud") return make(4 * Q("B"), Rel::ge, Q("A") - 4);
  if (name == "kow") return make(4 * Q("V") * Q("A6"), Rel::ge, (Q("T") - 2) * (Q("A") - 4));
  if (name == "chich") return make(8 * Q("P"), Rel::ge, (Q("V") - 20) * Q("V") * Q("V"));
  if (name == "chich_products") return make(4 * Q("products"), Rel::ge, Q("V") - 20);
  if (name == "andu") {
    BigInt n = (Q("T") - 2) * (Q("A") - 4);
    BigInt d = 4 * Q("A6");
    return make(8 * d * d * d * Q("P"), Rel::ge, (n - 20 * d) * n * n);
  }
  if (name == "andu_containment") return make(Q("P_outside"), Rel::le, 0);
  if (name == "funn") return make(2 * Q("D") * Q("trXXinv"), Rel::ge, Q("X"));
  if (name == "unda_chain") return make(2 * big_pow(Q("trA2k0"), 3), Rel::ge, Q("X"));
  if (name == "unda_pigeonhole") return make(Q("Dt") * Q("trX"), Rel::ge, Q("D"));
  if (name == "unda_hx") return make(Q("trAk0p2"), Rel::ge, Q("Dt"));
  if (name == "kanad") return make(Q("AAAinv") * Q("A"), Rel::le, Q("AAA") * Q("AAA"));
  if (name.rfind("furcht_", 0) == 0) {
    unsigned n = static_cast<unsigned>(std::stoul(name.substr(7)));
    return make(need(q, "A_" + std::to_string(n)) * big_pow(Q("A"), n - 3), Rel::le, big_pow(Q("A_3"), n - 2));
  }
  if (name == "sorge") {
    BigInt sa2 = Q("S") * Q("A") * Q("A");
    return make(Q("sumset") * (sa2 + Q("p") * Q("p")), Rel::ge, Q("p") * sa2);
  }
  if (name == "sorge_count") return make(Q("count") * Q("c_den"), Rel::ge, (Q("c_den") - Q("c_num")) * Q("S"));
  if (name == "ruzsa_injection") return make(Q("AC") * Q("B"), Rel::le, Q("AB") * Q("BC"));
  if (name == "ruzsa_eq24") return make(Q("AAinv") * Q("A"), Rel::le, Q("AA") * Q("AA"));
  if (name == "ruzsa_eq25") return make(Q("ApA") * Q("A") * Q("A"), Rel::le, big_pow(Q("AmA"), 3));
  if (name == "bet") return make(Q("reps") * Q("B"), Rel::le, Q("AB"));
  if (name == "attac_threshold") return make(big_pow(Q("A") - 1, 3), Rel::gt, 8 * big_pow(Q("p"), 5));
  if (name == "attac_dilate") return make(3 * Q("dilate"), Rel::gt, 2 * Q("p"));
  if (name == "factorize_threshold") return make(big_pow(Q("A"), 3), Rel::gt, 216 * big_pow(Q("p"), 8));
  throw InvariantError("unknown certificate rule '" + name + "'");
}

}  // namespace detail

struct Certificate {
  std::string stage;
  Quantities quantities;
  std::map<std::string, double> measured;
  std::vector<Inequality> inequalities;
  std::vector<Index> witnesses;
  bool asserted = true;  // false: the stage only reports numbers
  bool vacuous = false;  // the bound is <= 0, so it holds trivially
  std::string note;

  explicit Certificate(std::string stage_name = {}, bool is_asserted = true)
      : stage(std::move(stage_name)), asserted(is_asserted) {}

  void set(const std::string& key, BigInt value) { quantities[key] = std::move(value); }
  const BigInt& get(const std::string& key) const { return detail::need(quantities, key); }

  const Inequality& check(const std::string& rule) {
    inequalities.push_back(detail::evaluate_rule(rule, quantities));
    return inequalities.back();
  }

  bool passed() const {
    for (const Inequality& i : inequalities) {
      if (!i.holds()) return false;
    }
    return true;
  }

  // Rebuilds every inequality from the stored quantities; true when the
  // rebuilt sides agree with the stored ones and all hold.
  bool recheck() const {
    for (const Inequality& i : inequalities) {
      Inequality again = detail::evaluate_rule(i.name, quantities);
      if (again.lhs != i.lhs || again.rhs != i.rhs || again.rel != i.rel || !again.holds()) return false;
    }
    return true;
  }

  std::string failures() const {
    std::string out;
    for (const Inequality& i : inequalities) {
      if (!i.holds()) out += (out.empty() ? "" : "; ") + i.name + ": " + i.render();
    }
    return out;
  }
};

inline nlohmann::json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return v.convert_to<std::int64_t>();
  }
  return v.str();
}

inline nlohmann::json to_json(const Certificate& c) {
  nlohmann::json q = nlohmann::json::object();
  for (const auto& [k, v] : c.quantities) q[k] = big_to_json(v);
  nlohmann::json ineq = nlohmann::json::array();
  for (const Inequality& i : c.inequalities) {
    ineq.push_back({{"name", i.name},
                    {"lhs", i.lhs.str()},
                    {"rel", to_string(i.rel)},
                    {"rhs", i.rhs.str()},
                    {"holds", i.holds()}});
  }
  nlohmann::json out = {{"stage", c.stage},     {"asserted", c.asserted},   {"vacuous", c.vacuous},
                        {"passed", c.passed()}, {"quantities", std::move(q)}, {"measured", c.measured},
                        {"inequalities", std::move(ineq)}, {"witnesses", c.witnesses}};
  if (!c.note.empty()) out["note"] = c.note;
  return out;
}

}  // namespace sl2lab
