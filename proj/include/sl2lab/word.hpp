#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "sl2lab/sl2.hpp"

namespace sl2lab {

// One factor of a word: the canonical index of a source element, optionally inverted.
struct Letter {
  Index ref = 0;
  bool inverted = false;

  friend constexpr bool operator==(const Letter&, const Letter&) = default;
};

// A product of source elements and their inverses, left to right.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  static Word single(Index ref, bool inverted = false) { return Word({Letter{ref, inverted}}); }

  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }

  void push_back(Letter l) { letters_.push_back(l); }
  Word& append(const Word& w) {
    letters_.insert(letters_.end(), w.letters_.begin(), w.letters_.end());
    return *this;
  }
  friend Word operator+(Word a, const Word& b) { return a.append(b); }

  // (x1 ... xn)^-1 = xn^-1 ... x1^-1
  Word inverse() const {
    Word out;
    out.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.letters_.push_back({it->ref, !it->inverted});
    return out;
  }

  SL2 evaluate(const SL2Group& G) const {
    SL2 acc = G.identity();
    for (const Letter& l : letters_) {
      SL2 x = G.decode(l.ref);
      acc = G.mul(acc, l.inverted ? G.inv(x) : x);
    }
    return acc;
  }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

// Identifies the group a word is evaluated in.
inline std::uint64_t context_hash(const SL2Group& G) {
  std::uint64_t h = 1469598103934665603ull;
  for (char ch : "SL2/F_" + std::to_string(G.p())) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ull;
  }
  return h;
}

inline nlohmann::json word_to_json(const Word& w, const SL2Group& G) {
  nlohmann::json letters = nlohmann::json::array();
  for (const Letter& l : w.letters()) letters.push_back({{"index", l.ref}, {"inverted", l.inverted}});
  return {{"context", context_hash(G)}, {"p", G.p()}, {"letters", std::move(letters)}};
}

inline Word word_from_json(const nlohmann::json& j, const SL2Group& G) {
  if (j.at("context").get<std::uint64_t>() != context_hash(G)) {
    throw ContextMismatch("word was serialized for a different group");
  }
  Word w;
  for (const auto& l : j.at("letters")) {
    Index ref = l.at("index").get<Index>();
    if (ref >= G.order()) throw DomainError("word letter index out of range");
    w.push_back({ref, l.at("inverted").get<bool>()});
  }
  return w;
}

}  // namespace sl2lab
