#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

namespace sl2lab {

// Fixed-size dense bitset with a running population count.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::uint64_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::uint64_t size() const { return size_; }
  std::uint64_t count() const { return count_; }
  bool empty() const { return count_ == 0; }
  bool full() const { return count_ == size_; }

  bool test(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  // Returns true if the bit was newly set.
  bool set(std::uint64_t i) {
    std::uint64_t& w = words_[i >> 6];
    std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (w & mask) return false;
    w |= mask;
    ++count_;
    return true;
  }

  bool reset(std::uint64_t i) {
    std::uint64_t& w = words_[i >> 6];
    std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (!(w & mask)) return false;
    w &= ~mask;
    --count_;
    return true;
  }

  void clear() {
    std::fill(words_.begin(), words_.end(), 0);
    count_ = 0;
  }

  void fill() {
    std::fill(words_.begin(), words_.end(), ~std::uint64_t{0});
    if (size_ & 63) words_.back() = (std::uint64_t{1} << (size_ & 63)) - 1;
    count_ = size_;
  }

  Bitset& operator|=(const Bitset& other) {
    count_ = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      words_[i] |= other.words_[i];
      count_ += std::popcount(words_[i]);
    }
    return *this;
  }

  Bitset& operator&=(const Bitset& other) {
    count_ = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      words_[i] &= other.words_[i];
      count_ += std::popcount(words_[i]);
    }
    return *this;
  }

  // Clears every bit that is set in other.
  Bitset& subtract(const Bitset& other) {
    count_ = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      words_[i] &= ~other.words_[i];
      count_ += std::popcount(words_[i]);
    }
    return *this;
  }

  bool intersects(const Bitset& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & other.words_[i]) return true;
    }
    return false;
  }

  bool is_subset_of(const Bitset& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~other.words_[i]) return false;
    }
    return true;
  }

  // Calls f(i) for every set bit in increasing order.
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        f(static_cast<std::uint64_t>(wi * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::size_t word_count() const { return words_.size(); }

  // for_each restricted to the 64-bit words [w_lo, w_hi).
  template <typename F>
  void for_each_in_words(std::size_t w_lo, std::size_t w_hi, F&& f) const {
    for (std::size_t wi = w_lo; wi < w_hi && wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        f(static_cast<std::uint64_t>(wi * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<std::uint64_t> to_vector() const {
    std::vector<std::uint64_t> out;
    out.reserve(count_);
    for_each([&](std::uint64_t i) { out.push_back(i); });
    return out;
  }

  friend bool operator==(const Bitset& a, const Bitset& b) {
    return a.size_ == b.size_ && a.count_ == b.count_ && a.words_ == b.words_;
  }

 private:
  std::uint64_t size_ = 0;
  std::uint64_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace sl2lab
