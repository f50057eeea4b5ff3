#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <vector>

namespace abcprop {

// Fixed-capacity set of small non-negative integers. Word operations are the
// inner loop of every verifier, so there is no heap allocation and no bounds
// checking beyond assertions in debug builds.
template <std::size_t Bits>
class FixedBitset {
  static constexpr std::size_t kWords = (Bits + 63) / 64;

 public:
  static constexpr std::size_t capacity() { return Bits; }

  constexpr FixedBitset() = default;
  FixedBitset(std::initializer_list<int> items) {
    for (int i : items) set(i);
  }
  template <typename Range>
  static FixedBitset from(const Range& items) {
    FixedBitset out;
    for (int i : items) out.set(i);
    return out;
  }
  // {0, 1, ..., count - 1}
  static FixedBitset prefix(int count) {
    FixedBitset out;
    for (int i = 0; i < count; ++i) out.set(i);
    return out;
  }

  void set(int i) { words_[word(i)] |= mask(i); }
  void reset(int i) { words_[word(i)] &= ~mask(i); }
  bool test(int i) const { return (words_[word(i)] & mask(i)) != 0; }
  void clear() { words_.fill(0); }

  int count() const {
    int total = 0;
    for (auto w : words_) total += std::popcount(w);
    return total;
  }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }
  bool empty() const { return !any(); }

  // |this & other| without materialising the intersection.
  int count_and(const FixedBitset& other) const {
    int total = 0;
    for (std::size_t i = 0; i < kWords; ++i) total += std::popcount(words_[i] & other.words_[i]);
    return total;
  }
  bool intersects(const FixedBitset& other) const {
    for (std::size_t i = 0; i < kWords; ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }
  bool is_subset_of(const FixedBitset& other) const {
    for (std::size_t i = 0; i < kWords; ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  FixedBitset& operator&=(const FixedBitset& o) {
    for (std::size_t i = 0; i < kWords; ++i) words_[i] &= o.words_[i];
    return *this;
  }
  FixedBitset& operator|=(const FixedBitset& o) {
    for (std::size_t i = 0; i < kWords; ++i) words_[i] |= o.words_[i];
    return *this;
  }
  // Set difference.
  FixedBitset& operator-=(const FixedBitset& o) {
    for (std::size_t i = 0; i < kWords; ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend FixedBitset operator&(FixedBitset a, const FixedBitset& b) { return a &= b; }
  friend FixedBitset operator|(FixedBitset a, const FixedBitset& b) { return a |= b; }
  friend FixedBitset operator-(FixedBitset a, const FixedBitset& b) { return a -= b; }
  friend bool operator==(const FixedBitset&, const FixedBitset&) = default;

  // Lowest member >= from, or -1.
  int next(int from) const {
    if (from < 0) from = 0;
    std::size_t w = static_cast<std::size_t>(from) / 64;
    if (w >= kWords) return -1;
    std::uint64_t bits = words_[w] & (~std::uint64_t{0} << (from % 64));
    while (true) {
      if (bits) return static_cast<int>(w * 64 + std::countr_zero(bits));
      if (++w >= kWords) return -1;
      bits = words_[w];
    }
  }
  int first() const { return next(0); }

  class const_iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    using pointer = const int*;
    using reference = int;

    const_iterator() = default;
    const_iterator(const FixedBitset* set, int pos) : set_(set), pos_(pos) {}
    int operator*() const { return pos_; }
    const_iterator& operator++() {
      pos_ = set_->next(pos_ + 1);
      return *this;
    }
    const_iterator operator++(int) {
      auto old = *this;
      ++*this;
      return old;
    }
    friend bool operator==(const const_iterator& a, const const_iterator& b) { return a.pos_ == b.pos_; }

   private:
    const FixedBitset* set_ = nullptr;
    int pos_ = -1;
  };
  const_iterator begin() const { return {this, first()}; }
  const_iterator end() const { return {this, -1}; }

  std::vector<int> to_vector() const { return {begin(), end()}; }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto w : words_) h = (h ^ w) * 1099511628211ULL;
    return static_cast<std::size_t>(h);
  }

 private:
  static std::size_t word(int i) { return static_cast<std::size_t>(i) / 64; }
  static std::uint64_t mask(int i) { return std::uint64_t{1} << (static_cast<unsigned>(i) % 64); }

  std::array<std::uint64_t, kWords> words_{};
};

inline constexpr int kMaxCandidates = 256;
inline constexpr int kMaxVoters = 1024;

using CandidateSet = FixedBitset<kMaxCandidates>;
using VoterSet = FixedBitset<kMaxVoters>;

struct BitsetHash {
  template <std::size_t B>
  std::size_t operator()(const FixedBitset<B>& s) const {
    return s.hash();
  }
};

}  // namespace abcprop
