#ifndef ESER_BITSET_HPP
#define ESER_BITSET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace eser {

/// Growable bitset over non-negative integers.
class BitSet {
 public:
  void set(std::size_t i) {
    const std::size_t w = i / 64;
    if (w >= words_.size()) words_.resize(w + 1, 0);
    words_[w] |= std::uint64_t{1} << (i % 64);
  }

  void reset(std::size_t i) {
    const std::size_t w = i / 64;
    if (w < words_.size()) words_[w] &= ~(std::uint64_t{1} << (i % 64));
    trim();
  }

  bool test(std::size_t i) const {
    const std::size_t w = i / 64;
    return w < words_.size() && (words_[w] >> (i % 64)) & 1U;
  }

  bool empty() const { return words_.empty(); }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  /// Highest set index.
  std::optional<std::size_t> highest() const {
    if (words_.empty()) return std::nullopt;
    const std::size_t w = words_.size() - 1;
    return w * 64 + 63 - static_cast<std::size_t>(std::countl_zero(words_[w]));
  }

  BitSet& operator|=(const BitSet& o) {
    if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
    for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  std::vector<std::size_t> to_vector() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  friend bool operator==(const BitSet&, const BitSet&) = default;

 private:
  // No trailing zero words, so equality and highest() stay trivial.
  void trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }

  std::vector<std::uint64_t> words_;
};

}  // namespace eser

#endif  // ESER_BITSET_HPP
