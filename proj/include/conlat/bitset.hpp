#ifndef CONLAT_BITSET_HPP_
#define CONLAT_BITSET_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace conlat::detail {

// Fixed-width bitset sized at runtime; rows of order relations.
class Bitset {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const noexcept { return n_; }

  void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(std::size_t i) {
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }

  Bitset& operator&=(Bitset const& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  Bitset& operator|=(Bitset const& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  friend Bitset operator&(Bitset a, Bitset const& b) { return a &= b; }
  friend Bitset operator|(Bitset a, Bitset const& b) { return a |= b; }

  bool is_subset_of(Bitset const& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if (words_[k] & ~o.words_[k]) return false;
    }
    return true;
  }

  bool any() const {
    for (auto w : words_) {
      if (w) return true;
    }
    return false;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  std::size_t find_first() const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if (words_[k]) return k * 64 + std::countr_zero(words_[k]);
    }
    return npos;
  }

  std::size_t find_next(std::size_t i) const {
    ++i;
    if (i >= n_) return npos;
    std::size_t k = i >> 6;
    std::uint64_t w = words_[k] & (~std::uint64_t{0} << (i & 63));
    while (true) {
      if (w) return k * 64 + std::countr_zero(w);
      if (++k == words_.size()) return npos;
      w = words_[k];
    }
  }

  std::size_t find_last() const {
    for (std::size_t k = words_.size(); k-- > 0;) {
      if (words_[k]) return k * 64 + 63 - std::countl_zero(words_[k]);
    }
    return npos;
  }

  bool operator==(Bitset const&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace conlat::detail

#endif  // CONLAT_BITSET_HPP_
