#ifndef CONLAT_POSET_HPP_
#define CONLAT_POSET_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "conlat/bitset.hpp"
#include "conlat/errors.hpp"

namespace conlat {

/// A finite partial order on 0..n-1, stored as up-set rows. Indices are
/// kept as given (no re-indexing), unlike FiniteLattice.
class FinitePoset {
 public:
  FinitePoset() : FinitePoset(0) {}

  /// The antichain on n points.
  explicit FinitePoset(std::size_t n) : n_(n), up_(n, detail::Bitset(n)) {
    for (std::size_t a = 0; a < n; ++a) up_[a].set(a);
    finish();
  }

  static FinitePoset from_covers(
      std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> const& covers,
      std::vector<std::string> labels = {}) {
    std::vector<detail::Bitset> up(n, detail::Bitset(n));
    for (auto [a, b] : covers) {
      if (a >= n || b >= n) {
        fail(ErrorKind::InvalidArgument, "cover references an index >= n",
             {a, b});
      }
      if (a == b) fail(ErrorKind::NotAPartialOrder, "self-cover", {a, b});
      up[a].set(b);
    }
    for (std::size_t a = 0; a < n; ++a) up[a].set(a);
    // Warshall over bitset rows.
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t a = 0; a < n; ++a) {
        if (up[a].test(k)) up[a] |= up[k];
      }
    }
    return from_up_sets(std::move(up), std::move(labels));
  }

  /// `up[a]` must contain b iff a <= b. Validates reflexivity, antisymmetry
  /// and transitivity.
  static FinitePoset from_up_sets(std::vector<detail::Bitset> up,
                                  std::vector<std::string> labels = {}) {
    FinitePoset p;
    p.n_ = up.size();
    for (std::size_t a = 0; a < p.n_; ++a) up[a].set(a);
    for (std::size_t a = 0; a < p.n_; ++a) {
      for (auto b = up[a].find_first(); b != detail::Bitset::npos;
           b = up[a].find_next(b)) {
        if (b != a && up[b].test(a)) {
          fail(ErrorKind::NotAPartialOrder, "cycle in order relation", {a, b});
        }
        if (!up[b].is_subset_of(up[a])) {
          fail(ErrorKind::NotAPartialOrder, "relation is not transitive",
               {a, b});
        }
      }
    }
    p.up_ = std::move(up);
    p.labels_ = std::move(labels);
    p.finish();
    return p;
  }

  std::size_t size() const noexcept { return n_; }
  bool leq(std::size_t a, std::size_t b) const { return up_[a].test(b); }
  bool less(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }

  detail::Bitset const& up_set(std::size_t a) const { return up_[a]; }
  detail::Bitset const& down_set(std::size_t a) const { return down_[a]; }

  std::vector<std::size_t> const& lower_covers(std::size_t a) const {
    return lower_[a];
  }
  std::vector<std::size_t> const& upper_covers(std::size_t a) const {
    return upper_[a];
  }

  /// Length of the longest chain from a minimal element up to `a`.
  std::size_t height(std::size_t a) const { return height_[a]; }

  std::vector<std::size_t> minimal_elements() const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < n_; ++a) {
      if (lower_[a].empty()) out.push_back(a);
    }
    return out;
  }

  std::vector<std::size_t> maximal_elements() const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < n_; ++a) {
      if (upper_[a].empty()) out.push_back(a);
    }
    return out;
  }

  std::vector<std::pair<std::size_t, std::size_t>> covers() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t b = 0; b < n_; ++b) {
      for (auto a : lower_[b]) out.emplace_back(a, b);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<std::string> const& labels() const noexcept { return labels_; }

  std::string label(std::size_t a) const {
    return labels_.empty() ? std::to_string(a) : labels_[a];
  }

  /// Elements sorted by (height, index); a linear extension.
  std::vector<std::size_t> by_height() const {
    std::vector<std::size_t> out(n_);
    for (std::size_t a = 0; a < n_; ++a) out[a] = a;
    std::stable_sort(out.begin(), out.end(), [&](auto x, auto y) {
      return height_[x] < height_[y];
    });
    return out;
  }

 private:
  void finish() {
    down_.assign(n_, detail::Bitset(n_));
    for (std::size_t a = 0; a < n_; ++a) {
      for (auto b = up_[a].find_first(); b != detail::Bitset::npos;
           b = up_[a].find_next(b)) {
        down_[b].set(a);
      }
    }
    lower_.assign(n_, {});
    upper_.assign(n_, {});
    for (std::size_t b = 0; b < n_; ++b) {
      // a < b is a cover iff no c with a < c < b.
      for (auto a = down_[b].find_first(); a != detail::Bitset::npos;
           a = down_[b].find_next(a)) {
        if (a == b) continue;
        bool cover = true;
        for (auto c = up_[a].find_first(); c != detail::Bitset::npos;
             c = up_[a].find_next(c)) {
          if (c != a && c != b && up_[c].test(b)) {
            cover = false;
            break;
          }
        }
        if (cover) {
          lower_[b].push_back(a);
          upper_[a].push_back(b);
        }
      }
    }
    height_.assign(n_, 0);
    // Longest chain below: repeat relaxation over a topological order.
    std::vector<std::size_t> order(n_);
    for (std::size_t a = 0; a < n_; ++a) order[a] = a;
    std::sort(order.begin(), order.end(), [&](auto x, auto y) {
      return down_[x].count() < down_[y].count();
    });
    for (auto b : order) {
      for (auto a : lower_[b]) height_[b] = std::max(height_[b], height_[a] + 1);
    }
  }

  std::size_t n_ = 0;
  std::vector<detail::Bitset> up_;
  std::vector<detail::Bitset> down_;
  std::vector<std::vector<std::size_t>> lower_;
  std::vector<std::vector<std::size_t>> upper_;
  std::vector<std::size_t> height_;
  std::vector<std::string> labels_;
};

}  // namespace conlat

#endif  // CONLAT_POSET_HPP_
