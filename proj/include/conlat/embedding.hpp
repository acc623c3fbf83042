#ifndef CONLAT_EMBEDDING_HPP_
#define CONLAT_EMBEDDING_HPP_

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "conlat/errors.hpp"
#include "conlat/lattice.hpp"

namespace conlat {

/// Limits for the backtracking searches. A zero timeout means none.
struct SearchBudget {
  std::size_t max_partition_size = 7;
  std::size_t max_nodes = 50'000'000;
  std::chrono::milliseconds timeout{0};
};

/// Shared node counter and deadline; nested searches draw on one budget.
class SearchContext {
 public:
  explicit SearchContext(SearchBudget budget = {})
      : budget_(budget), start_(std::chrono::steady_clock::now()) {}

  /// Counts one node; false once the budget is spent.
  bool tick() {
    if (exhausted_) return false;
    ++nodes_;
    if (nodes_ > budget_.max_nodes) exhausted_ = true;
    if (budget_.timeout.count() > 0 && (nodes_ & 1023) == 0 &&
        std::chrono::steady_clock::now() - start_ > budget_.timeout) {
      exhausted_ = true;
    }
    return !exhausted_;
  }

  bool exhausted() const noexcept { return exhausted_; }
  std::size_t nodes() const noexcept { return nodes_; }
  SearchBudget const& budget() const noexcept { return budget_; }

 private:
  SearchBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
};

struct EmbeddingOptions {
  /// Optional fixed image per domain element.
  std::vector<std::optional<Elem>> pins;
  /// Optional filter on (domain element, candidate image).
  std::function<bool(Elem, Elem)> compatible;
};

/// Calls `visit(image)` for every lattice embedding A -> B in lexicographic
/// order of image sequences until `visit` returns true. Returns true iff
/// some visit returned true.
///
/// Elements are assigned in index order. A join-reducible element is forced
/// to the join of its lower covers' images; a join-irreducible one ranges
/// over elements strictly above its lower cover's image.
template <typename Visit>
bool for_each_embedding(FiniteLattice const& A, FiniteLattice const& B,
                        EmbeddingOptions const& opt, SearchContext& ctx,
                        Visit&& visit) {
  std::size_t const n = A.size();
  if (n > B.size()) return false;
  // Pairs (a, b), a < b < z, incomparable, with a ∨ b = z.
  std::vector<std::vector<std::pair<Elem, Elem>>> join_pairs(n);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = a + 1; b < n; ++b) {
      if (!A.comparable(a, b)) join_pairs[A.join(a, b)].emplace_back(a, b);
    }
  }
  std::vector<Elem> img(n, 0);
  std::vector<bool> used(B.size(), false);
  bool stop = false;

  auto pinned = [&](Elem x) -> std::optional<Elem> {
    if (x < opt.pins.size()) return opt.pins[x];
    return std::nullopt;
  };

  auto accept = [&](Elem x, Elem t) {
    if (used[t]) return false;
    if (auto p = pinned(x); p && *p != t) return false;
    if (opt.compatible && !opt.compatible(x, t)) return false;
    for (Elem y = 0; y < x; ++y) {
      if (img[A.meet(x, y)] != B.meet(t, img[y])) return false;
    }
    for (auto [a, b] : join_pairs[x]) {
      if (B.join(img[a], img[b]) != t) return false;
    }
    return true;
  };

  std::function<void(Elem)> step = [&](Elem x) {
    if (stop || !ctx.tick()) return;
    if (x == n) {
      stop = visit(static_cast<std::vector<Elem> const&>(img));
      return;
    }
    auto const& lower = A.lower_covers(x);
    auto try_value = [&](Elem t) {
      if (!accept(x, t)) return;
      img[x] = t;
      used[t] = true;
      step(x + 1);
      used[t] = false;
    };
    if (x == 0) {
      if (auto p = pinned(0)) {
        if (*p < B.size()) try_value(*p);
      } else {
        for (Elem t = 0; t < B.size() && !stop; ++t) try_value(t);
      }
    } else if (lower.size() >= 2) {
      Elem t = img[lower[0]];
      for (auto c : lower) t = B.join(t, img[c]);
      try_value(t);
    } else {
      Elem const base = img[lower[0]];
      if (auto p = pinned(x)) {
        if (*p < B.size() && B.less(base, *p)) try_value(*p);
      } else {
        auto const& up = B.up_set(base);
        for (auto t = up.find_next(base); t != detail::Bitset::npos && !stop;
             t = up.find_next(t)) {
          try_value(static_cast<Elem>(t));
        }
      }
    }
  };
  step(0);
  return stop;
}

/// The lexicographically least embedding, if any.
inline std::optional<std::vector<Elem>> find_embedding(FiniteLattice const& A,
                                                       FiniteLattice const& B,
                                                       EmbeddingOptions const& opt,
                                                       SearchContext& ctx) {
  std::optional<std::vector<Elem>> found;
  for_each_embedding(A, B, opt, ctx, [&](std::vector<Elem> const& img) {
    found = img;
    return true;
  });
  return found;
}

}  // namespace conlat

#endif  // CONLAT_EMBEDDING_HPP_
