#ifndef CONLAT_ISOMORPHISM_HPP_
#define CONLAT_ISOMORPHISM_HPP_

#include <algorithm>
#include <optional>
#include <tuple>
#include <vector>

#include "conlat/embedding.hpp"
#include "conlat/lattice.hpp"

namespace conlat {

namespace detail {

using Signature = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t,
                             std::size_t>;

inline Signature signature(FiniteLattice const& L, Elem x) {
  return {L.height(x), L.lower_covers(x).size(), L.upper_covers(x).size(),
          L.down_set(x).count(), L.up_set(x).count()};
}

inline std::vector<Signature> signatures(FiniteLattice const& L) {
  std::vector<Signature> s(L.size());
  for (Elem x = 0; x < L.size(); ++x) s[x] = signature(L, x);
  return s;
}

}  // namespace detail

/// Calls `visit(image)` for every isomorphism A -> B until it returns true.
template <typename Visit>
bool for_each_isomorphism(FiniteLattice const& A, FiniteLattice const& B,
                          Visit&& visit) {
  if (A.size() != B.size()) return false;
  auto sa = detail::signatures(A);
  auto sb = detail::signatures(B);
  {
    auto x = sa, y = sb;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return false;
  }
  EmbeddingOptions opt;
  opt.compatible = [&](Elem a, Elem b) { return sa[a] == sb[b]; };
  SearchBudget unlimited;
  unlimited.max_nodes = static_cast<std::size_t>(-1);
  SearchContext ctx(unlimited);
  return for_each_embedding(A, B, opt, ctx, visit);
}

/// An isomorphism A -> B if one exists. Exact backtracking with invariant
/// pruning (height, cover degrees, principal ideal and filter sizes).
inline std::optional<LatticeMap> is_isomorphic(LatticePtr const& A,
                                               LatticePtr const& B) {
  std::optional<LatticeMap> out;
  for_each_isomorphism(*A, *B, [&](std::vector<Elem> const& img) {
    out.emplace(A, B, img);
    return true;
  });
  return out;
}

inline bool isomorphic(FiniteLattice const& A, FiniteLattice const& B) {
  return for_each_isomorphism(A, B, [](auto const&) { return true; });
}

}  // namespace conlat

#endif  // CONLAT_ISOMORPHISM_HPP_
