#ifndef CONLAT_ENUMERATE_HPP_
#define CONLAT_ENUMERATE_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

#include "conlat/errors.hpp"
#include "conlat/isomorphism.hpp"
#include "conlat/lattice.hpp"
#include "conlat/structure.hpp"

namespace conlat {

namespace detail {

/// Naturally labelled partial orders on k points: i < j only if i < j as
/// integers, given as upper-triangular relation bits.
inline std::vector<std::vector<std::vector<bool>>> natural_orders(std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
  }
  std::vector<std::vector<std::vector<bool>>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << pairs.size()); ++mask) {
    std::vector<std::vector<bool>> lt(k, std::vector<bool>(k, false));
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if (mask >> p & 1) lt[pairs[p].first][pairs[p].second] = true;
    }
    bool transitive = true;
    for (std::size_t a = 0; a < k && transitive; ++a) {
      for (std::size_t b = a + 1; b < k && transitive; ++b) {
        if (!lt[a][b]) continue;
        for (std::size_t c = b + 1; c < k; ++c) {
          if (lt[b][c] && !lt[a][c]) {
            transitive = false;
            break;
          }
        }
      }
    }
    if (transitive) out.push_back(std::move(lt));
  }
  return out;
}

}  // namespace detail

/// All lattices with exactly n elements up to isomorphism: the n-2 middle
/// elements run over naturally labelled posets, bounds are added, non-lattices
/// are dropped, and isomorphic copies are rejected.
inline std::vector<LatticePtr> enumerate_lattices_of_size(std::size_t n) {
  if (n > 7) fail(ErrorKind::SizeCapExceeded, "lattice enumeration is limited to 7 elements", {n});
  if (n == 0) return {};
  if (n == 1) return {make_lattice(FiniteLattice())};
  std::size_t const k = n - 2;
  std::map<std::vector<std::size_t>, std::vector<LatticePtr>> buckets;
  std::vector<LatticePtr> out;
  for (auto const& lt : detail::natural_orders(k)) {
    auto leq = [&](Elem a, Elem b) {
      if (a == 0 || b == n - 1) return true;
      if (b == 0 || a == n - 1) return false;
      return a == b || lt[a - 1][b - 1];
    };
    std::vector<detail::Bitset> up(n, detail::Bitset(n));
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        if (leq(a, b)) up[a].set(b);
      }
    }
    LatticePtr L;
    try {
      L = make_lattice(FiniteLattice::from_up_sets(std::move(up)));
    } catch (LatticeError const& e) {
      if (e.kind() != ErrorKind::NotALattice) throw;
      continue;
    }
    std::vector<std::size_t> key;
    for (Elem a = 0; a < n; ++a) {
      key.push_back(L->upper_covers(a).size() * n + L->lower_covers(a).size());
    }
    std::sort(key.begin(), key.end());
    auto& bucket = buckets[key];
    bool seen = false;
    for (auto const& M : bucket) {
      if (isomorphic(*M, *L)) {
        seen = true;
        break;
      }
    }
    if (seen) continue;
    bucket.push_back(L);
    out.push_back(L);
  }
  return out;
}

/// Every lattice with at most n_max elements, grouped by size.
inline std::vector<LatticePtr> enumerate_small_lattices(std::size_t n_max) {
  if (n_max > 7) {
    fail(ErrorKind::SizeCapExceeded, "lattice enumeration is limited to 7 elements", {n_max});
  }
  std::vector<LatticePtr> out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    auto part = enumerate_lattices_of_size(n);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace conlat

#endif  // CONLAT_ENUMERATE_HPP_
