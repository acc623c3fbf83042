#ifndef CONLAT_NAMED_HPP_
#define CONLAT_NAMED_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "conlat/errors.hpp"
#include "conlat/lattice.hpp"

namespace conlat {

inline LatticePtr one_element() { return make_lattice(FiniteLattice()); }

/// The n-element chain 0 < 1 < ... < n-1.
inline LatticePtr chain(std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "chain needs at least one element");
  check_cap(n, "chain");
  std::vector<Elem> join(n * n), meet(n * n);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      join[a * n + b] = std::max(a, b);
      meet[a * n + b] = std::min(a, b);
    }
  }
  return make_lattice(FiniteLattice::from_tables(n, std::move(join), std::move(meet)));
}

/// 2^k; element x is the subset with bitmask x.
inline LatticePtr boolean_lattice(std::size_t k) {
  if (k >= 31) fail(ErrorKind::SizeCapExceeded, "boolean lattice too large", {k});
  std::size_t const n = std::size_t{1} << k;
  check_cap(n, "boolean lattice");
  std::vector<Elem> join(n * n), meet(n * n);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      join[a * n + b] = a | b;
      meet[a * n + b] = a & b;
    }
  }
  return make_lattice(FiniteLattice::from_tables(n, std::move(join), std::move(meet)));
}

/// 0 < a, b, c < 1.
inline LatticePtr m3() {
  return make_lattice(FiniteLattice::from_covers(
      5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}}, {"0", "a", "b", "c", "1"}));
}

/// 0 < a < b < 1 and 0 < c < 1.
inline LatticePtr n5() {
  return make_lattice(FiniteLattice::from_covers(
      5, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}}, {"0", "a", "b", "c", "1"}));
}

}  // namespace conlat

#endif  // CONLAT_NAMED_HPP_
