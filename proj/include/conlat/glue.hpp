#ifndef CONLAT_GLUE_HPP_
#define CONLAT_GLUE_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "conlat/errors.hpp"
#include "conlat/lattice.hpp"
#include "conlat/structure.hpp"

namespace conlat {

struct Gluing {
  LatticePtr lattice;
  LatticeMap eps0;
  LatticeMap eps1;
};

/// Hall–Dilworth gluing of K1 on top of K0: the filter H of K0 is
/// identified with the ideal I of K1 by filter[k] ↦ iso[k]. Elements of L
/// are those of K0 (same indices) followed by K1 \ I in K1 order.
inline Gluing glue(LatticePtr const& K0, std::vector<Elem> const& filter,
                   LatticePtr const& K1, std::vector<Elem> const& ideal,
                   std::vector<Elem> const& iso) {
  if (!is_filter(*K0, filter)) fail(ErrorKind::NotAFilter, "H is not a filter of K0");
  if (!is_ideal(*K1, ideal)) fail(ErrorKind::NotAnIdeal, "I is not an ideal of K1");
  std::size_t const n0 = K0->size();
  std::size_t const n1 = K1->size();
  std::vector<Elem> to1(n0, static_cast<Elem>(-1));
  std::vector<Elem> to0(n1, static_cast<Elem>(-1));
  if (iso.size() != filter.size() || ideal.size() != filter.size()) {
    fail(ErrorKind::NotAnIsomorphism, "seam sizes differ");
  }
  detail::Bitset in_ideal(n1);
  for (auto y : ideal) in_ideal.set(y);
  for (std::size_t k = 0; k < filter.size(); ++k) {
    if (iso[k] >= n1 || !in_ideal.test(iso[k]) || to0[iso[k]] != static_cast<Elem>(-1)) {
      fail(ErrorKind::NotAnIsomorphism, "seam map is not a bijection H -> I", {filter[k]});
    }
    to1[filter[k]] = iso[k];
    to0[iso[k]] = filter[k];
  }
  for (auto a : filter) {
    for (auto b : filter) {
      if (K0->leq(a, b) != K1->leq(to1[a], to1[b])) {
        fail(ErrorKind::NotAnIsomorphism, "seam map is not an order isomorphism", {a, b});
      }
    }
  }
  std::size_t const n = n0 + n1 - filter.size();
  check_cap(n, "glued lattice");
  // L index of each K1 element.
  std::vector<Elem> e1(n1);
  std::vector<Elem> back1;  // L index - n0 -> K1 element
  for (Elem y = 0; y < n1; ++y) {
    if (in_ideal.test(y)) {
      e1[y] = to0[y];
    } else {
      e1[y] = static_cast<Elem>(n0 + back1.size());
      back1.push_back(y);
    }
  }
  Elem const h0 = K0->meet_all(filter);
  Elem const i1 = K1->join_all(ideal);
  // x ∈ K0 lies below exactly the K1 elements above lift(x).
  auto lift = [&](Elem x) { return to1[K0->join(x, h0)]; };
  auto in_k1 = [&](Elem z) -> Elem {  // K1 element for an L index on the K1 side
    return z < n0 ? to1[z] : back1[z - n0];
  };
  std::vector<Elem> join(n * n), meet(n * n);
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = x; y < n; ++y) {
      Elem j, m;
      if (y < n0) {
        j = K0->join(x, y);
        m = K0->meet(x, y);
      } else if (x >= n0 || to1[x] != static_cast<Elem>(-1)) {
        // Both on the K1 side.
        j = e1[K1->join(in_k1(x), in_k1(y))];
        m = e1[K1->meet(in_k1(x), in_k1(y))];
      } else {
        // x ∈ K0 \ H, y ∈ K1 \ I.
        j = e1[K1->join(lift(x), in_k1(y))];
        m = K0->meet(x, to0[K1->meet(in_k1(y), i1)]);
      }
      join[x * n + y] = join[y * n + x] = j;
      meet[x * n + y] = meet[y * n + x] = m;
    }
  }
  std::vector<std::string> labels;
  if (K0->has_labels() || K1->has_labels()) {
    for (Elem x = 0; x < n0; ++x) labels.push_back(K0->label(x));
    for (auto y : back1) labels.push_back(K1->label(y));
  }
  auto L = make_lattice(
      FiniteLattice::from_tables(n, std::move(join), std::move(meet), std::move(labels)));
  std::vector<Elem> id0(n0);
  for (Elem x = 0; x < n0; ++x) id0[x] = x;
  return {L, LatticeMap(K0, L, std::move(id0)), LatticeMap(K1, L, std::move(e1))};
}

}  // namespace conlat

#endif  // CONLAT_GLUE_HPP_
