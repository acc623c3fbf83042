// Fixed amalgamation problems shared by the pipeline tests and the
// acceptance runner.
#ifndef CONLAT_TESTS_SUITE_HPP_
#define CONLAT_TESTS_SUITE_HPP_

#include <string>
#include <vector>

#include "conlat/conlat.hpp"

namespace suite {

using namespace conlat;

struct Named {
  std::string name;
  AmalgamationProblem problem;
};

// 2^2 with a new top: J = {a, b, c} with a, b < c.
inline LatticePtr square_plus_top() {
  return downset_lattice(FinitePoset::from_covers(3, {{0, 2}, {1, 2}}));
}

// Values of a join-0 map Con L -> D on the join-irreducible congruences.
inline AmalgamationProblem problem(LatticeMap eta1, LatticeMap eta2, LatticePtr d,
                                   std::vector<Elem> v1, std::vector<Elem> v2,
                                   bool zero_mode = true) {
  auto c1 = all_congruences(eta1.codomain());
  auto c2 = all_congruences(eta2.codomain());
  auto p1 = join_map_from_irreducibles(c1->lattice(), d, v1);
  auto p2 = join_map_from_irreducibles(c2->lattice(), d, v2);
  return AmalgamationProblem::make(std::move(eta1), std::move(eta2), d, c1, c2, p1, p2,
                                   zero_mode);
}

// Join-irreducible congruence of the 3-chain collapsing (0, m) or (m, 1).
inline std::size_t chain_slot(bool lower) {
  auto C = all_congruences(chain(3));
  auto const J = join_irreducibles(*C->lattice());
  auto const target = lower ? C->principal(0, 1) : C->principal(1, 2);
  for (std::size_t k = 0; k < J.size(); ++k) {
    if (J[k] == target) return k;
  }
  return 0;
}

// Values for the 3-chain: `lo` on Θ(0,m), `hi` on Θ(m,1).
inline std::vector<Elem> chain_values(Elem lo, Elem hi) {
  std::vector<Elem> v(2);
  v[chain_slot(true)] = lo;
  v[chain_slot(false)] = hi;
  return v;
}

inline std::vector<Named> problems() {
  auto one = one_element();
  auto two = chain(2);
  auto c3 = chain(3);
  auto sq = boolean_lattice(2);
  auto D2 = chain(2);
  auto D3 = chain(3);
  auto D4 = boolean_lattice(2);
  auto D5 = square_plus_top();
  // In D5: 1 = a, 2 = b, 4 = top.
  auto id2 = LatticeMap::identity(two);
  auto id3 = LatticeMap::identity(c3);
  LatticeMap pt2(one, two, {0});
  LatticeMap pt3(one, c3, {0});
  LatticeMap bounds3(two, c3, {0, 2});
  LatticeMap bounds_sq(two, sq, {0, 3});
  LatticeMap collapse(c3, two, {0, 0, 1});
  LatticeMap shifted(two, c3, {1, 2});
  LatticeMap constant(two, two, {0, 0});

  std::vector<Named> out;
  out.push_back({"D=2, identities, psi iso", problem(id2, id2, D2, {1}, {1})});
  out.push_back({"D=2, psi collapses", problem(id2, id2, D2, {0}, {0})});
  out.push_back({"D=3, point into two 2-chains", problem(pt2, pt2, D3, {2}, {2})});
  out.push_back({"D=3, 3-chains over their bounds",
                 problem(bounds3, bounds3, D3, chain_values(1, 2), chain_values(1, 2))});
  out.push_back({"D=3, collapsing eta", problem(collapse, collapse, D3, {2}, {2})});
  out.push_back({"D=2, shifted and constant eta, no zero",
                 problem(shifted, constant, D2, chain_values(1, 0), {1}, false)});
  out.push_back({"D=2^2, point into two 2-chains", problem(pt2, pt2, D4, {3}, {3})});
  out.push_back({"D=2^2, identity on 3-chain, psi iso",
                 problem(id3, id3, D4, chain_values(1, 2), chain_values(1, 2))});
  out.push_back({"D=2^2, squares over their bounds, swapped psi",
                 problem(bounds_sq, bounds_sq, D4, {1, 2}, {2, 1})});
  out.push_back({"D=2^2+1, point into 2-chains", problem(pt2, pt2, D5, {1}, {4})});
  out.push_back({"D=2^2+1, point into 3-chain and 2-chain",
                 problem(pt3, pt2, D5, chain_values(1, 2), {4})});
  out.push_back({"D=2^2+1, 3-chains over their bounds",
                 problem(bounds3, bounds3, D5, chain_values(1, 4), chain_values(2, 4))});
  out.push_back({"D=2^2+1, collapsing eta, zero off",
                 problem(collapse, collapse, D5, {4}, {4}, false)});
  return out;
}

}  // namespace suite

#endif  // CONLAT_TESTS_SUITE_HPP_
