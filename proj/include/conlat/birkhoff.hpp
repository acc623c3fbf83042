#ifndef CONLAT_BIRKHOFF_HPP_
#define CONLAT_BIRKHOFF_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "conlat/errors.hpp"
#include "conlat/joinmap.hpp"
#include "conlat/lattice.hpp"
#include "conlat/named.hpp"
#include "conlat/poset.hpp"
#include "conlat/structure.hpp"

namespace conlat {

/// B = 2^J(D) with η: D -> B and the retraction ρ: B -> D. Bit k of an
/// element of B stands for the join-irreducible `join_irreducibles[k]`.
struct BooleanExtension {
  LatticePtr d;
  LatticePtr b;
  std::vector<Elem> join_irreducibles;
  LatticeMap eta;
  JoinMap rho;
};

/// η(x) = {p ∈ J(D) : p <= x}; ρ(X) = ∨X in D.
inline BooleanExtension boolean_extension(LatticePtr const& D) {
  if (auto w = distributivity_witness(*D)) {
    fail(ErrorKind::NotDistributive, "D is not distributive", {w->first, w->second});
  }
  auto J = join_irreducibles(*D);
  if (J.size() > 16) fail(ErrorKind::SizeCapExceeded, "|J(D)| exceeds 16", {J.size()});
  auto B = boolean_lattice(J.size());
  std::vector<Elem> eta(D->size(), 0);
  for (Elem x = 0; x < D->size(); ++x) {
    for (std::size_t k = 0; k < J.size(); ++k) {
      if (D->leq(J[k], x)) eta[x] |= Elem{1} << k;
    }
  }
  std::vector<Elem> rho(B->size(), D->bottom());
  for (Elem X = 0; X < B->size(); ++X) {
    for (std::size_t k = 0; k < J.size(); ++k) {
      if ((X >> k) & 1U) rho[X] = D->join(rho[X], J[k]);
    }
  }
  BooleanExtension ext{D, B, J, LatticeMap(D, B, std::move(eta)),
                       JoinMap(B, D, std::move(rho))};
  if (!ext.eta.is_embedding()) {
    fail(ErrorKind::ConstructionUncertified, "eta is not an embedding");
  }
  for (Elem x = 0; x < D->size(); ++x) {
    if (ext.rho(ext.eta(x)) != x) {
      fail(ErrorKind::ConstructionUncertified, "rho after eta is not the identity", {x});
    }
  }
  return ext;
}

/// J(D) with the order induced from D, labelled by the element indices.
inline FinitePoset join_irreducible_poset(FiniteLattice const& D) {
  auto J = join_irreducibles(D);
  std::vector<detail::Bitset> up(J.size(), detail::Bitset(J.size()));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < J.size(); ++a) {
    labels.push_back(D.label(J[a]));
    for (std::size_t b = 0; b < J.size(); ++b) {
      if (D.leq(J[a], J[b])) up[a].set(b);
    }
  }
  return FinitePoset::from_up_sets(std::move(up), std::move(labels));
}

/// The lattice of down-sets of P ordered by inclusion.
inline LatticePtr downset_lattice(FinitePoset const& P) {
  std::size_t const n = P.size();
  // Grow down-sets by adding elements in (height, index) order; a set stays
  // down-closed iff every added element has its strict down-set inside.
  auto order = P.by_height();
  std::vector<detail::Bitset> sets{detail::Bitset(n)};
  for (auto x : order) {
    std::size_t const count = sets.size();
    for (std::size_t s = 0; s < count; ++s) {
      auto below = P.down_set(x);
      below.reset(x);
      if (below.is_subset_of(sets[s])) {
        auto t = sets[s];
        t.set(x);
        sets.push_back(std::move(t));
        check_cap(sets.size(), "downset lattice");
      }
    }
  }
  std::vector<std::string> labels;
  for (auto const& s : sets) {
    std::string l = "{";
    bool first = true;
    for (auto x = s.find_first(); x != detail::Bitset::npos; x = s.find_next(x)) {
      if (!first) l += ",";
      l += P.label(x);
      first = false;
    }
    labels.push_back(l + "}");
  }
  return make_lattice(FiniteLattice::from_order(
      sets.size(), [&](Elem a, Elem b) { return sets[a].is_subset_of(sets[b]); },
      std::move(labels)));
}

}  // namespace conlat

#endif  // CONLAT_BIRKHOFF_HPP_
