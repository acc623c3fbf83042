#ifndef CONLAT_STRUCTURE_HPP_
#define CONLAT_STRUCTURE_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "conlat/bitset.hpp"
#include "conlat/errors.hpp"
#include "conlat/lattice.hpp"

namespace conlat {

inline std::vector<Elem> atoms(FiniteLattice const& L) {
  std::vector<Elem> out;
  if (L.size() > 1) out = L.upper_covers(L.bottom());
  return out;
}

inline std::vector<Elem> coatoms(FiniteLattice const& L) {
  std::vector<Elem> out;
  if (L.size() > 1) out = L.lower_covers(L.top());
  return out;
}

/// Non-bottom elements with exactly one lower cover.
inline std::vector<Elem> join_irreducibles(FiniteLattice const& L) {
  std::vector<Elem> out;
  for (Elem a = 1; a < L.size(); ++a) {
    if (L.lower_covers(a).size() == 1) out.push_back(a);
  }
  return out;
}

/// Non-top elements with exactly one upper cover.
inline std::vector<Elem> meet_irreducibles(FiniteLattice const& L) {
  std::vector<Elem> out;
  for (Elem a = 0; a + 1 < L.size(); ++a) {
    if (L.upper_covers(a).size() == 1) out.push_back(a);
  }
  return out;
}

inline std::vector<Elem> to_elements(detail::Bitset const& s) {
  std::vector<Elem> out;
  for (auto x = s.find_first(); x != detail::Bitset::npos; x = s.find_next(x)) {
    out.push_back(static_cast<Elem>(x));
  }
  return out;
}

/// (a] = {x : x <= a}.
inline std::vector<Elem> principal_ideal(FiniteLattice const& L, Elem a) {
  return to_elements(L.down_set(a));
}

/// [a) = {x : a <= x}.
inline std::vector<Elem> principal_filter(FiniteLattice const& L, Elem a) {
  return to_elements(L.up_set(a));
}

/// [a, b]; empty when a is not below b.
inline std::vector<Elem> interval(FiniteLattice const& L, Elem a, Elem b) {
  return to_elements(L.up_set(a) & L.down_set(b));
}

inline bool is_ideal(FiniteLattice const& L, std::vector<Elem> const& s) {
  if (s.empty()) return false;
  detail::Bitset in(L.size());
  for (auto x : s) in.set(x);
  for (auto x : s) {
    if (!L.down_set(x).is_subset_of(in)) return false;
    for (auto y : s) {
      if (!in.test(L.join(x, y))) return false;
    }
  }
  return true;
}

inline bool is_filter(FiniteLattice const& L, std::vector<Elem> const& s) {
  if (s.empty()) return false;
  detail::Bitset in(L.size());
  for (auto x : s) in.set(x);
  for (auto x : s) {
    if (!L.up_set(x).is_subset_of(in)) return false;
    for (auto y : s) {
      if (!in.test(L.meet(x, y))) return false;
    }
  }
  return true;
}

/// Some x in [a, c] with x ∧ b = a and x ∨ b = c (a relative complement of b).
inline std::optional<Elem> relative_complement(FiniteLattice const& L, Elem a,
                                               Elem b, Elem c) {
  auto range = L.up_set(a) & L.down_set(c);
  for (auto x = range.find_first(); x != detail::Bitset::npos;
       x = range.find_next(x)) {
    if (L.meet(static_cast<Elem>(x), b) == a && L.join(static_cast<Elem>(x), b) == c) {
      return static_cast<Elem>(x);
    }
  }
  return std::nullopt;
}

struct TripleResult {
  bool ok = true;
  /// (a, b, c) with a <= b <= c in the domain, when ok is false.
  std::array<Elem, 3> witness{};
};

/// Relative complements in the codomain for the image of every comparable
/// triple a <= b <= c of the domain.
inline TripleResult is_relatively_complemented_in(LatticeMap const& f) {
  auto const& A = *f.domain();
  auto const& B = *f.codomain();
  for (Elem a = 0; a < A.size(); ++a) {
    for (auto b : to_elements(A.up_set(a))) {
      for (auto c : to_elements(A.up_set(b))) {
        if (!relative_complement(B, f(a), f(b), f(c))) {
          return {false, {a, b, c}};
        }
      }
    }
  }
  return {};
}

/// Every interval [0, b] complemented; witness (0, x, b) on failure.
inline TripleResult is_sectionally_complemented(FiniteLattice const& L) {
  for (Elem b = 0; b < L.size(); ++b) {
    for (auto x : to_elements(L.down_set(b))) {
      if (!relative_complement(L, 0, x, b)) return {false, {0, x, b}};
    }
  }
  return {};
}

inline TripleResult is_relatively_complemented(FiniteLattice const& L) {
  for (Elem a = 0; a < L.size(); ++a) {
    for (auto b : to_elements(L.up_set(a))) {
      for (auto c : to_elements(L.up_set(b))) {
        if (!relative_complement(L, a, b, c)) return {false, {a, b, c}};
      }
    }
  }
  return {};
}

/// Distributive iff x -> J ∩ (x] preserves joins; returns a failing pair.
inline std::optional<std::pair<Elem, Elem>> distributivity_witness(
    FiniteLattice const& L) {
  auto const J = join_irreducibles(L);
  detail::Bitset jset(L.size());
  for (auto j : J) jset.set(j);
  std::vector<detail::Bitset> below(L.size());
  for (Elem x = 0; x < L.size(); ++x) below[x] = L.down_set(x) & jset;
  for (Elem x = 0; x < L.size(); ++x) {
    for (Elem y = x + 1; y < L.size(); ++y) {
      if (!(below[L.join(x, y)] == (below[x] | below[y]))) return std::make_pair(x, y);
    }
  }
  return std::nullopt;
}

inline bool is_distributive(FiniteLattice const& L) {
  return !distributivity_witness(L).has_value();
}

/// Distributive with every join-irreducible an atom.
inline bool is_boolean(FiniteLattice const& L) {
  if (!is_distributive(L)) return false;
  for (auto j : join_irreducibles(L)) {
    if (L.lower_covers(j).front() != L.bottom()) return false;
  }
  return true;
}

/// Every element is the join of the atoms below it; returns a failing element.
inline std::optional<Elem> atomistic_witness(FiniteLattice const& L) {
  auto const A = atoms(L);
  for (Elem x = 1; x < L.size(); ++x) {
    Elem j = L.bottom();
    for (auto a : A) {
      if (L.leq(a, x)) j = L.join(j, a);
    }
    if (j != x) return x;
  }
  return std::nullopt;
}

struct Sublattice {
  LatticePtr lattice;
  LatticeMap inclusion;
};

/// The sublattice on `elements`, which must be closed under join and meet.
/// Elements keep their relative order from L.
inline Sublattice sublattice(LatticePtr const& L, std::vector<Elem> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.empty()) fail(ErrorKind::InvalidArgument, "empty sublattice");
  std::vector<Elem> pos(L->size(), static_cast<Elem>(-1));
  for (Elem k = 0; k < elements.size(); ++k) pos[elements[k]] = k;
  std::size_t const n = elements.size();
  std::vector<Elem> join(n * n), meet(n * n);
  std::vector<std::string> labels;
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      auto j = pos[L->join(elements[a], elements[b])];
      auto m = pos[L->meet(elements[a], elements[b])];
      if (j == static_cast<Elem>(-1) || m == static_cast<Elem>(-1)) {
        fail(ErrorKind::InvalidArgument, "subset is not a sublattice",
             {elements[a], elements[b]});
      }
      join[a * n + b] = j;
      meet[a * n + b] = m;
    }
  }
  if (L->has_labels()) {
    for (auto e : elements) labels.push_back(L->label(e));
  }
  auto S = make_lattice(
      FiniteLattice::from_tables(n, std::move(join), std::move(meet), std::move(labels)));
  return {S, LatticeMap(S, L, std::move(elements))};
}

/// Closure of `seeds` under join and meet.
inline std::vector<Elem> generated_sublattice(FiniteLattice const& L,
                                              std::vector<Elem> const& seeds) {
  detail::Bitset in(L.size());
  std::vector<Elem> elems;
  for (auto s : seeds) {
    if (!in.test(s)) {
      in.set(s);
      elems.push_back(s);
    }
  }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t k = 0; k <= i; ++k) {
      for (auto z : {L.join(elems[i], elems[k]), L.meet(elems[i], elems[k])}) {
        if (!in.test(z)) {
          in.set(z);
          elems.push_back(z);
        }
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

}  // namespace conlat

#endif  // CONLAT_STRUCTURE_HPP_
