#ifndef CONLAT_PROPERTIES_HPP_
#define CONLAT_PROPERTIES_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "conlat/congruence.hpp"
#include "conlat/lattice.hpp"
#include "conlat/structure.hpp"

namespace conlat {

struct Properties {
  bool simple = false;
  bool atomistic = false;
  bool sectionally_complemented = false;
  bool relatively_complemented = false;
  bool distributive = false;
  bool boolean = false;
  /// Witness per failed flag, keyed by flag name.
  std::vector<std::pair<std::string, std::vector<std::size_t>>> witnesses;

  std::vector<std::size_t> const* witness(std::string const& flag) const {
    for (auto const& [k, w] : witnesses) {
      if (k == flag) return &w;
    }
    return nullptr;
  }
};

/// Simple: exactly two congruences. A generator Θ(j*, j) below ι is a
/// witness of non-simplicity.
inline std::optional<std::pair<Elem, Elem>> simplicity_witness(LatticePtr const& L) {
  if (L->size() < 2) return std::make_pair(Elem{0}, Elem{0});
  for (auto j : join_irreducibles(*L)) {
    auto c = principal_congruence(L, L->lower_covers(j).front(), j);
    if (!c.is_iota()) return std::make_pair(L->lower_covers(j).front(), j);
  }
  return std::nullopt;
}

inline bool is_simple(LatticePtr const& L) { return !simplicity_witness(L); }

/// Every flag by exhaustive scan.
inline Properties check_properties(LatticePtr const& L) {
  Properties p;
  auto add = [&](char const* name, std::vector<std::size_t> w) {
    p.witnesses.emplace_back(name, std::move(w));
  };
  if (auto w = simplicity_witness(L)) {
    add("simple", {w->first, w->second});
  } else {
    p.simple = true;
  }
  if (auto w = atomistic_witness(*L)) {
    add("atomistic", {*w});
  } else {
    p.atomistic = true;
  }
  if (auto r = is_sectionally_complemented(*L); !r.ok) {
    add("sectionally_complemented", {r.witness[0], r.witness[1], r.witness[2]});
  } else {
    p.sectionally_complemented = true;
  }
  if (auto r = is_relatively_complemented(*L); !r.ok) {
    add("relatively_complemented", {r.witness[0], r.witness[1], r.witness[2]});
  } else {
    p.relatively_complemented = true;
  }
  if (auto w = distributivity_witness(*L)) {
    add("distributive", {w->first, w->second});
  } else {
    p.distributive = true;
  }
  p.boolean = p.distributive && is_boolean(*L);
  if (!p.boolean) add("boolean", {});
  return p;
}

}  // namespace conlat

#endif  // CONLAT_PROPERTIES_HPP_
