#ifndef CONLAT_CHOPPED_HPP_
#define CONLAT_CHOPPED_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "conlat/bitset.hpp"
#include "conlat/errors.hpp"
#include "conlat/lattice.hpp"
#include "conlat/structure.hpp"

namespace conlat {

/// A finite bottomed poset with all meets, where two elements have a join
/// exactly when they have a common upper bound. Built as a family of
/// lattices C_k glued over a shared lattice B that sits in each C_k as an
/// ideal. Ids: B first, then each component's own elements in index order.
class ChoppedLattice {
 public:
  static constexpr Elem kNone = static_cast<Elem>(-1);

  struct Component {
    LatticePtr lattice;
    /// B -> lattice, an embedding onto an ideal.
    LatticeMap base_map;
  };

  ChoppedLattice(LatticePtr base, std::vector<Component> components)
      : base_(std::move(base)), components_(std::move(components)) {
    auto const nb = base_->size();
    std::size_t n = nb;
    ids_.resize(components_.size());
    for (std::size_t k = 0; k < components_.size(); ++k) {
      auto const& C = components_[k];
      if (!same_lattice(C.base_map.domain(), base_)) {
        fail(ErrorKind::InvalidArgument, "component map does not start at the base");
      }
      if (!C.base_map.is_embedding()) {
        fail(ErrorKind::NotAnIsomorphism, "base does not embed into a component", {k});
      }
      if (!is_ideal(*C.lattice, C.base_map.image())) {
        fail(ErrorKind::NotAnIdeal, "base image is not an ideal of a component", {k});
      }
      auto& id = ids_[k];
      id.assign(C.lattice->size(), kNone);
      for (Elem b = 0; b < nb; ++b) id[C.base_map(b)] = b;
      for (Elem c = 0; c < C.lattice->size(); ++c) {
        if (id[c] == kNone) id[c] = static_cast<Elem>(n++);
      }
    }
    check_cap(n, "chopped lattice");
    n_ = n;
    owner_.assign(n, kNone);
    local_.assign(n, 0);
    for (std::size_t k = 0; k < components_.size(); ++k) {
      for (Elem c = 0; c < ids_[k].size(); ++c) {
        if (ids_[k][c] >= nb) {
          owner_[ids_[k][c]] = static_cast<Elem>(k);
          local_[ids_[k][c]] = c;
        }
      }
    }
    for (Elem b = 0; b < nb; ++b) local_[b] = b;
    up_.assign(n, detail::Bitset(n));
    down_.assign(n, detail::Bitset(n));
    for (Elem b = 0; b < nb; ++b) {
      for (Elem c = 0; c < nb; ++c) {
        if (base_->leq(b, c)) up_[b].set(c);
      }
    }
    for (std::size_t k = 0; k < components_.size(); ++k) {
      auto const& C = *components_[k].lattice;
      for (Elem c = 0; c < C.size(); ++c) {
        for (Elem d = 0; d < C.size(); ++d) {
          if (C.leq(c, d)) up_[ids_[k][c]].set(ids_[k][d]);
        }
      }
    }
    for (Elem x = 0; x < n; ++x) {
      for (auto y = up_[x].find_first(); y != detail::Bitset::npos; y = up_[x].find_next(y)) {
        down_[y].set(x);
      }
    }
    meet_.assign(n * n, kNone);
    join_.assign(n * n, kNone);
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = x; y < n; ++y) {
        auto lb = down_[x] & down_[y];
        auto m = lb.find_last();
        if (m == detail::Bitset::npos || !lb.is_subset_of(down_[m])) {
          fail(ErrorKind::MeetUndefined, "pair has no meet in the merged poset", {x, y});
        }
        meet_[x * n + y] = meet_[y * n + x] = static_cast<Elem>(m);
        auto ub = up_[x] & up_[y];
        auto j = ub.find_first();
        if (j != detail::Bitset::npos) {
          if (!ub.is_subset_of(up_[j])) {
            fail(ErrorKind::MeetUndefined, "bounded pair has no join", {x, y});
          }
          join_[x * n + y] = join_[y * n + x] = static_cast<Elem>(j);
        }
      }
    }
  }

  std::size_t size() const noexcept { return n_; }
  bool leq(Elem a, Elem b) const { return up_[a].test(b); }
  Elem meet(Elem a, Elem b) const { return meet_[a * n_ + b]; }
  std::optional<Elem> join(Elem a, Elem b) const {
    auto j = join_[a * n_ + b];
    if (j == kNone) return std::nullopt;
    return j;
  }
  detail::Bitset const& down_set(Elem a) const { return down_[a]; }
  detail::Bitset const& up_set(Elem a) const { return up_[a]; }

  LatticePtr const& base() const noexcept { return base_; }
  std::vector<Component> const& components() const noexcept { return components_; }
  /// Id of element c of component k.
  Elem id(std::size_t k, Elem c) const { return ids_[k][c]; }

  std::vector<Elem> maximal_elements() const {
    std::vector<Elem> out;
    for (Elem x = 0; x < n_; ++x) {
      if (up_[x].count() == 1) out.push_back(x);
    }
    return out;
  }

  std::string label(Elem x) const {
    if (x < base_->size()) return base_->label(x);
    return std::to_string(owner_[x]) + ":" +
           components_[owner_[x]].lattice->label(local_[x]);
  }

 private:
  LatticePtr base_;
  std::vector<Component> components_;
  std::vector<std::vector<Elem>> ids_;
  std::vector<Elem> owner_;
  std::vector<Elem> local_;
  std::size_t n_ = 0;
  std::vector<detail::Bitset> up_;
  std::vector<detail::Bitset> down_;
  std::vector<Elem> meet_;
  std::vector<Elem> join_;
};

/// A lattice viewed as a chopped lattice with one component over {0}.
inline ChoppedLattice chopped_from_lattice(LatticePtr const& L) {
  auto base = make_lattice(FiniteLattice());
  return ChoppedLattice(base, {{L, LatticeMap(base, L, {L->bottom()})}});
}

/// Glues A and B by identifying idealA[k] with iso[k]; idealB must be the
/// set of iso values.
inline ChoppedLattice merge_chopped(LatticePtr const& A, LatticePtr const& B,
                                    std::vector<Elem> const& idealA,
                                    std::vector<Elem> const& idealB,
                                    std::vector<Elem> const& iso) {
  if (!is_ideal(*A, idealA)) fail(ErrorKind::NotAnIdeal, "first seam is not an ideal");
  if (!is_ideal(*B, idealB)) fail(ErrorKind::NotAnIdeal, "second seam is not an ideal");
  if (iso.size() != idealA.size() ||
      std::set<Elem>(iso.begin(), iso.end()) != std::set<Elem>(idealB.begin(), idealB.end()) ||
      idealB.size() != idealA.size()) {
    fail(ErrorKind::NotAnIsomorphism, "seam map is not a bijection between the ideals");
  }
  for (std::size_t i = 0; i < idealA.size(); ++i) {
    for (std::size_t j = 0; j < idealA.size(); ++j) {
      if (A->leq(idealA[i], idealA[j]) != B->leq(iso[i], iso[j])) {
        fail(ErrorKind::NotAnIsomorphism, "seam map is not an order isomorphism",
             {idealA[i], idealA[j]});
      }
    }
  }
  auto sub = sublattice(A, idealA);
  // sublattice sorts its elements; realign the iso to that order.
  std::vector<Elem> to_b(sub.lattice->size());
  for (Elem k = 0; k < to_b.size(); ++k) {
    auto a = sub.inclusion(k);
    for (std::size_t i = 0; i < idealA.size(); ++i) {
      if (idealA[i] == a) to_b[k] = iso[i];
    }
  }
  return ChoppedLattice(sub.lattice,
                        {{A, sub.inclusion}, {B, LatticeMap(sub.lattice, B, to_b)}});
}

struct IdealLattice {
  LatticePtr lattice;
  /// Chopped element id -> its principal ideal.
  std::vector<Elem> principal;
  /// Each ideal as a set of chopped element ids.
  std::vector<detail::Bitset> ideals;

  /// Component k of the chopped lattice embedded as principal ideals.
  LatticeMap component_embedding(ChoppedLattice const& C, std::size_t k) const {
    auto const& comp = C.components()[k];
    std::vector<Elem> img(comp.lattice->size());
    for (Elem c = 0; c < img.size(); ++c) img[c] = principal[C.id(k, c)];
    return LatticeMap(comp.lattice, lattice, std::move(img));
  }
};

/// Ideals of C ordered by inclusion. With maximal elements m_1..m_r, an
/// ideal is a tuple (a_i <= m_i) with m_i ∧ a_j <= a_i for all i, j; the
/// ideal is the union of the (a_i].
inline IdealLattice ideal_lattice_of_chopped(ChoppedLattice const& C) {
  auto const M = C.maximal_elements();
  std::size_t const r = M.size();
  std::vector<std::vector<Elem>> cand(r);
  for (std::size_t i = 0; i < r; ++i) cand[i] = to_elements(C.down_set(M[i]));
  std::vector<std::vector<Elem>> tuples;
  std::vector<Elem> cur(r);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == r) {
      tuples.push_back(cur);
      check_cap(tuples.size(), "ideal lattice");
      return;
    }
    for (auto a : cand[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        ok = C.leq(C.meet(M[i], cur[j]), a) && C.leq(C.meet(M[j], a), cur[j]);
      }
      if (!ok) continue;
      cur[i] = a;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  std::size_t const n = tuples.size();
  std::vector<Elem> pos;
  auto lat = FiniteLattice::from_order(
      n,
      [&](Elem x, Elem y) {
        for (std::size_t i = 0; i < r; ++i) {
          if (!C.leq(tuples[x][i], tuples[y][i])) return false;
        }
        return true;
      },
      {}, &pos);
  IdealLattice out;
  out.lattice = make_lattice(std::move(lat));
  std::vector<std::vector<Elem>> by_index(n);
  out.ideals.assign(n, detail::Bitset(C.size()));
  for (std::size_t t = 0; t < n; ++t) {
    for (auto a : tuples[t]) out.ideals[pos[t]] |= C.down_set(a);
    by_index[pos[t]] = tuples[t];
  }
  std::map<std::vector<Elem>, Elem> lookup;
  for (Elem t = 0; t < n; ++t) lookup.emplace(by_index[t], t);
  out.principal.resize(C.size());
  std::vector<Elem> key(r);
  for (Elem x = 0; x < C.size(); ++x) {
    for (std::size_t i = 0; i < r; ++i) key[i] = C.meet(M[i], x);
    out.principal[x] = lookup.at(key);
  }
  return out;
}

}  // namespace conlat

#endif  // CONLAT_CHOPPED_HPP_
