#ifndef CONLAT_CONGRUENCE_HPP_
#define CONLAT_CONGRUENCE_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "conlat/bitset.hpp"
#include "conlat/errors.hpp"
#include "conlat/joinmap.hpp"
#include "conlat/lattice.hpp"
#include "conlat/structure.hpp"

namespace conlat {

namespace detail {

// Union-find whose root is always the least index of its class.
class MinUnionFind {
 public:
  explicit MinUnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), Elem{0});
  }

  Elem find(Elem x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(Elem a, Elem b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

  std::vector<Elem> classes() {
    std::vector<Elem> out(parent_.size());
    for (Elem x = 0; x < out.size(); ++x) out[x] = find(x);
    return out;
  }

 private:
  std::vector<Elem> parent_;
};

}  // namespace detail

/// A congruence stored as the least index of each element's class.
class Congruence {
 public:
  /// Trusted: `classes` must already be canonical and compatible.
  Congruence(LatticePtr lattice, std::vector<Elem> classes)
      : lattice_(std::move(lattice)), classes_(std::move(classes)) {}

  /// Any labelling of the elements by block; validates compatibility.
  static Congruence from_partition(LatticePtr L, std::vector<std::size_t> const& blocks) {
    if (blocks.size() != L->size()) {
      fail(ErrorKind::InvalidArgument, "partition length differs from lattice size");
    }
    std::map<std::size_t, Elem> first;
    std::vector<Elem> cls(L->size());
    for (Elem x = 0; x < L->size(); ++x) {
      cls[x] = first.emplace(blocks[x], x).first->second;
    }
    for (Elem x = 0; x < L->size(); ++x) {
      Elem const r = cls[x];
      for (Elem z = 0; z < L->size(); ++z) {
        if (cls[L->join(x, z)] != cls[L->join(r, z)] ||
            cls[L->meet(x, z)] != cls[L->meet(r, z)]) {
          fail(ErrorKind::NotACongruence, "partition is not compatible", {x, r, z});
        }
      }
    }
    return Congruence(std::move(L), std::move(cls));
  }

  static Congruence omega(LatticePtr L) {
    std::vector<Elem> cls(L->size());
    std::iota(cls.begin(), cls.end(), Elem{0});
    return Congruence(std::move(L), std::move(cls));
  }

  static Congruence iota(LatticePtr L) {
    std::vector<Elem> cls(L->size(), 0);
    return Congruence(std::move(L), std::move(cls));
  }

  LatticePtr const& lattice() const noexcept { return lattice_; }
  std::vector<Elem> const& classes() const noexcept { return classes_; }
  std::size_t size() const noexcept { return classes_.size(); }

  Elem rep(Elem x) const { return classes_[x]; }
  bool related(Elem x, Elem y) const { return classes_[x] == classes_[y]; }

  std::size_t num_classes() const {
    std::size_t c = 0;
    for (Elem x = 0; x < classes_.size(); ++x) c += classes_[x] == x;
    return c;
  }

  bool is_omega() const { return num_classes() == classes_.size(); }
  bool is_iota() const { return num_classes() == 1; }

  /// this ⊆ other as relations.
  bool refines(Congruence const& other) const {
    for (Elem x = 0; x < classes_.size(); ++x) {
      if (!other.related(x, classes_[x])) return false;
    }
    return true;
  }

  /// The classes as sorted element lists, ordered by least element.
  std::vector<std::vector<Elem>> blocks() const {
    std::vector<std::vector<Elem>> out;
    std::vector<std::size_t> slot(classes_.size());
    for (Elem x = 0; x < classes_.size(); ++x) {
      if (classes_[x] == x) {
        slot[x] = out.size();
        out.push_back({});
      }
      out[slot[classes_[x]]].push_back(x);
    }
    return out;
  }

  friend bool operator==(Congruence const& a, Congruence const& b) {
    return a.classes_ == b.classes_;
  }

 private:
  LatticePtr lattice_;
  std::vector<Elem> classes_;
};

/// The least congruence collapsing every given pair. Each merge of x, y
/// enqueues the translates (x ∨ z, y ∨ z) and (x ∧ z, y ∧ z).
inline Congruence generate(LatticePtr const& L,
                           std::vector<std::pair<Elem, Elem>> const& pairs) {
  auto const& K = *L;
  detail::MinUnionFind uf(K.size());
  std::vector<std::pair<Elem, Elem>> queue;
  auto merge = [&](Elem x, Elem y) {
    if (uf.unite(x, y)) queue.emplace_back(x, y);
  };
  for (auto [x, y] : pairs) merge(x, y);
  while (!queue.empty()) {
    auto [x, y] = queue.back();
    queue.pop_back();
    for (Elem z = 0; z < K.size(); ++z) {
      merge(K.join(x, z), K.join(y, z));
      merge(K.meet(x, z), K.meet(y, z));
    }
  }
  return Congruence(L, uf.classes());
}

inline Congruence principal_congruence(LatticePtr const& L, Elem a, Elem b) {
  return generate(L, {{a, b}});
}

/// Join in Con L: the equivalence join, which is already a congruence.
inline Congruence join(Congruence const& a, Congruence const& b) {
  detail::MinUnionFind uf(a.size());
  for (Elem x = 0; x < a.size(); ++x) {
    uf.unite(x, a.rep(x));
    uf.unite(x, b.rep(x));
  }
  return Congruence(a.lattice(), uf.classes());
}

inline Congruence meet(Congruence const& a, Congruence const& b) {
  std::map<std::pair<Elem, Elem>, Elem> first;
  std::vector<Elem> cls(a.size());
  for (Elem x = 0; x < a.size(); ++x) {
    cls[x] = first.emplace(std::make_pair(a.rep(x), b.rep(x)), x).first->second;
  }
  return Congruence(a.lattice(), std::move(cls));
}

/// ker f: x ≡ y iff f(x) = f(y).
inline Congruence kernel(LatticeMap const& f) {
  std::map<Elem, Elem> first;
  std::vector<Elem> cls(f.image().size());
  for (Elem x = 0; x < cls.size(); ++x) cls[x] = first.emplace(f(x), x).first->second;
  return Congruence(f.domain(), std::move(cls));
}

/// Θ restricted along f: x ≡ y iff f(x) ≡ f(y) (Θ).
inline Congruence restrict_along(Congruence const& theta, LatticeMap const& f) {
  std::map<Elem, Elem> first;
  std::vector<Elem> cls(f.image().size());
  for (Elem x = 0; x < cls.size(); ++x) {
    cls[x] = first.emplace(theta.rep(f(x)), x).first->second;
  }
  return Congruence(f.domain(), std::move(cls));
}

/// Con L as an explicit lattice, ordered by refinement. Element 0 is ω and
/// the top is ι. Every congruence of a finite lattice is a join of the
/// congruences Θ(j*, j) with j join-irreducible and j* its lower cover;
/// these are the generators.
class CongruenceLattice {
 public:
  explicit CongruenceLattice(LatticePtr base) : base_(std::move(base)) {
    auto const& L = *base_;
    std::vector<Congruence> gens;
    std::set<std::vector<Elem>> seen_gen;
    for (auto j : join_irreducibles(L)) {
      auto g = principal_congruence(base_, L.lower_covers(j).front(), j);
      if (seen_gen.insert(g.classes()).second) {
        gen_pairs_.emplace_back(L.lower_covers(j).front(), j);
        gens.push_back(std::move(g));
      }
    }
    std::set<std::vector<Elem>> seen{Congruence::omega(base_).classes()};
    std::vector<Congruence> all{Congruence::omega(base_)};
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (auto const& g : gens) {
        auto c = join(all[i], g);
        if (seen.insert(c.classes()).second) {
          all.push_back(std::move(c));
          check_cap(all.size(), "congruence lattice");
        }
      }
    }
    auto const k = gens.size();
    auto gens_below = [&](Congruence const& c) {
      detail::Bitset s(k);
      for (std::size_t g = 0; g < k; ++g) {
        if (c.related(gen_pairs_[g].first, gen_pairs_[g].second)) s.set(g);
      }
      return s;
    };
    std::vector<std::pair<detail::Bitset, Congruence>> keyed;
    for (auto& c : all) keyed.emplace_back(gens_below(c), std::move(c));
    std::stable_sort(keyed.begin(), keyed.end(), [](auto const& x, auto const& y) {
      auto cx = x.first.count(), cy = y.first.count();
      if (cx != cy) return cx < cy;
      return x.second.classes() < y.second.classes();
    });
    std::size_t const m = keyed.size();
    std::vector<detail::Bitset> up(m, detail::Bitset(m));
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a; b < m; ++b) {
        if (keyed[a].first.is_subset_of(keyed[b].first)) up[a].set(b);
      }
    }
    std::vector<Elem> pos;
    auto lat = FiniteLattice::from_up_sets(std::move(up), {}, &pos);
    table_.assign(m, Congruence::omega(base_));
    for (std::size_t a = 0; a < m; ++a) {
      table_[pos[a]] = std::move(keyed[a].second);
    }
    for (Elem a = 0; a < m; ++a) index_.emplace(table_[a].classes(), a);
    lattice_ = make_lattice(std::move(lat));
    for (std::size_t g = 0; g < k; ++g) gen_index_.push_back(index_.at(gens[g].classes()));
    if (auto w = distributivity_witness(*lattice_)) {
      fail(ErrorKind::NotDistributive, "congruence lattice is not distributive",
           {w->first, w->second});
    }
  }

  LatticePtr const& base() const noexcept { return base_; }
  LatticePtr const& lattice() const noexcept { return lattice_; }
  std::size_t size() const noexcept { return table_.size(); }
  Congruence const& operator[](Elem i) const { return table_[i]; }
  std::vector<Congruence> const& table() const noexcept { return table_; }

  Elem omega() const { return 0; }
  Elem iota() const { return static_cast<Elem>(table_.size() - 1); }

  Elem index_of(Congruence const& c) const {
    auto it = index_.find(c.classes());
    if (it == index_.end()) {
      fail(ErrorKind::NotACongruence, "not a congruence of this lattice");
    }
    return it->second;
  }

  std::optional<Elem> find(std::vector<Elem> const& classes) const {
    auto it = index_.find(classes);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Index of Θ(a, b).
  Elem principal(Elem a, Elem b) const {
    return index_of(principal_congruence(base_, a, b));
  }

  /// Generating pairs (j*, j), one per distinct generator congruence.
  std::vector<std::pair<Elem, Elem>> const& generator_pairs() const noexcept {
    return gen_pairs_;
  }
  std::vector<Elem> const& generator_indices() const noexcept { return gen_index_; }

 private:
  LatticePtr base_;
  LatticePtr lattice_;
  std::vector<Congruence> table_;
  std::map<std::vector<Elem>, Elem> index_;
  std::vector<std::pair<Elem, Elem>> gen_pairs_;
  std::vector<Elem> gen_index_;
};

using CongruencesPtr = std::shared_ptr<CongruenceLattice const>;

inline CongruencesPtr all_congruences(LatticePtr const& L) {
  return std::make_shared<CongruenceLattice const>(L);
}

/// Join-0 maps between congruence lattices (or into an abstract finite
/// distributive lattice) share one representation.
using ConMap = JoinMap;

/// Con φ: Θ ↦ the congruence generated by {(φx, φy) : x ≡ y (Θ)}.
/// Computed on the generators and extended by joins; the result is checked
/// to preserve joins and zero.
inline ConMap con_map(LatticeMap const& phi, CongruenceLattice const& CA,
                      CongruenceLattice const& CB) {
  if (!same_lattice(phi.domain(), CA.base()) || !same_lattice(phi.codomain(), CB.base())) {
    fail(ErrorKind::InvalidArgument, "con_map: congruence lattices do not match the map");
  }
  auto const& ConA = *CA.lattice();
  auto const& ConB = *CB.lattice();
  auto const& pairs = CA.generator_pairs();
  std::vector<Elem> gen_img(pairs.size());
  for (std::size_t g = 0; g < pairs.size(); ++g) {
    gen_img[g] = CB.principal(phi(pairs[g].first), phi(pairs[g].second));
  }
  std::vector<Elem> img(ConA.size(), ConB.bottom());
  for (Elem t = 0; t < ConA.size(); ++t) {
    for (std::size_t g = 0; g < pairs.size(); ++g) {
      if (CA[t].related(pairs[g].first, pairs[g].second)) {
        img[t] = ConB.join(img[t], gen_img[g]);
      }
    }
  }
  return ConMap(CA.lattice(), CB.lattice(), std::move(img));
}

inline ConMap con_map(LatticeMap const& phi) {
  auto CA = all_congruences(phi.domain());
  auto CB = all_congruences(phi.codomain());
  return con_map(phi, *CA, *CB);
}

/// Con φ applied to one congruence, straight from the definition.
inline Congruence con_image(LatticeMap const& phi, Congruence const& theta) {
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem x = 0; x < theta.size(); ++x) {
    if (theta.rep(x) != x) pairs.emplace_back(phi(x), phi(theta.rep(x)));
  }
  return generate(phi.codomain(), pairs);
}

inline bool separates_zero(ConMap const& c) { return c.separates_zero(); }

struct ExtensionResult {
  bool ok = true;
  /// A congruence of the domain with zero or several extensions.
  std::optional<Congruence> witness;
  std::size_t extensions = 0;
};

/// Restriction Con(codomain) -> Con(domain) along f is a bijection.
inline ExtensionResult is_congruence_preserving_extension(LatticeMap const& f,
                                                          CongruenceLattice const& CA,
                                                          CongruenceLattice const& CB) {
  if (!f.is_embedding()) fail(ErrorKind::NotAnEmbedding, "map is not an embedding");
  std::vector<std::size_t> count(CA.size(), 0);
  for (auto const& psi : CB.table()) ++count[CA.index_of(restrict_along(psi, f))];
  for (Elem t = 0; t < CA.size(); ++t) {
    if (count[t] != 1) return {false, CA[t], count[t]};
  }
  return {};
}

inline ExtensionResult is_congruence_preserving_extension(LatticeMap const& f) {
  auto CA = all_congruences(f.domain());
  auto CB = all_congruences(f.codomain());
  return is_congruence_preserving_extension(f, *CA, *CB);
}

/// Indices of the congruences with exactly one upper cover in Con L.
inline std::vector<Elem> meet_irreducible_indices(CongruenceLattice const& C) {
  return meet_irreducibles(*C.lattice());
}

inline std::vector<Congruence> meet_irreducible_congruences(CongruenceLattice const& C) {
  std::vector<Congruence> out;
  for (auto t : meet_irreducible_indices(C)) out.push_back(C[t]);
  return out;
}

inline std::vector<Congruence> meet_irreducible_congruences(LatticePtr const& L) {
  return meet_irreducible_congruences(*all_congruences(L));
}

struct Quotient {
  LatticePtr lattice;
  LatticeMap projection;
};

/// L/Θ with classes ordered by least element (a linear extension, since
/// each class is convex and its least index is its least element).
inline Quotient quotient(LatticePtr const& L, Congruence const& theta) {
  if (!same_lattice(theta.lattice(), L)) {
    fail(ErrorKind::NotACongruence, "congruence belongs to another lattice");
  }
  std::vector<Elem> reps;
  std::vector<Elem> cls_index(L->size());
  for (Elem x = 0; x < L->size(); ++x) {
    if (theta.rep(x) == x) reps.push_back(x);
  }
  for (Elem k = 0; k < reps.size(); ++k) cls_index[reps[k]] = k;
  std::vector<Elem> proj(L->size());
  for (Elem x = 0; x < L->size(); ++x) proj[x] = cls_index[theta.rep(x)];
  std::size_t const m = reps.size();
  std::vector<Elem> join(m * m), meet(m * m);
  for (Elem a = 0; a < m; ++a) {
    for (Elem b = 0; b < m; ++b) {
      join[a * m + b] = proj[L->join(reps[a], reps[b])];
      meet[a * m + b] = proj[L->meet(reps[a], reps[b])];
    }
  }
  std::vector<std::string> labels;
  if (L->has_labels()) {
    for (auto r : reps) labels.push_back("[" + L->label(r) + "]");
  }
  auto Q = make_lattice(
      FiniteLattice::from_tables(m, std::move(join), std::move(meet), std::move(labels)));
  return {Q, LatticeMap(L, Q, std::move(proj))};
}

}  // namespace conlat

#endif  // CONLAT_CONGRUENCE_HPP_
