#ifndef CONLAT_CONSTRUCTIONS_HPP_
#define CONLAT_CONSTRUCTIONS_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conlat/birkhoff.hpp"
#include "conlat/chopped.hpp"
#include "conlat/congruence.hpp"
#include "conlat/embedding.hpp"
#include "conlat/errors.hpp"
#include "conlat/isomorphism.hpp"
#include "conlat/joinmap.hpp"
#include "conlat/lattice.hpp"
#include "conlat/named.hpp"
#include "conlat/partition.hpp"
#include "conlat/report.hpp"
#include "conlat/structure.hpp"

namespace conlat {

namespace detail {

inline std::size_t bell(std::size_t m) {
  // Bell triangle.
  std::vector<std::size_t> row{1};
  for (std::size_t i = 1; i < m; ++i) {
    std::vector<std::size_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return m == 0 ? 1 : row.back();
}

// Part(m) can hold L only if it has enough elements and a long enough chain.
inline bool partition_size_feasible(FiniteLattice const& L, std::size_t m) {
  return bell(m) >= L.size() && m >= L.length() + 1;
}

}  // namespace detail

struct SimpleExtension {
  LatticePtr s;
  LatticeMap emb;
  Elem dual_atom;
  std::size_t m;
};

/// A zero-preserving embedding of L into the smallest Part(m), m >= 2, that
/// admits one. Part(m) is simple, relatively complemented and has a dual
/// atom; the embedding is checked to be relatively complemented in S.
inline SimpleExtension simple_sc_extension(LatticePtr const& L, SearchBudget budget = {}) {
  SearchContext ctx(budget);
  std::size_t tried = 0;
  for (std::size_t m = 2; m <= budget.max_partition_size; ++m) {
    tried = m;
    if (!detail::partition_size_feasible(*L, m)) continue;
    auto S = partition_lattice(m);
    EmbeddingOptions opt;
    opt.pins.assign(L->size(), std::nullopt);
    opt.pins[0] = S->bottom();
    auto img = find_embedding(*L, *S, opt, ctx);
    if (img) {
      LatticeMap emb(L, S, std::move(*img));
      if (auto r = is_relatively_complemented_in(emb); !r.ok) {
        fail(ErrorKind::ConstructionUncertified,
             "embedding into a partition lattice is not relatively complemented",
             {r.witness[0], r.witness[1], r.witness[2]});
      }
      return {S, std::move(emb), coatoms(*S).front(), m};
    }
    if (ctx.exhausted()) break;
  }
  fail(ErrorKind::SearchExhausted, "no embedding into a partition lattice within budget",
       {tried});
}

struct Amalgam {
  /// The sublattice of the host generated by both images.
  LatticePtr k;
  LatticeMap a1;
  LatticeMap a2;
  /// The partition lattice the search ran in, and the maps into it.
  LatticePtr host;
  LatticeMap host_inclusion;
  LatticeMap host_a1;
  LatticeMap host_a2;
  std::size_t m;
};

/// Finite amalgam of two embeddings η1: L0 -> L1, η2: L0 -> L2: the first
/// pair of embeddings of L1 and L2 into Part(m), m = min_m, min_m + 1, ...,
/// that agree on L0 (a1∘η1 = a2∘η2). Both bottoms are pinned to the
/// discrete partition when both η_i preserve zero.
inline Amalgam amalgamate(LatticeMap const& eta1, LatticeMap const& eta2,
                          SearchBudget budget = {}, std::size_t min_m = 1) {
  if (!same_lattice(eta1.domain(), eta2.domain())) {
    fail(ErrorKind::InvalidArgument, "amalgamate: maps have different domains");
  }
  if (!eta1.is_embedding() || !eta2.is_embedding()) {
    fail(ErrorKind::NotAnEmbedding, "amalgamate needs two embeddings");
  }
  auto const& L0 = *eta1.domain();
  auto const& L1 = eta1.codomain();
  auto const& L2 = eta2.codomain();
  bool const pin_zero = eta1.preserves_zero() && eta2.preserves_zero();
  SearchContext ctx(budget);
  std::size_t tried = 0;
  for (std::size_t m = std::max<std::size_t>(min_m, 1); m <= budget.max_partition_size; ++m) {
    tried = m;
    if (!detail::partition_size_feasible(*L1, m) || !detail::partition_size_feasible(*L2, m)) {
      continue;
    }
    auto S = partition_lattice(m);
    EmbeddingOptions o1;
    o1.pins.assign(L1->size(), std::nullopt);
    if (pin_zero) o1.pins[0] = S->bottom();
    std::vector<Elem> img1, img2;
    bool found = for_each_embedding(*L1, *S, o1, ctx, [&](std::vector<Elem> const& f1) {
      EmbeddingOptions o2;
      o2.pins.assign(L2->size(), std::nullopt);
      if (pin_zero) o2.pins[0] = S->bottom();
      for (Elem x = 0; x < L0.size(); ++x) o2.pins[eta2(x)] = f1[eta1(x)];
      auto f2 = find_embedding(*L2, *S, o2, ctx);
      if (!f2) return false;
      img1 = f1;
      img2 = std::move(*f2);
      return true;
    });
    if (found) {
      std::vector<Elem> seeds = img1;
      seeds.insert(seeds.end(), img2.begin(), img2.end());
      auto sub = sublattice(S, generated_sublattice(*S, seeds));
      std::vector<Elem> pos(S->size(), 0);
      for (Elem k = 0; k < sub.lattice->size(); ++k) pos[sub.inclusion(k)] = k;
      std::vector<Elem> a1(img1.size()), a2(img2.size());
      for (Elem x = 0; x < a1.size(); ++x) a1[x] = pos[img1[x]];
      for (Elem x = 0; x < a2.size(); ++x) a2[x] = pos[img2[x]];
      return {sub.lattice,
              LatticeMap(L1, sub.lattice, std::move(a1)),
              LatticeMap(L2, sub.lattice, std::move(a2)),
              S,
              sub.inclusion,
              LatticeMap(L1, S, std::move(img1)),
              LatticeMap(L2, S, std::move(img2)),
              m};
    }
    if (ctx.exhausted()) break;
  }
  fail(ErrorKind::SearchExhausted, "no amalgam in a partition lattice within budget", {tried});
}

/// A sectionally complemented lattice l with an isomorphism α: Con l -> D.
/// atoms[k] is the atom d_p of l for p = join_irreducibles[k].
struct Representation {
  LatticePtr d;
  LatticePtr l;
  CongruencesPtr con;
  JoinMap alpha;
  std::vector<Elem> join_irreducibles;
  std::vector<Elem> atoms;
  int tier = 0;

  /// ∨ d_p, the top of the Boolean ideal generated by the atoms.
  Elem ideal_top() const { return l->join_all(atoms); }

  /// Dual atoms of that ideal: ∨{d_q : q ≠ p}.
  std::vector<Elem> ideal_dual_atoms() const {
    std::vector<Elem> out;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      Elem x = l->bottom();
      for (std::size_t j = 0; j < atoms.size(); ++j) {
        if (j != k) x = l->join(x, atoms[j]);
      }
      out.push_back(x);
    }
    return out;
  }
};

namespace detail {

// α(Θ) = ∨{p : d_p ≡ 0 (Θ)}.
inline JoinMap representation_alpha(LatticePtr const& D, CongruenceLattice const& C,
                                    std::vector<Elem> const& J, std::vector<Elem> const& atoms) {
  std::vector<Elem> img(C.size(), D->bottom());
  for (Elem t = 0; t < C.size(); ++t) {
    for (std::size_t k = 0; k < J.size(); ++k) {
      if (C[t].related(atoms[k], 0)) img[t] = D->join(img[t], J[k]);
    }
  }
  return JoinMap(C.lattice(), D, std::move(img));
}

// [0, ∨ atoms] is Boolean and its atoms are exactly `atoms`.
inline bool atoms_generate_boolean_ideal(FiniteLattice const& l, std::vector<Elem> atoms) {
  Elem const t = l.join_all(atoms);
  auto range = interval(l, 0, t);
  if (range.size() != (std::size_t{1} << atoms.size())) return false;
  std::vector<Elem> found;
  for (auto x : range) {
    if (x != 0 && l.lower_covers(x).size() == 1 && l.lower_covers(x).front() == 0) {
      found.push_back(x);
    }
  }
  std::sort(atoms.begin(), atoms.end());
  if (found != atoms) return false;
  // Distributive with |[0,t]| = 2^k and k atoms whose joins fill it.
  for (auto x : range) {
    for (auto y : range) {
      for (auto z : range) {
        if (l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z))) return false;
      }
    }
  }
  return true;
}

}  // namespace detail

/// Certificate for a Representation: sectional complementation, α an
/// isomorphism onto D, α(Θ(d_p, 0)) = p, and the Boolean atom ideal.
inline Report certify_representation(Representation const& rep) {
  Report r;
  auto sc = is_sectionally_complemented(*rep.l);
  r.add("sectionally_complemented", sc.ok, {},
        sc.ok ? std::vector<std::size_t>{}
              : std::vector<std::size_t>{sc.witness[0], sc.witness[1], sc.witness[2]});
  bool const con_ok = same_lattice(rep.con->base(), rep.l) &&
                      same_lattice(rep.alpha.domain(), rep.con->lattice());
  r.add("alpha_domain_is_con_l", con_ok);
  r.add("alpha_isomorphism", rep.alpha.is_isomorphism());
  bool atoms_ok = rep.atoms.size() == rep.join_irreducibles.size();
  std::vector<std::size_t> bad;
  for (std::size_t k = 0; atoms_ok && k < rep.atoms.size(); ++k) {
    auto t = rep.con->principal(rep.atoms[k], 0);
    if (rep.alpha(t) != rep.join_irreducibles[k]) {
      atoms_ok = false;
      bad = {rep.atoms[k]};
    }
  }
  r.add("atom_congruences", atoms_ok, {}, bad);
  r.add("atoms_generate_boolean_ideal",
        detail::atoms_generate_boolean_ideal(*rep.l, rep.atoms));
  return r;
}

/// The nine-element gadget used for every covering pair q < p of J(D):
/// atoms p, q, r, s with closed atom sets {p,q}, {p,r}, {q,r,s}. It is
/// sectionally complemented, Con H is the 3-chain ω < Θ(0,q) < Θ(0,p) = ι,
/// and {0, p, q, p∨q} is a Boolean ideal.
inline LatticePtr gadget() {
  static LatticePtr const H = [] {
    std::vector<unsigned> const sets{0b0000, 0b0001, 0b0010, 0b0100, 0b1000,
                                     0b0011, 0b0101, 0b1110, 0b1111};
    return make_lattice(FiniteLattice::from_order(
        sets.size(), [&](Elem a, Elem b) { return (sets[a] & ~sets[b]) == 0; },
        {"0", "p", "q", "r", "s", "pq", "pr", "qrs", "1"}));
  }();
  return H;
}

struct RepresentOptions {
  /// 0 = choose automatically; 1, 2, 3 force a tier.
  int tier = 0;
  /// Largest atom count for the closure-system search.
  std::size_t max_atoms = 4;
  SearchBudget budget{};
};

namespace detail {

inline Representation finish_representation(LatticePtr const& D, LatticePtr l,
                                             std::vector<Elem> const& J,
                                             std::vector<Elem> atoms, int tier) {
  auto con = all_congruences(l);
  auto alpha = representation_alpha(D, *con, J, atoms);
  return {D, std::move(l), con, std::move(alpha), J, std::move(atoms), tier};
}

inline Representation represent_boolean(LatticePtr const& D, std::vector<Elem> const& J) {
  auto l = boolean_lattice(J.size());
  std::vector<Elem> atoms;
  for (std::size_t k = 0; k < J.size(); ++k) atoms.push_back(Elem{1} << k);
  return finish_representation(D, l, J, atoms, 1);
}

// Chopped lattice: a shared Boolean ideal 2^J and, for every covering pair
// q < p in J, a component 2^(J \ {p,q}) × H whose ideal {0,p,q,p∨q} × 2^rest
// is that shared ideal, with p, q placed on the gadget's p, q.
inline Representation represent_gadget(LatticePtr const& D, std::vector<Elem> const& J) {
  auto const k = J.size();
  auto P = join_irreducible_poset(*D);
  auto base = boolean_lattice(k);
  auto H = gadget();
  Elem const hp = 1, hq = 2, hpq = 5;
  std::vector<ChoppedLattice::Component> comps;
  for (std::size_t p = 0; p < k; ++p) {
    for (auto q : P.lower_covers(p)) {
      auto rest = boolean_lattice(k - 2);
      auto prod = product(rest, H);
      std::vector<Elem> img(base->size());
      for (Elem X = 0; X < base->size(); ++X) {
        Elem r = 0;
        std::size_t bit = 0;
        for (std::size_t i = 0; i < k; ++i) {
          if (i == p || i == q) continue;
          if ((X >> i) & 1U) r |= Elem{1} << bit;
          ++bit;
        }
        bool const has_p = (X >> p) & 1U, has_q = (X >> q) & 1U;
        Elem const h = has_p && has_q ? hpq : has_p ? hp : has_q ? hq : 0;
        std::vector<Elem> coords{r, h};
        img[X] = prod.encode(coords);
      }
      comps.push_back({prod.lattice, LatticeMap(base, prod.lattice, std::move(img))});
    }
  }
  ChoppedLattice C(base, std::move(comps));
  auto id = ideal_lattice_of_chopped(C);
  std::vector<Elem> atoms;
  for (std::size_t i = 0; i < k; ++i) atoms.push_back(id.principal[Elem{1} << i]);
  return finish_representation(D, id.lattice, J, std::move(atoms), 2);
}

// Atomistic lattices given by closure systems on a atoms, a = 1..max_atoms.
inline std::optional<Representation> represent_search(LatticePtr const& D,
                                                      std::vector<Elem> const& J,
                                                      RepresentOptions const& opt) {
  SearchContext ctx(opt.budget);
  for (std::size_t a = std::max<std::size_t>(J.size(), 1); a <= opt.max_atoms; ++a) {
    unsigned const full = (1U << a) - 1;
    std::vector<unsigned> fixed{0, full}, others;
    for (std::size_t i = 0; i < a; ++i) fixed.push_back(1U << i);
    for (unsigned s = 1; s < full; ++s) {
      if (std::popcount(s) >= 2) others.push_back(s);
    }
    if (a == 1) fixed = {0, 1};
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << others.size()); ++mask) {
      if (!ctx.tick()) return std::nullopt;
      std::vector<unsigned> sets = fixed;
      for (std::size_t i = 0; i < others.size(); ++i) {
        if ((mask >> i) & 1U) sets.push_back(others[i]);
      }
      bool closed = true;
      for (std::size_t i = 0; i < sets.size() && closed; ++i) {
        for (std::size_t j = i + 1; j < sets.size() && closed; ++j) {
          closed = std::find(sets.begin(), sets.end(), sets[i] & sets[j]) != sets.end();
        }
      }
      if (!closed) continue;
      std::sort(sets.begin(), sets.end(), [](unsigned x, unsigned y) {
        auto cx = std::popcount(x), cy = std::popcount(y);
        return cx != cy ? cx < cy : x < y;
      });
      auto l = make_lattice(FiniteLattice::from_order(
          sets.size(), [&](Elem x, Elem y) { return (sets[x] & ~sets[y]) == 0; }));
      if (!is_sectionally_complemented(*l).ok) continue;
      auto con = all_congruences(l);
      if (con->size() != D->size()) continue;
      auto const A = atoms(*l);
      std::optional<Representation> out;
      for_each_isomorphism(*con->lattice(), *D, [&](std::vector<Elem> const& sigma) {
        // Choose, for each p, the first atom whose congruence maps to p.
        std::vector<Elem> chosen;
        for (auto p : J) {
          for (auto x : A) {
            if (sigma[con->principal(x, 0)] == p) {
              chosen.push_back(x);
              break;
            }
          }
        }
        if (chosen.size() != J.size()) return false;
        auto rep = finish_representation(D, l, J, chosen, 3);
        if (!certify_representation(rep).all_passed()) return false;
        out = std::move(rep);
        return true;
      });
      if (out) return out;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Finite sectionally complemented l with Con l ≅ D, certified before it is
/// returned. Tier 1: D Boolean, l = 2^k. Tier 2: the gadget chopped-lattice
/// construction. Tier 3: closure-system search on few atoms (also the
/// fallback when tier 2 fails certification).
inline Representation represent_sc(LatticePtr const& D, RepresentOptions const& opt = {}) {
  if (auto w = distributivity_witness(*D)) {
    fail(ErrorKind::NotDistributive, "D is not distributive", {w->first, w->second});
  }
  auto const J = join_irreducibles(*D);
  if (J.size() > 16) fail(ErrorKind::SizeCapExceeded, "|J(D)| exceeds 16", {J.size()});
  int tier = opt.tier;
  if (tier == 0) tier = is_boolean(*D) ? 1 : 2;
  if (tier == 1 && !is_boolean(*D)) {
    fail(ErrorKind::PreconditionFailed, "tier 1 needs a Boolean D");
  }
  std::optional<Representation> rep;
  if (tier == 1) rep = detail::represent_boolean(D, J);
  if (tier == 2) {
    rep = detail::represent_gadget(D, J);
    if (!certify_representation(*rep).all_passed()) rep.reset();
  }
  if (!rep) {
    rep = detail::represent_search(D, J, opt);
    if (!rep) {
      fail(ErrorKind::SearchExhausted, "no sectionally complemented representation found",
           {opt.max_atoms});
    }
  }
  auto cert = certify_representation(*rep);
  if (auto bad = cert.first_failure()) {
    fail(ErrorKind::ConstructionUncertified, "representation failed check " + bad->name,
         bad->witness);
  }
  return *rep;
}

}  // namespace conlat

#endif  // CONLAT_CONSTRUCTIONS_HPP_
