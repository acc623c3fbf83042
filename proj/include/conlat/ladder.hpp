#ifndef CONLAT_LADDER_HPP_
#define CONLAT_LADDER_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "conlat/congruence.hpp"
#include "conlat/errors.hpp"
#include "conlat/extensions.hpp"
#include "conlat/joinmap.hpp"
#include "conlat/lattice.hpp"
#include "conlat/named.hpp"
#include "conlat/pipeline.hpp"
#include "conlat/poset.hpp"
#include "conlat/report.hpp"
#include "conlat/structure.hpp"

namespace conlat {

struct LadderCheck {
  bool ok = true;
  std::optional<std::size_t> witness;
};

/// Every element covers at most k elements. Principal ideals of a finite
/// poset are finite, so nothing else is needed.
inline LadderCheck is_k_ladder(FinitePoset const& P, std::size_t k) {
  for (std::size_t a = 0; a < P.size(); ++a) {
    if (P.lower_covers(a).size() > k) return {false, a};
  }
  return {};
}

inline LadderCheck is_k_ladder(FiniteLattice const& L, std::size_t k) {
  return is_k_ladder(L.as_poset(), k);
}

/// A chain a_0 < ... < a_{len-1}, then `steps` rounds each adjoining a new
/// chain b_0 < ... < b_{len-1} above the last one with a_n < b_n. The result
/// is the grid len × (steps + 1), a finite 2-ladder.
inline FinitePoset build_2_ladder(std::size_t steps, std::size_t chain_len = 3) {
  if (chain_len == 0) fail(ErrorKind::InvalidArgument, "chain length must be positive");
  std::size_t const n = chain_len * (steps + 1);
  check_cap(n, "2-ladder");
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  std::vector<std::string> labels;
  for (std::size_t r = 0; r <= steps; ++r) {
    for (std::size_t c = 0; c < chain_len; ++c) {
      std::size_t const x = r * chain_len + c;
      labels.push_back(std::string(1, static_cast<char>('a' + std::min<std::size_t>(r, 25))) +
                       std::to_string(c));
      if (c + 1 < chain_len) covers.emplace_back(x, x + 1);
      if (r < steps) covers.emplace_back(x, x + chain_len);
    }
  }
  return FinitePoset::from_covers(n, covers, std::move(labels));
}

/// A finite distributive S with a {∨,0}-subsemilattice S_i ⊆ S per index
/// of a finite 2-ladder I, increasing along I, S_i = {0} at the bottom
/// index, and each S_i distributive in its own order.
struct LadderPresentation {
  FinitePoset index;
  LatticePtr s;
  std::vector<std::vector<Elem>> subsets;
};

namespace detail {

inline std::optional<std::size_t> poset_meet(FinitePoset const& P, std::size_t a,
                                             std::size_t b) {
  auto lb = P.down_set(a) & P.down_set(b);
  for (auto x = lb.find_first(); x != detail::Bitset::npos; x = lb.find_next(x)) {
    if (lb.is_subset_of(P.down_set(x))) return x;
  }
  return std::nullopt;
}

inline LatticePtr sub_order(FiniteLattice const& S, std::vector<Elem> const& xs) {
  std::vector<std::string> labels;
  for (auto x : xs) labels.push_back(S.label(x));
  return make_lattice(FiniteLattice::from_order(
      xs.size(), [&](Elem a, Elem b) { return S.leq(xs[a], xs[b]); }, std::move(labels)));
}

}  // namespace detail

/// Throws IncoherentPresentation (or InvalidArgument for a bad index) with
/// the offending index as witness.
inline void validate_presentation(LadderPresentation const& p) {
  auto const& I = p.index;
  auto const& S = *p.s;
  if (I.size() == 0) fail(ErrorKind::InvalidArgument, "empty index poset");
  if (p.subsets.size() != I.size()) {
    fail(ErrorKind::InvalidArgument, "one subset per index expected", {I.size()});
  }
  if (auto c = is_k_ladder(I, 2); !c.ok) {
    fail(ErrorKind::InvalidArgument, "index poset is not a 2-ladder", {*c.witness});
  }
  if (I.minimal_elements().size() != 1) {
    fail(ErrorKind::InvalidArgument, "index poset needs a least element");
  }
  if (auto w = distributivity_witness(S)) {
    fail(ErrorKind::NotDistributive, "S is not distributive", {w->first, w->second});
  }
  for (std::size_t i = 0; i < I.size(); ++i) {
    auto const& lc = I.lower_covers(i);
    if (lc.size() == 2 && !detail::poset_meet(I, lc[0], lc[1])) {
      fail(ErrorKind::InvalidArgument, "predecessors have no meet in the index", {i});
    }
    auto xs = p.subsets[i];
    std::sort(xs.begin(), xs.end());
    if (std::adjacent_find(xs.begin(), xs.end()) != xs.end() ||
        (!xs.empty() && xs.back() >= S.size())) {
      fail(ErrorKind::IncoherentPresentation, "subset has repeated or invalid elements", {i});
    }
    if (xs.empty() || xs.front() != S.bottom()) {
      fail(ErrorKind::IncoherentPresentation, "S_i does not contain 0", {i});
    }
    for (auto a : xs) {
      for (auto b : xs) {
        if (!std::binary_search(xs.begin(), xs.end(), S.join(a, b))) {
          fail(ErrorKind::IncoherentPresentation, "S_i is not closed under joins", {i});
        }
      }
    }
    if (!is_distributive(*detail::sub_order(S, xs))) {
      fail(ErrorKind::IncoherentPresentation, "S_i is not distributive", {i});
    }
    for (std::size_t j = 0; j < I.size(); ++j) {
      if (!I.leq(j, i)) continue;
      for (auto a : p.subsets[j]) {
        if (!std::binary_search(xs.begin(), xs.end(), a)) {
          fail(ErrorKind::IncoherentPresentation, "S_j is not contained in S_i", {j, i});
        }
      }
    }
  }
  auto const b = I.minimal_elements().front();
  if (p.subsets[b].size() != 1) {
    fail(ErrorKind::IncoherentPresentation, "S at the least index must be {0}", {b});
  }
}

/// S_i grown along I by height: the join-closure of the predecessors'
/// subsets plus one random element of S, retried until distributive. At a
/// top index of I the subset is all of S.
inline LadderPresentation random_presentation(FinitePoset const& I, LatticePtr const& S,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Elem>> subsets(I.size());
  auto closure = [&](std::vector<Elem> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    bool grew = true;
    while (grew) {
      grew = false;
      auto const n = xs.size();
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
          auto j = S->join(xs[a], xs[b]);
          if (std::find(xs.begin(), xs.end(), j) == xs.end()) {
            xs.push_back(j);
            grew = true;
          }
        }
      }
    }
    std::sort(xs.begin(), xs.end());
    return xs;
  };
  auto const maximal = I.maximal_elements();
  for (auto i : I.by_height()) {
    std::vector<Elem> base{S->bottom()};
    for (auto j : I.lower_covers(i)) base.insert(base.end(), subsets[j].begin(), subsets[j].end());
    base = closure(base);
    if (I.lower_covers(i).empty()) {
      subsets[i] = base;
      continue;
    }
    if (maximal.size() == 1 && maximal.front() == i) {
      std::vector<Elem> all(S->size());
      for (Elem x = 0; x < all.size(); ++x) all[x] = x;
      subsets[i] = all;
      continue;
    }
    std::vector<Elem> order(S->size());
    for (Elem x = 0; x < order.size(); ++x) order[x] = x;
    std::shuffle(order.begin(), order.end(), rng);
    subsets[i] = base;
    for (auto x : order) {
      if (std::binary_search(base.begin(), base.end(), x)) continue;
      auto grown = base;
      grown.push_back(x);
      grown = closure(grown);
      if (is_distributive(*detail::sub_order(*S, grown))) {
        subsets[i] = grown;
        break;
      }
    }
  }
  LadderPresentation p{I, S, std::move(subsets)};
  validate_presentation(p);
  return p;
}

struct DirectSystem {
  FinitePoset index;
  LatticePtr s;
  std::vector<std::vector<Elem>> subsets;
  /// S_i in its own order; element k is subsets[i][k].
  std::vector<LatticePtr> targets;
  std::vector<LatticePtr> lattices;
  std::vector<CongruencesPtr> cons;
  /// ε_i: Con L_i -> S_i.
  std::vector<std::optional<JoinMap>> epsilons;
  /// f^i_j for i <= j.
  std::map<std::pair<std::size_t, std::size_t>, LatticeMap> maps;
  Report certificate;

  LatticeMap const& f(std::size_t i, std::size_t j) const { return maps.at({i, j}); }

  /// The inclusion φ^i_j: S_i -> S_j.
  JoinMap phi(std::size_t i, std::size_t j) const {
    std::vector<Elem> img;
    for (auto x : subsets[i]) {
      auto const& sj = subsets[j];
      img.push_back(static_cast<Elem>(std::find(sj.begin(), sj.end(), x) - sj.begin()));
    }
    return JoinMap(targets[i], targets[j], std::move(img));
  }
};

/// Invariants (a)–(e) of the system and, if I has a top t, Con L_t ≅ S_t.
inline Report check_direct_system(DirectSystem const& sys) {
  Report r;
  auto const& I = sys.index;
  auto const n = I.size();
  auto idx = [](std::size_t i) { return std::to_string(i); };
  for (std::size_t i = 0; i < n; ++i) {
    auto const& f = sys.f(i, i);
    bool ok = true;
    for (Elem x = 0; x < f.domain()->size(); ++x) ok = ok && f(x) == x;
    r.add("a.identity." + idx(i), ok);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!I.leq(i, j)) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (!I.leq(j, k)) continue;
        r.add("b.compose." + idx(i) + "." + idx(j) + "." + idx(k),
              sys.f(i, k) == compose(sys.f(j, k), sys.f(i, j)));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto fresh = all_congruences(sys.lattices[i]);
    auto const& e = *sys.epsilons[i];
    bool ok = fresh->table() == sys.cons[i]->table() &&
              same_lattice(e.domain(), sys.cons[i]->lattice()) &&
              same_lattice(e.codomain(), sys.targets[i]) && e.is_isomorphism();
    r.add("c.epsilon_iso." + idx(i), ok, "|L| = " + std::to_string(sys.lattices[i]->size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!I.leq(i, j)) continue;
      auto c = con_map(sys.f(i, j), *sys.cons[i], *sys.cons[j]);
      auto ph = sys.phi(i, j);
      std::vector<std::size_t> w;
      for (Elem t = 0; t < sys.cons[i]->size() && w.empty(); ++t) {
        if ((*sys.epsilons[j])(c(t)) != ph((*sys.epsilons[i])(t))) w = {t};
      }
      r.add("d.naturality." + idx(i) + "." + idx(j), w.empty(), {}, w);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!I.less(i, j)) continue;
      auto rc = is_relatively_complemented_in(sys.f(i, j));
      r.add("e.rel_complemented." + idx(i) + "." + idx(j), rc.ok, {},
            rc.ok ? std::vector<std::size_t>{}
                  : std::vector<std::size_t>{rc.witness[0], rc.witness[1], rc.witness[2]});
    }
  }
  auto const tops = I.maximal_elements();
  if (tops.size() == 1) {
    auto t = tops.front();
    r.add("terminal.con_iso_s", is_isomorphic(sys.cons[t]->lattice(), sys.targets[t]).has_value());
  }
  return r;
}

struct LadderOptions {
  SearchBudget budget{};
  RepresentOptions represent{};
  /// Extend L_i by cp_sc_extension when the maps into it are not already
  /// relatively complemented.
  bool ensure_rc = true;
};

/// Builds L_i, f^j_i and ε_i index by index in height order: one
/// predecessor gives the problem η1 = η2 = id, two predecessors i1, i2 give
/// η_k = f^{i1∧i2}_{i_k}; in both cases ψ_k = φ^{i_k}_i∘ε_{i_k} and D = S_i.
inline DirectSystem run_ladder_system(LadderPresentation const& p, LadderOptions const& opt = {}) {
  validate_presentation(p);
  auto const& I = p.index;
  auto const n = I.size();
  DirectSystem sys{I, p.s, p.subsets, {}, {}, {}, {}, {}, {}};
  for (auto& xs : sys.subsets) std::sort(xs.begin(), xs.end());
  for (std::size_t i = 0; i < n; ++i) sys.targets.push_back(detail::sub_order(*p.s, sys.subsets[i]));
  sys.lattices.resize(n);
  sys.cons.resize(n);
  sys.epsilons.resize(n);
  for (auto i : I.by_height()) {
    auto const& preds = I.lower_covers(i);
    if (preds.empty()) {
      auto one = one_element();
      sys.lattices[i] = one;
      sys.cons[i] = all_congruences(one);
      sys.epsilons[i].emplace(sys.cons[i]->lattice(), sys.targets[i], std::vector<Elem>{0});
      sys.maps.emplace(std::pair{i, i}, LatticeMap::identity(one));
      continue;
    }
    std::size_t const i1 = preds[0];
    std::size_t const i2 = preds.size() > 1 ? preds[1] : preds[0];
    std::size_t const j = preds.size() > 1 ? *detail::poset_meet(I, i1, i2) : i1;
    auto const& eta1 = sys.f(j, i1);
    auto const& eta2 = sys.f(j, i2);
    auto psi1 = compose(sys.phi(i1, i), *sys.epsilons[i1]);
    auto psi2 = compose(sys.phi(i2, i), *sys.epsilons[i2]);
    auto prob = AmalgamationProblem::make(eta1, eta2, sys.targets[i], sys.cons[i1], sys.cons[i2],
                                          psi1, psi2);
    auto sol = solve_general(prob, opt.budget, opt.represent);
    if (!sol.certificate.all_passed()) {
      auto const* bad = sol.certificate.first_failure();
      fail(ErrorKind::ConstructionUncertified, "index step failed check " + bad->name, {i});
    }
    LatticePtr L = sol.l;
    LatticeMap g1 = sol.phi1, g2 = sol.phi2;
    CongruencesPtr con = sol.con;
    JoinMap eps = sol.alpha;
    // f^k_i factors through g1 or g2, so (e) at i only needs those two.
    bool const rc = is_relatively_complemented_in(g1).ok && is_relatively_complemented_in(g2).ok;
    if (opt.ensure_rc && !rc) {
      auto ext = cp_sc_extension(L, {opt.budget, opt.represent});
      if (!ext.fast_path) {
        auto c2 = all_congruences(ext.k_prime);
        auto ch = con_map(ext.emb, *con, *c2);
        eps = compose(eps, ch.inverse());
        g1 = compose(ext.emb, g1);
        g2 = compose(ext.emb, g2);
        L = ext.k_prime;
        con = c2;
      }
    }
    sys.lattices[i] = L;
    sys.cons[i] = con;
    sys.epsilons[i].emplace(std::move(eps));
    sys.maps.emplace(std::pair{i, i}, LatticeMap::identity(L));
    sys.maps.emplace(std::pair{i1, i}, g1);
    if (i2 != i1) sys.maps.emplace(std::pair{i2, i}, g2);
    // f^k_i through a predecessor above k; both routes must agree.
    for (std::size_t k = 0; k < n; ++k) {
      if (!I.less(k, i) || k == i1 || k == i2) continue;
      std::optional<LatticeMap> via1, via2;
      if (I.leq(k, i1)) via1 = compose(g1, sys.f(k, i1));
      if (I.leq(k, i2) && i2 != i1) via2 = compose(g2, sys.f(k, i2));
      if (via1 && via2 && !(*via1 == *via2)) {
        fail(ErrorKind::ConstructionUncertified, "predecessor routes disagree", {k, i});
      }
      sys.maps.emplace(std::pair{k, i}, via1 ? *via1 : *via2);
    }
    if (i2 != i1 && I.leq(i1, i2)) {
      fail(ErrorKind::InvalidArgument, "lower covers are comparable", {i1, i2});
    }
  }
  sys.certificate = check_direct_system(sys);
  return sys;
}

}  // namespace conlat

#endif  // CONLAT_LADDER_HPP_
