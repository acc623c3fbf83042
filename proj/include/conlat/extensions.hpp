#ifndef CONLAT_EXTENSIONS_HPP_
#define CONLAT_EXTENSIONS_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conlat/chopped.hpp"
#include "conlat/congruence.hpp"
#include "conlat/constructions.hpp"
#include "conlat/errors.hpp"
#include "conlat/lattice.hpp"
#include "conlat/named.hpp"
#include "conlat/pipeline.hpp"
#include "conlat/report.hpp"
#include "conlat/structure.hpp"

namespace conlat {

struct RectangularExtension {
  LatticePtr r;
  LatticeMap diag;
  /// Meet-irreducible congruences, one per factor.
  std::vector<Congruence> thetas;
  std::vector<Quotient> quotients;
  ProductLattice product;
};

/// R(K) = ∏ K/Θ over the meet-irreducible Θ of Con K, with x ↦ ([x]_Θ).
inline RectangularExtension rectangular_extension(LatticePtr const& K) {
  auto con = all_congruences(K);
  std::vector<Congruence> thetas;
  std::vector<Quotient> qs;
  std::vector<LatticePtr> factors;
  std::vector<LatticeMap> comps;
  for (auto t : meet_irreducible_indices(*con)) {
    thetas.push_back((*con)[t]);
    qs.push_back(quotient(K, (*con)[t]));
    factors.push_back(qs.back().lattice);
    comps.push_back(qs.back().projection);
  }
  auto P = product(factors);
  auto diag = tuple_map(P, K, comps);
  return {P.lattice, std::move(diag), std::move(thetas), std::move(qs), std::move(P)};
}

struct CpScOptions {
  SearchBudget budget{};
  RepresentOptions represent{};
};

struct CpScExtension {
  LatticePtr k_prime;
  LatticeMap emb;
  Report certificate;
  bool fast_path = false;
};

namespace detail {

inline Report certify_cp_sc(LatticeMap const& emb) {
  Report r;
  r.add("embedding", emb.is_embedding());
  auto cp = is_congruence_preserving_extension(emb);
  r.add("congruence_preserving", cp.ok, {},
        cp.witness ? std::vector<std::size_t>(cp.witness->classes().begin(),
                                              cp.witness->classes().end())
                   : std::vector<std::size_t>{});
  auto const& Kp = *emb.codomain();
  auto sc = is_sectionally_complemented(Kp);
  r.add("sectionally_complemented", sc.ok, {},
        sc.ok ? std::vector<std::size_t>{}
              : std::vector<std::size_t>{sc.witness[0], sc.witness[1], sc.witness[2]});
  auto rc = is_relatively_complemented_in(emb);
  r.add("relatively_complemented_in", rc.ok, {},
        rc.ok ? std::vector<std::size_t>{}
              : std::vector<std::size_t>{rc.witness[0], rc.witness[1], rc.witness[2]});
  auto at = atomistic_witness(Kp);
  r.add("atomistic", !at, {}, at ? std::vector<std::size_t>{*at} : std::vector<std::size_t>{});
  r.add("zero_preserved", emb.preserves_zero());
  return r;
}

[[noreturn]] inline void uncertified(std::string const& step, Check const& c) {
  fail(ErrorKind::ConstructionUncertified, "step " + step + ": check " + c.name + " failed",
       c.witness);
}

}  // namespace detail

/// A congruence-preserving embedding of K into a finite sectionally
/// complemented K' in which K is relatively complemented. If K is already
/// relatively complemented the identity is returned. Otherwise K' is the
/// ideal lattice of the chopped lattice L0 ∪ R̂(K), where L0 represents
/// Con K, R̂(K) = ∏ S(K/Θ) over meet-irreducible Θ, and the atom d_p of L0
/// is identified with the first atom of the factor for m(p) = ∨{x : p ≰ x}.
inline CpScExtension cp_sc_extension(LatticePtr const& K, CpScOptions const& opt = {}) {
  if (is_relatively_complemented(*K).ok) {
    auto emb = LatticeMap::identity(K);
    auto cert = detail::certify_cp_sc(emb);
    if (auto bad = cert.first_failure()) detail::uncertified("fast-path", *bad);
    return {K, std::move(emb), std::move(cert), true};
  }
  auto con = all_congruences(K);
  auto rep_opt = opt.represent;
  rep_opt.budget = opt.budget;
  auto rep = represent_sc(con->lattice(), rep_opt);
  auto const& D = *con->lattice();
  auto const M = meet_irreducible_indices(*con);

  std::vector<LatticePtr> factors;
  std::vector<LatticeMap> comps;
  std::vector<Elem> first_atom;
  for (std::size_t k = 0; k < M.size(); ++k) {
    auto q = quotient(K, (*con)[M[k]]);
    auto ext = simple_sc_extension(q.lattice, opt.budget);
    if (!is_relatively_complemented_in(ext.emb).ok) {
      fail(ErrorKind::ConstructionUncertified, "step factor: simple extension not rel. compl.",
           {k});
    }
    factors.push_back(ext.s);
    comps.push_back(compose(ext.emb, q.projection));
    first_atom.push_back(atoms(*ext.s).front());
  }
  auto P = product(factors);
  auto diag = tuple_map(P, K, comps);

  auto const& J = rep.join_irreducibles;
  std::vector<std::size_t> slot(J.size());
  for (std::size_t i = 0; i < J.size(); ++i) {
    Elem m = D.bottom();
    for (Elem x = 0; x < D.size(); ++x) {
      if (!D.leq(J[i], x)) m = D.join(m, x);
    }
    auto it = std::find(M.begin(), M.end(), m);
    if (it == M.end()) {
      fail(ErrorKind::ConstructionUncertified, "step identify: m(p) is not meet-irreducible",
           {J[i]});
    }
    slot[i] = static_cast<std::size_t>(it - M.begin());
  }
  auto base = boolean_lattice(J.size());
  std::vector<Elem> to_l0(base->size()), to_r(base->size());
  std::vector<Elem> coords(M.size());
  for (Elem X = 0; X < base->size(); ++X) {
    Elem a = rep.l->bottom();
    std::fill(coords.begin(), coords.end(), 0);
    for (std::size_t i = 0; i < J.size(); ++i) {
      if ((X >> i) & 1U) {
        a = rep.l->join(a, rep.atoms[i]);
        coords[slot[i]] = first_atom[slot[i]];
      }
    }
    to_l0[X] = a;
    to_r[X] = P.encode(coords);
  }
  ChoppedLattice C(base, {{rep.l, LatticeMap(base, rep.l, std::move(to_l0))},
                          {P.lattice, LatticeMap(base, P.lattice, std::move(to_r))}});
  auto id = ideal_lattice_of_chopped(C);
  auto emb = compose(id.component_embedding(C, 1), diag);
  auto cert = detail::certify_cp_sc(emb);
  if (auto bad = cert.first_failure()) detail::uncertified("ideal-lattice", *bad);
  return {id.lattice, std::move(emb), std::move(cert), false};
}

struct TowerStage {
  LatticePtr lattice;
  /// Embedding of the previous stage; empty for stage 0.
  std::optional<LatticeMap> from_previous;
  bool relatively_complemented = false;
  bool boolean_con = false;
};

struct Tower {
  std::vector<TowerStage> stages;
  /// True once a stage is relatively complemented (the tower is then constant).
  bool stabilized = false;
  Report certificate;
};

/// K = K^(0), K^(n+1) = (K^(n))' for n < depth. Each stage also records
/// whether it is relatively complemented and whether Con is Boolean; the
/// former must imply the latter.
inline Tower rc_tower(LatticePtr const& K, std::size_t depth, CpScOptions const& opt = {}) {
  Tower t;
  auto stage_info = [&](LatticePtr const& L, std::optional<LatticeMap> f) {
    TowerStage s{L, std::move(f), is_relatively_complemented(*L).ok,
                 is_boolean(*all_congruences(L)->lattice())};
    auto const n = std::to_string(t.stages.size());
    t.certificate.add("stage" + n + ".rc_implies_boolean_con",
                      !s.relatively_complemented || s.boolean_con,
                      "|K| = " + std::to_string(L->size()));
    t.stages.push_back(std::move(s));
  };
  stage_info(K, std::nullopt);
  for (std::size_t n = 0; n < depth; ++n) {
    auto ext = cp_sc_extension(t.stages.back().lattice, opt);
    t.certificate.append(ext.certificate, "stage" + std::to_string(n + 1) + ".");
    stage_info(ext.k_prime, ext.emb);
  }
  t.stabilized = t.stages.back().relatively_complemented;
  return t;
}

struct TowerStepOptions {
  SearchBudget budget{};
  RepresentOptions represent{};
  /// Post-compose with cp_sc_extension of L_{n+1}.
  bool chase_rc = false;
};

struct TowerStep {
  LatticePtr l_next;
  /// L_n -> L_{n+1}.
  LatticeMap f;
  /// K_{n+1} -> L_{n+1}.
  LatticeMap u_next;
  /// Con L_{n+1} -> Con K_{n+1}.
  JoinMap alpha;
  CongruencesPtr con_next;
  Report certificate;
};

/// One step of the tower: given a congruence-preserving u: K_n -> L_n and
/// an embedding e: K_n -> K_{n+1}, solve the amalgamation problem with
/// D = Con K_{n+1}, ψ1 = Con e∘(Con u)^{-1}, ψ2 = id, giving
/// u_{n+1}∘e = f∘u, α∘Con f = Con e∘(Con u)^{-1}, α∘Con u_{n+1} = id.
inline TowerStep tower_step(LatticeMap const& u, LatticeMap const& e,
                            TowerStepOptions const& opt = {}) {
  if (!same_lattice(u.domain(), e.domain())) {
    fail(ErrorKind::InvalidArgument, "u and e must share their domain");
  }
  if (!e.is_embedding()) fail(ErrorKind::PreconditionFailed, "e is not an embedding");
  if (!u.is_embedding()) fail(ErrorKind::PreconditionFailed, "u is not an embedding");
  auto cp = is_congruence_preserving_extension(u);
  if (!cp.ok) {
    std::vector<std::size_t> w(cp.witness->classes().begin(), cp.witness->classes().end());
    fail(ErrorKind::PreconditionFailed, "u is not congruence-preserving", std::move(w));
  }
  auto ck = all_congruences(u.domain());
  auto cl = all_congruences(u.codomain());
  auto ck1 = all_congruences(e.codomain());
  auto con_u = con_map(u, *ck, *cl);
  auto con_e = con_map(e, *ck, *ck1);
  auto psi1 = compose(con_e, con_u.inverse());
  auto psi2 = JoinMap::identity(ck1->lattice());
  auto p = AmalgamationProblem::make(u, e, ck1->lattice(), cl, ck1, psi1, psi2);
  auto s = solve_general(p, opt.budget, opt.represent);

  TowerStep out{s.l, s.phi1, s.phi2, s.alpha, s.con, s.certificate};
  if (opt.chase_rc) {
    auto ext = cp_sc_extension(s.l, {opt.budget, opt.represent});
    auto cnext = all_congruences(ext.k_prime);
    auto con_g = con_map(ext.emb, *s.con, *cnext);
    out = {ext.k_prime,
           compose(ext.emb, s.phi1),
           compose(ext.emb, s.phi2),
           compose(s.alpha, con_g.inverse()),
           cnext,
           s.certificate};
    out.certificate.append(ext.certificate, "chase_rc.");
  }

  auto& r = out.certificate;
  std::vector<std::size_t> w;
  for (Elem x = 0; x < u.domain()->size() && w.empty(); ++x) {
    if (out.u_next(e(x)) != out.f(u(x))) w = {x};
  }
  r.add("eq_square", w.empty(), {}, w);
  auto con_f = con_map(out.f, *cl, *out.con_next);
  w.clear();
  for (Elem t = 0; t < cl->size() && w.empty(); ++t) {
    if (out.alpha(con_f(t)) != psi1(t)) w = {t};
  }
  r.add("eq_alpha_con_f", w.empty(), {}, w);
  auto con_un = con_map(out.u_next, *ck1, *out.con_next);
  w.clear();
  for (Elem t = 0; t < ck1->size() && w.empty(); ++t) {
    if (out.alpha(con_un(t)) != t) w = {t};
  }
  r.add("eq_alpha_con_u_next", w.empty(), {}, w);
  r.add("f_separates_zero", con_f.separates_zero());
  r.add("f_embedding", out.f.is_embedding());
  r.add("u_next_congruence_preserving", is_congruence_preserving_extension(out.u_next).ok);
  return out;
}

}  // namespace conlat

#endif  // CONLAT_EXTENSIONS_HPP_
