#ifndef CONLAT_PIPELINE_HPP_
#define CONLAT_PIPELINE_HPP_

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conlat/birkhoff.hpp"
#include "conlat/congruence.hpp"
#include "conlat/constructions.hpp"
#include "conlat/errors.hpp"
#include "conlat/glue.hpp"
#include "conlat/joinmap.hpp"
#include "conlat/lattice.hpp"
#include "conlat/named.hpp"
#include "conlat/report.hpp"
#include "conlat/structure.hpp"

namespace conlat {

/// The join-0 map determined by its values on the join-irreducibles of a
/// distributive domain: x ↦ ∨{values[k] : J[k] <= x}. `values` must be
/// isotone; the result is validated.
inline JoinMap join_map_from_irreducibles(LatticePtr const& domain, LatticePtr const& codomain,
                                          std::vector<Elem> const& values) {
  auto const J = join_irreducibles(*domain);
  if (values.size() != J.size()) {
    fail(ErrorKind::InvalidArgument, "one value per join-irreducible expected",
         {J.size(), values.size()});
  }
  std::vector<Elem> img(domain->size(), codomain->bottom());
  for (Elem x = 0; x < domain->size(); ++x) {
    for (std::size_t k = 0; k < J.size(); ++k) {
      if (domain->leq(J[k], x)) img[x] = codomain->join(img[x], values[k]);
    }
  }
  return JoinMap(domain, codomain, std::move(img));
}

/// Homomorphisms η_i: L0 -> L_i, a finite distributive D, and join-0 maps
/// ψ_i: Con L_i -> D with ψ1∘Con η1 = ψ2∘Con η2. ψ_i are indexed by the
/// congruence order of con1, con2.
struct AmalgamationProblem {
  LatticeMap eta1;
  LatticeMap eta2;
  LatticePtr d;
  CongruencesPtr con0;
  CongruencesPtr con1;
  CongruencesPtr con2;
  JoinMap psi1;
  JoinMap psi2;
  bool zero_mode = true;

  LatticePtr const& l0() const { return eta1.domain(); }
  LatticePtr const& l1() const { return eta1.codomain(); }
  LatticePtr const& l2() const { return eta2.codomain(); }
  bool zero_required() const {
    return zero_mode && eta1.preserves_zero() && eta2.preserves_zero();
  }

  static AmalgamationProblem make(LatticeMap eta1, LatticeMap eta2, LatticePtr d,
                                  std::vector<Elem> psi1, std::vector<Elem> psi2,
                                  bool zero_mode = true) {
    auto c1 = all_congruences(eta1.codomain());
    auto c2 = all_congruences(eta2.codomain());
    JoinMap p1(c1->lattice(), d, std::move(psi1));
    JoinMap p2(c2->lattice(), d, std::move(psi2));
    return make(std::move(eta1), std::move(eta2), std::move(d), c1, c2, std::move(p1),
                std::move(p2), zero_mode);
  }

  static AmalgamationProblem make(LatticeMap eta1, LatticeMap eta2, LatticePtr d,
                                  CongruencesPtr con1, CongruencesPtr con2, JoinMap psi1,
                                  JoinMap psi2, bool zero_mode = true) {
    if (!same_lattice(eta1.domain(), eta2.domain())) {
      fail(ErrorKind::InvalidArgument, "eta1 and eta2 have different domains");
    }
    if (!same_lattice(con1->base(), eta1.codomain()) ||
        !same_lattice(con2->base(), eta2.codomain()) ||
        !same_lattice(psi1.domain(), con1->lattice()) ||
        !same_lattice(psi2.domain(), con2->lattice()) || !same_lattice(psi1.codomain(), d) ||
        !same_lattice(psi2.codomain(), d)) {
      fail(ErrorKind::InvalidArgument, "psi maps do not run Con L_i -> D");
    }
    if (auto w = distributivity_witness(*d)) {
      fail(ErrorKind::NotDistributive, "D is not distributive", {w->first, w->second});
    }
    auto con0 = all_congruences(eta1.domain());
    auto c1 = con_map(eta1, *con0, *con1);
    auto c2 = con_map(eta2, *con0, *con2);
    for (Elem t = 0; t < con0->size(); ++t) {
      if (psi1(c1(t)) != psi2(c2(t))) {
        fail(ErrorKind::IncoherentProblem, "psi1 o Con eta1 differs from psi2 o Con eta2", {t});
      }
    }
    return {std::move(eta1), std::move(eta2), std::move(d), std::move(con0),
            std::move(con1), std::move(con2), std::move(psi1), std::move(psi2), zero_mode};
  }
};

struct AmalgamationSolution;

/// Intermediate objects of the two-element case.
struct TwoDetail {
  Congruence theta0, theta1, theta2;
  Quotient q0, q1, q2;
  LatticeMap eta1, eta2;  // induced maps L0/Θ0 -> L_i/Θ_i
  LatticeMap phi1, phi2;  // L_i/Θ_i -> L
};

/// Intermediate objects of the general case.
struct GeneralDetail {
  BooleanExtension ext;
  std::shared_ptr<AmalgamationSolution const> boolean_part;
  Representation rep;
  std::vector<Elem> filter;
  std::vector<Elem> ideal;
  Gluing gluing;
  JoinMap con_eps0;
  JoinMap con_eps1;
};

struct AmalgamationSolution {
  LatticePtr l;
  LatticeMap phi1;
  LatticeMap phi2;
  CongruencesPtr con;
  /// Con l -> D, an isomorphism.
  JoinMap alpha;
  Report certificate;
  /// Two-element case: one dual atom. Boolean case: d_q per atom q of D in
  /// index order.
  std::vector<Elem> dual_atoms;
  std::optional<TwoDetail> two;
  std::optional<GeneralDetail> general;
};

/// Independent re-check of a solution: commuting square, α an isomorphism
/// from a freshly computed Con l, α∘Con φ_i = ψ_i, and zero preservation.
inline Report verify_solution(AmalgamationProblem const& p, AmalgamationSolution const& s) {
  Report r;
  auto const& L0 = *p.l0();
  {
    std::vector<std::size_t> w;
    for (Elem x = 0; x < L0.size() && w.empty(); ++x) {
      if (s.phi1(p.eta1(x)) != s.phi2(p.eta2(x))) w = {x};
    }
    r.add("commuting_square", w.empty(), {}, w);
  }
  bool const maps_ok = same_lattice(s.phi1.domain(), p.l1()) &&
                       same_lattice(s.phi2.domain(), p.l2()) &&
                       same_lattice(s.phi1.codomain(), s.l) && same_lattice(s.phi2.codomain(), s.l);
  r.add("maps_typed", maps_ok);
  auto fresh = all_congruences(s.l);
  bool const con_ok = s.con && same_lattice(s.con->base(), s.l) &&
                      fresh->table() == s.con->table() &&
                      same_lattice(s.alpha.domain(), s.con->lattice());
  r.add("con_l_recomputed", con_ok, "|L| = " + std::to_string(s.l->size()) +
                                        ", |Con L| = " + std::to_string(fresh->size()));
  bool const iso = con_ok && *s.alpha.codomain() == *p.d && s.alpha.is_isomorphism();
  r.add("alpha_isomorphism", iso);
  auto check_psi = [&](char const* name, LatticeMap const& phi, CongruenceLattice const& ci,
                       JoinMap const& psi) {
    if (!con_ok || !maps_ok) {
      r.add(name, false, "skipped");
      return;
    }
    auto c = con_map(phi, ci, *fresh);
    std::vector<std::size_t> w;
    for (Elem t = 0; t < ci.size() && w.empty(); ++t) {
      if (s.alpha(c(t)) != psi(t)) w = {t};
    }
    r.add(name, w.empty(), {}, w);
  };
  check_psi("alpha_con_phi1_is_psi1", s.phi1, *p.con1, p.psi1);
  check_psi("alpha_con_phi2_is_psi2", s.phi2, *p.con2, p.psi2);
  if (p.zero_required()) {
    r.add("zero_preserved", s.phi1.preserves_zero() && s.phi2.preserves_zero());
  } else {
    r.add("zero_preserved", true, "not requested");
  }
  auto injective_check = [&](char const* name, JoinMap const& psi, LatticeMap const& phi) {
    if (!psi.is_injective()) {
      r.add(name, true, "psi not injective");
    } else {
      r.add(name, phi.is_embedding());
    }
  };
  injective_check("phi1_embedding_if_psi1_injective", p.psi1, s.phi1);
  injective_check("phi2_embedding_if_psi2_injective", p.psi2, s.phi2);
  return r;
}

namespace detail {

inline Congruence zero_kernel(CongruenceLattice const& C, JoinMap const& psi) {
  Congruence theta = C[C.omega()];
  for (Elem t = 0; t < C.size(); ++t) {
    if (psi(t) == psi.codomain()->bottom()) theta = join(theta, C[t]);
  }
  return theta;
}

// L0/Θ0 -> L_i/Θ_i induced by η_i.
inline LatticeMap induced_map(Quotient const& q0, Quotient const& qi, LatticeMap const& eta) {
  std::vector<Elem> img(q0.lattice->size());
  for (Elem x = 0; x < eta.domain()->size(); ++x) img[q0.projection(x)] = qi.projection(eta(x));
  return LatticeMap(q0.lattice, qi.lattice, std::move(img));
}

// [∧ xs, 1] is Boolean with coatoms exactly xs.
inline bool generates_boolean_filter(FiniteLattice const& L, std::vector<Elem> xs) {
  Elem const m = L.meet_all(xs);
  auto range = interval(L, m, L.top());
  if (range.size() != (std::size_t{1} << xs.size())) return false;
  std::vector<Elem> found;
  for (auto x : range) {
    if (L.upper_covers(x) == std::vector<Elem>{L.top()}) found.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  if (found != xs) return false;
  for (auto x : range) {
    for (auto y : range) {
      for (auto z : range) {
        if (L.meet(x, L.join(y, z)) != L.join(L.meet(x, y), L.meet(x, z))) return false;
      }
    }
  }
  return true;
}

}  // namespace detail

/// D = 2. Θ_i is the largest congruence sent to 0; the induced embeddings
/// L0/Θ0 -> L_i/Θ_i are amalgamated inside a partition lattice Part(m),
/// m >= 2, which is simple with a dual atom and serves as L.
inline AmalgamationSolution solve_two(AmalgamationProblem const& p, SearchBudget budget = {}) {
  if (p.d->size() != 2) {
    fail(ErrorKind::PreconditionFailed, "solve_two needs D = 2", {p.d->size()});
  }
  auto theta1 = detail::zero_kernel(*p.con1, p.psi1);
  auto theta2 = detail::zero_kernel(*p.con2, p.psi2);
  auto theta0 = restrict_along(theta1, p.eta1);
  if (restrict_along(theta2, p.eta2) != theta0) {
    fail(ErrorKind::IncoherentProblem, "the two kernels restrict differently to L0");
  }
  auto q0 = quotient(p.l0(), theta0);
  auto q1 = quotient(p.l1(), theta1);
  auto q2 = quotient(p.l2(), theta2);
  auto e1 = detail::induced_map(q0, q1, p.eta1);
  auto e2 = detail::induced_map(q0, q2, p.eta2);
  auto am = amalgamate(e1, e2, budget, 2);
  auto L = am.host;
  auto phi1 = compose(am.host_a1, q1.projection);
  auto phi2 = compose(am.host_a2, q2.projection);
  auto con = all_congruences(L);
  if (con->size() != 2) {
    fail(ErrorKind::ConstructionUncertified, "host lattice is not simple", {con->size()});
  }
  JoinMap alpha(con->lattice(), p.d, {p.d->bottom(), p.d->top()});
  AmalgamationSolution s{L,     phi1, phi2, con, std::move(alpha), {}, {coatoms(*L).front()},
                         TwoDetail{theta0, theta1, theta2, q0, q1, q2, e1, e2, am.host_a1,
                                   am.host_a2},
                         std::nullopt};
  s.certificate = verify_solution(p, s);
  s.certificate.add("simple", con->size() == 2, "Part(" + std::to_string(am.m) + ")");
  s.certificate.add("dual_atom", L->upper_covers(s.dual_atoms[0]) == std::vector<Elem>{L->top()});
  auto const& t = *s.two;
  std::vector<std::size_t> w;
  for (Elem x = 0; x < p.l0()->size() && w.empty(); ++x) {
    auto y = t.q0.projection(x);
    bool ok = t.q1.projection(p.eta1(x)) == t.eta1(y) && t.q2.projection(p.eta2(x)) == t.eta2(y) &&
              t.phi1(t.eta1(y)) == t.phi2(t.eta2(y)) &&
              s.phi1(p.eta1(x)) == t.phi1(t.q1.projection(p.eta1(x))) &&
              s.phi2(p.eta2(x)) == t.phi2(t.q2.projection(p.eta2(x)));
    if (!ok) w = {x};
  }
  s.certificate.add("factor_chain", w.empty(), {}, w);
  return s;
}

/// D Boolean. One two-element problem per atom p of D with ψ_{p,i} = β_p∘ψ_i;
/// L is the product of their solutions. dual_atoms[q] has coordinate d'_q
/// at q and 1 elsewhere; these generate a Boolean filter of L with
/// α(Θ(d_q, 1)) = q.
inline AmalgamationSolution solve_boolean(AmalgamationProblem const& p, SearchBudget budget = {}) {
  if (!is_boolean(*p.d)) fail(ErrorKind::PreconditionFailed, "solve_boolean needs a Boolean D");
  auto const A = atoms(*p.d);
  auto two = chain(2);
  std::vector<AmalgamationSolution> parts;
  for (auto a : A) {
    std::vector<Elem> beta(p.d->size());
    for (Elem x = 0; x < beta.size(); ++x) beta[x] = p.d->leq(a, x) ? 1 : 0;
    LatticeMap b(p.d, two, std::move(beta));
    auto sub = AmalgamationProblem::make(p.eta1, p.eta2, two, p.con1, p.con2,
                                         compose(b, p.psi1), compose(b, p.psi2), p.zero_mode);
    parts.push_back(solve_two(sub, budget));
  }
  std::vector<LatticePtr> factors;
  std::vector<LatticeMap> f1, f2;
  for (auto const& s : parts) {
    factors.push_back(s.l);
    f1.push_back(s.phi1);
    f2.push_back(s.phi2);
  }
  auto P = product(factors);
  auto phi1 = tuple_map(P, p.l1(), f1);
  auto phi2 = tuple_map(P, p.l2(), f2);
  auto con = all_congruences(P.lattice);
  std::vector<Elem> alpha(con->size(), p.d->bottom());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    auto c = con_map(P.projections[k], *con, *parts[k].con);
    for (Elem t = 0; t < con->size(); ++t) {
      if (parts[k].alpha(c(t)) != 0) alpha[t] = p.d->join(alpha[t], A[k]);
    }
  }
  std::vector<Elem> dual;
  std::vector<Elem> coords(parts.size());
  for (std::size_t q = 0; q < parts.size(); ++q) {
    for (std::size_t k = 0; k < parts.size(); ++k) {
      coords[k] = k == q ? parts[k].dual_atoms[0] : parts[k].l->top();
    }
    dual.push_back(P.encode(coords));
  }
  AmalgamationSolution s{P.lattice, phi1, phi2, con,
                         JoinMap(con->lattice(), p.d, std::move(alpha)),
                         {}, dual, std::nullopt, std::nullopt};
  s.certificate = verify_solution(p, s);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    s.certificate.append(parts[k].certificate, "atom" + std::to_string(k) + ".");
  }
  auto const& L = *s.l;
  bool dual_ok = true;
  for (auto d : dual) dual_ok = dual_ok && L.upper_covers(d) == std::vector<Elem>{L.top()};
  s.certificate.add("addition_dual_atoms", dual_ok);
  s.certificate.add("addition_boolean_filter", detail::generates_boolean_filter(L, dual));
  std::vector<std::size_t> w;
  for (std::size_t q = 0; q < dual.size() && w.empty(); ++q) {
    if (s.alpha(con->principal(dual[q], L.top())) != A[q]) w = {dual[q]};
  }
  s.certificate.add("addition_alpha_dual_atoms", w.empty(), {}, w);
  return s;
}

/// Any finite distributive D. Solve the Boolean problem for B = 2^J(D)
/// with targets η∘ψ_i to get K0, take K1 = represent_sc(D), and glue K1 on
/// top of K0 by d'_P ↦ d_ρP. φ_i = ε0∘φ'_i, α = α1∘(Con ε1)^{-1}.
inline AmalgamationSolution solve_general(AmalgamationProblem const& p,
                                          SearchBudget budget = {},
                                          RepresentOptions rep_options = {}) {
  auto ext = boolean_extension(p.d);
  auto sub = AmalgamationProblem::make(p.eta1, p.eta2, ext.b, p.con1, p.con2,
                                       compose(ext.eta, p.psi1), compose(ext.eta, p.psi2),
                                       p.zero_mode);
  auto k0 = std::make_shared<AmalgamationSolution const>(solve_boolean(sub, budget));
  rep_options.budget = budget;
  auto rep = represent_sc(p.d, rep_options);
  auto const& K0 = *k0->l;
  auto const& K1 = *rep.l;
  std::size_t const k = ext.join_irreducibles.size();
  Elem const top_i = rep.ideal_top();
  auto ideal = interval(K1, K1.bottom(), top_i);
  auto filter = interval(K0, K0.meet_all(k0->dual_atoms), K0.top());
  if (filter.size() != (std::size_t{1} << k) || ideal.size() != filter.size() ||
      k0->dual_atoms.size() != k) {
    fail(ErrorKind::GluingSeamMismatch, "seam sizes differ", {filter.size(), ideal.size()});
  }
  // Atom k of B is the bit for J[k], so ρ sends it to J[k] and d'_k ↦ d_k.
  auto const d1 = rep.ideal_dual_atoms();
  std::vector<Elem> iso;
  for (auto h : filter) {
    Elem y = top_i;
    for (std::size_t j = 0; j < k; ++j) {
      if (K0.leq(h, k0->dual_atoms[j])) y = K1.meet(y, d1[j]);
    }
    iso.push_back(y);
  }
  auto g = glue(k0->l, filter, rep.l, ideal, iso);
  auto con = all_congruences(g.lattice);
  auto ce0 = con_map(g.eps0, *k0->con, *con);
  auto ce1 = con_map(g.eps1, *rep.con, *con);
  if (!ce1.is_isomorphism()) {
    fail(ErrorKind::ConstructionUncertified, "Con eps1 is not an isomorphism");
  }
  auto alpha = compose(rep.alpha, ce1.inverse());
  AmalgamationSolution s{g.lattice,
                         compose(g.eps0, k0->phi1),
                         compose(g.eps0, k0->phi2),
                         con,
                         alpha,
                         {},
                         {},
                         std::nullopt,
                         GeneralDetail{ext, k0, rep, filter, ideal, g, ce0, ce1}};
  s.certificate = verify_solution(p, s);
  s.certificate.append(k0->certificate, "boolean.");
  s.certificate.append(certify_representation(rep), "representation.");
  s.certificate.add("con_eps1_isomorphism", true);
  std::vector<std::size_t> w;
  for (std::size_t j = 0; j < k && w.empty(); ++j) {
    auto lhs = ce0(k0->con->principal(k0->dual_atoms[j], K0.top()));
    auto rhs = con->principal(g.eps1(d1[j]), g.eps1(top_i));
    if (lhs != rhs) w = {j};
  }
  s.certificate.add("con_eps0_dual_atoms", w.empty(), {}, w);
  w.clear();
  bool const a0_iso = k0->alpha.is_isomorphism();
  if (a0_iso) {
    auto a0inv = k0->alpha.inverse();
    auto ce1inv = ce1.inverse();
    for (Elem X = 0; X < ext.b->size() && w.empty(); ++X) {
      if (rep.alpha(ce1inv(ce0(a0inv(X)))) != ext.rho(X)) w = {X};
    }
  }
  s.certificate.add("retraction", a0_iso && w.empty(), {}, w);
  return s;
}

}  // namespace conlat

#endif  // CONLAT_PIPELINE_HPP_
