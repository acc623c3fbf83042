// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "conlat/conlat.hpp"
#include "oracles.hpp"
#include "suite.hpp"

using namespace conlat;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, std::string const& what) {
    if (!ok && passed) {
      passed = false;
      detail = what;
    }
  }
};

std::string sizes(std::vector<LatticePtr> const& ls) {
  std::ostringstream os;
  for (auto const& L : ls) os << L->size() << " ";
  return os.str();
}

// 1. Con L against partition enumeration on every lattice with <= 6 elements.
Outcome congruence_oracle() {
  Outcome o;
  auto all = enumerate_small_lattices(6);
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto const& L = all[i];
    auto C = all_congruences(L);
    std::set<std::vector<Elem>> got;
    for (auto const& c : C->table()) got.insert(c.classes());
    o.require(got == oracle::congruences(*L), "congruence sets differ on lattice #" + std::to_string(i));
    o.require(oracle::distributive(*C->lattice()), "Con L not distributive on lattice #" + std::to_string(i));
  }
  o.detail = o.passed ? std::to_string(all.size()) + " lattices" : o.detail;
  return o;
}

// 2. φ embedding iff Con φ separates zero, over all homomorphisms between
// lattices with <= 4 elements.
Outcome embedding_criterion() {
  Outcome o;
  auto all = enumerate_small_lattices(4);
  std::size_t homs = 0;
  for (auto const& A : all) {
    for (auto const& B : all) {
      for (auto const& img : oracle::all_homs(*A, *B)) {
        LatticeMap f(A, B, img);
        bool const emb = oracle::is_embedding(*A, *B, img);
        o.require(emb == con_map(f).separates_zero(), "counterexample between sizes " +
                                                          std::to_string(A->size()) + " and " +
                                                          std::to_string(B->size()));
        ++homs;
      }
    }
  }
  if (o.passed) o.detail = std::to_string(homs) + " homomorphisms, 0 counterexamples";
  return o;
}

// 3. solve_general on the fixed suite with all-pass verification.
Outcome amalgamation_suite(std::vector<AmalgamationSolution>& out) {
  Outcome o;
  auto probs = suite::problems();
  bool emb_eta = false, non_emb_eta = false, zero_on = false, zero_off = false;
  std::set<std::size_t> d_sizes;
  for (auto const& [name, p] : probs) {
    auto s = solve_general(p);
    o.require(s.certificate.all_passed(), name + ": certificate fails " +
                                              (s.certificate.first_failure()
                                                   ? s.certificate.first_failure()->name
                                                   : std::string()));
    auto v = verify_solution(p, s);
    o.require(v.all_passed(), name + ": verify_solution fails");
    o.require(p.l0()->size() <= 5 && p.l1()->size() <= 5 && p.l2()->size() <= 5,
              name + ": L_i larger than 5");
    (p.eta1.is_embedding() && p.eta2.is_embedding() ? emb_eta : non_emb_eta) = true;
    (p.zero_mode ? zero_on : zero_off) = true;
    d_sizes.insert(p.d->size());
    out.push_back(std::move(s));
  }
  o.require(probs.size() >= 10, "fewer than 10 problems");
  o.require(emb_eta && non_emb_eta, "suite lacks embedding or non-embedding eta");
  o.require(zero_on && zero_off, "suite lacks zero_mode on or off");
  o.require(d_sizes == std::set<std::size_t>{2, 3, 4, 5}, "suite lacks one of the four D");
  if (o.passed) o.detail = std::to_string(probs.size()) + " problems";
  return o;
}

// 4. Injective ψ_i gives embeddings φ_i.
Outcome injective_psi(std::vector<AmalgamationSolution> const& sols) {
  Outcome o;
  auto probs = suite::problems();
  std::size_t n = 0;
  o.require(sols.size() == probs.size(), "suite solutions missing");
  for (std::size_t i = 0; i < probs.size() && o.passed; ++i) {
    auto const& p = probs[i].problem;
    if (p.psi1.is_injective()) {
      o.require(sols[i].phi1.is_embedding(), probs[i].name + ": phi1 not an embedding");
      ++n;
    }
    if (p.psi2.is_injective()) {
      o.require(sols[i].phi2.is_embedding(), probs[i].name + ": phi2 not an embedding");
      ++n;
    }
  }
  o.require(n > 0, "no injective psi in the suite");
  if (o.passed) o.detail = std::to_string(n) + " injective psi";
  return o;
}

// 5. Boolean Addition: {d_p} generate a Boolean dual ideal, α Θ(d_p, 1) = p.
Outcome boolean_addition() {
  Outcome o;
  std::size_t n = 0;
  for (auto const& [name, p] : suite::problems()) {
    if (!is_boolean(*p.d)) continue;
    auto s = solve_boolean(p);
    auto const at = atoms(*p.d);
    o.require(s.dual_atoms.size() == at.size(), name + ": one d_p per atom expected");
    o.require(detail::generates_boolean_filter(*s.l, s.dual_atoms),
              name + ": d_p do not generate a Boolean dual ideal");
    for (std::size_t q = 0; q < at.size() && q < s.dual_atoms.size(); ++q) {
      auto theta = principal_congruence(s.l, s.dual_atoms[q], s.l->top());
      o.require(s.alpha(s.con->index_of(theta)) == at[q], name + ": alpha Theta(d_p,1) != p");
    }
    ++n;
  }
  if (o.passed) o.detail = std::to_string(n) + " Boolean problems";
  return o;
}

FinitePoset random_poset(std::mt19937& rng, std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  std::bernoulli_distribution coin(0.4);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (coin(rng)) rel.emplace_back(i, j);
    }
  }
  return FinitePoset::from_covers(k, rel);
}

// α1∘(Con ε1)^{-1}∘(Con ε0)∘α0^{-1} = ρ on B, from fresh congruence lattices.
void retraction_identity(AmalgamationSolution const& s, Outcome& o) {
  auto const& g = *s.general;
  auto const& k0 = *g.boolean_part;
  auto K0 = g.gluing.eps0.domain();
  auto K1 = g.gluing.eps1.domain();
  auto ck0 = all_congruences(K0), ck1 = all_congruences(K1), cl = all_congruences(s.l);
  auto ce0 = con_map(g.gluing.eps0, *ck0, *cl);
  auto ce1 = con_map(g.gluing.eps1, *ck1, *cl);
  o.require(ce1.is_isomorphism(), "Con eps1 is not an isomorphism");
  o.require(k0.alpha.is_isomorphism(), "alpha0 is not an isomorphism");
  if (!o.passed) return;
  auto a0inv = k0.alpha.inverse();
  auto ce1inv = ce1.inverse();
  for (Elem X = 0; X < g.ext.b->size(); ++X) {
    o.require(g.rep.alpha(ce1inv(ce0(a0inv(X)))) == g.ext.rho(X),
              "retraction identity fails at X = " + std::to_string(X));
  }
}

// 6. ρ∘η = id and ρ on atoms(B) onto J(D); the retraction identity on B in
// solve_general runs, recomputed from fresh congruence lattices.
Outcome retraction(std::vector<AmalgamationSolution> const& sols) {
  Outcome o;
  std::mt19937 rng(20241015);
  std::uniform_int_distribution<std::size_t> size(1, 5);
  for (int t = 0; t < 20; ++t) {
    auto D = downset_lattice(random_poset(rng, size(rng)));
    auto ext = boolean_extension(D);
    auto J = join_irreducibles(*D);
    o.require(J.size() <= 5, "|J(D)| > 5");
    for (Elem x = 0; x < D->size(); ++x) {
      o.require(ext.rho(ext.eta(x)) == x, "rho(eta(x)) != x in random D #" + std::to_string(t));
    }
    std::set<Elem> img;
    auto const at = atoms(*ext.b);
    for (auto a : at) img.insert(ext.rho(a));
    o.require(img.size() == at.size() && img == std::set<Elem>(J.begin(), J.end()),
              "rho on atoms is not a bijection onto J(D) in random D #" + std::to_string(t));
    // A point into two 2-chains, ψ_i(ι) = 1 in D.
    auto one = one_element(), two = chain(2);
    LatticeMap pt(one, two, {0});
    auto p = AmalgamationProblem::make(pt, pt, D, {0, D->top()}, {0, D->top()});
    auto s = solve_general(p);
    o.require(s.certificate.all_passed(), "solve_general fails on random D #" + std::to_string(t));
    retraction_identity(s, o);
  }
  std::size_t runs = 0;
  o.require(!sols.empty(), "no solve_general runs");
  for (auto const& s : sols) {
    retraction_identity(s, o);
    ++runs;
  }
  if (o.passed) o.detail = "20 random D solved, " + std::to_string(runs) + " suite runs";
  return o;
}

// Posets with at most 3 points, one per isomorphism type.
std::vector<FinitePoset> small_posets() {
  using C = std::vector<std::pair<std::size_t, std::size_t>>;
  return {FinitePoset::from_covers(0, C{}),
          FinitePoset::from_covers(1, C{}),
          FinitePoset::from_covers(2, C{}),
          FinitePoset::from_covers(2, C{{0, 1}}),
          FinitePoset::from_covers(3, C{}),
          FinitePoset::from_covers(3, C{{0, 1}}),
          FinitePoset::from_covers(3, C{{0, 1}, {1, 2}}),
          FinitePoset::from_covers(3, C{{0, 2}, {1, 2}}),
          FinitePoset::from_covers(3, C{{0, 1}, {0, 2}})};
}

// 7. represent_sc for every D with |J(D)| <= 3.
Outcome representations() {
  Outcome o;
  std::vector<LatticePtr> ls;
  for (auto const& P : small_posets()) {
    auto D = downset_lattice(P);
    auto rep = represent_sc(D);
    auto cert = certify_representation(rep);
    std::string const tag = "D of size " + std::to_string(D->size());
    o.require(cert.all_passed(), tag + ": certificate fails");
    o.require(oracle::sectionally_complemented(*rep.l), tag + ": not sectionally complemented");
    o.require(isomorphic(*all_congruences(rep.l)->lattice(), *D), tag + ": Con l not iso to D");
    for (std::size_t k = 0; k < rep.atoms.size(); ++k) {
      auto t = rep.con->index_of(principal_congruence(rep.l, rep.l->bottom(), rep.atoms[k]));
      o.require(rep.alpha(t) == rep.join_irreducibles[k], tag + ": alpha Theta(d_p,0) != p");
    }
    ls.push_back(rep.l);
  }
  if (o.passed) o.detail = "9 D, |l| = " + sizes(ls);
  return o;
}

// 8. cp_sc_extension on every lattice with <= 5 elements.
Outcome cp_sc() {
  Outcome o;
  std::size_t certified = 0, exhausted = 0;
  std::vector<LatticePtr> passed;
  for (auto const& K : enumerate_small_lattices(5)) {
    try {
      auto ext = cp_sc_extension(K);
      auto const& E = *ext.k_prime;
      bool ok = ext.certificate.all_passed() && ext.emb.is_embedding() &&
                is_congruence_preserving_extension(ext.emb).ok &&
                is_relatively_complemented_in(ext.emb).ok && oracle::sectionally_complemented(E) &&
                !atomistic_witness(E) && ext.emb(K->bottom()) == E.bottom();
      o.require(ok, "uncertified extension of a lattice of size " + std::to_string(K->size()));
      if (ok) {
        ++certified;
        passed.push_back(K);
      }
    } catch (LatticeError const& e) {
      o.require(e.kind() == ErrorKind::SearchExhausted, std::string("unexpected error ") + e.what());
      ++exhausted;
    }
  }
  for (auto const& [name, L] : {std::pair{"3-chain", chain(3)}, std::pair{"2^2", boolean_lattice(2)},
                                std::pair{"N5", n5()}, std::pair{"M3", m3()}}) {
    bool in = false;
    for (auto const& K : passed) in = in || isomorphic(*K, *L);
    o.require(in, std::string(name) + " is not in the pass set");
  }
  if (o.passed) {
    o.detail = std::to_string(certified) + " certified, " + std::to_string(exhausted) + " exhausted";
  }
  return o;
}

// 9. Two tower steps over 2 ⊂ 3-chain ⊂ 2×3-chain.
Outcome tower() {
  Outcome o;
  auto k0 = chain(2), k1 = chain(3);
  auto k2 = make_lattice(
      FiniteLattice::from_covers(6, {{0, 1}, {1, 2}, {0, 3}, {1, 4}, {3, 4}, {4, 5}, {2, 5}}));
  std::vector<LatticeMap> es{LatticeMap(k0, k1, {0, 2}), LatticeMap(k1, k2, {0, 1, 5})};
  auto u = LatticeMap::identity(k0);
  std::vector<LatticePtr> ls;
  for (std::size_t n = 0; n < es.size(); ++n) {
    auto const& e = es[n];
    auto st = tower_step(u, e);
    std::string const tag = "step " + std::to_string(n) + ": ";
    o.require(st.certificate.all_passed(), tag + "certificate fails");
    o.require(compose(st.u_next, e) == compose(st.f, u), tag + "u_{n+1} e != f u");
    auto ck = all_congruences(e.domain());
    auto cl = all_congruences(u.codomain());
    auto ck1 = all_congruences(e.codomain());
    auto cl1 = all_congruences(st.l_next);
    auto con_u = con_map(u, *ck, *cl);
    auto con_e = con_map(e, *ck, *ck1);
    auto con_f = con_map(st.f, *cl, *cl1);
    auto con_un = con_map(st.u_next, *ck1, *cl1);
    o.require(con_u.is_isomorphism(), tag + "Con u is not an isomorphism");
    if (!o.passed) break;
    auto con_u_inv = con_u.inverse();
    for (Elem t = 0; t < cl->size(); ++t) {
      o.require(st.alpha(con_f(t)) == con_e(con_u_inv(t)), tag + "alpha Con f != Con e (Con u)^-1");
    }
    for (Elem t = 0; t < ck1->size(); ++t) {
      o.require(st.alpha(con_un(t)) == t, tag + "alpha Con u_{n+1} != id");
    }
    o.require(st.f.is_embedding(), tag + "f is not an embedding");
    ls.push_back(st.l_next);
    u = st.u_next;
  }
  if (o.passed) o.detail = "|L_1|, |L_2| = " + sizes(ls);
  return o;
}

// 10. Ladder-indexed systems on the 3-chain and the 4-element 2-ladder.
Outcome ladder() {
  Outcome o;
  auto S = boolean_lattice(2);
  struct Case {
    std::string name;
    LadderPresentation p;
    std::size_t top;
  };
  std::vector<Case> cases{
      {"3-chain", {chain(3)->as_poset(), S, {{0}, {0, 1}, {0, 1, 2, 3}}}, 2},
      {"{0 < a, b < 1}",
       {FinitePoset::from_covers(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}), S,
        {{0}, {0, 1}, {0, 2}, {0, 1, 2, 3}}},
       3}};
  for (auto const& c : cases) {
    auto sys = run_ladder_system(c.p);
    auto const& I = c.p.index;
    auto const n = I.size();
    std::size_t pairs = 0, strict = 0, triples = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!I.leq(i, j)) continue;
        ++pairs;
        strict += I.less(i, j);
        for (std::size_t k = 0; k < n; ++k) triples += I.leq(j, k);
      }
    }
    std::size_t a = 0, b = 0, cc = 0, d = 0, e = 0;
    for (auto const& ch : sys.certificate.checks()) {
      o.require(ch.passed, c.name + ": " + ch.name + " fails");
      a += ch.name.rfind("a.", 0) == 0;
      b += ch.name.rfind("b.", 0) == 0;
      cc += ch.name.rfind("c.", 0) == 0;
      d += ch.name.rfind("d.", 0) == 0;
      e += ch.name.rfind("e.", 0) == 0;
    }
    o.require(a == n && cc == n && b == triples && d == pairs && e == strict,
              c.name + ": an invariant is not checked at every index");
    o.require(sys.certificate.find("terminal.con_iso_s") != nullptr, c.name + ": no terminal check");
    o.require(isomorphic(*all_congruences(sys.lattices[c.top])->lattice(), *S),
              c.name + ": Con L_top not iso to S");
  }
  if (o.passed) o.detail = "2 systems";
  return o;
}

// 11. Part(m), m <= 5: Bell(m) elements; simple, relatively complemented,
// with a dual atom.
Outcome partition_lattices() {
  Outcome o;
  std::vector<std::size_t> const bell{1, 1, 2, 5, 15, 52};
  for (std::size_t m = 1; m <= 5; ++m) {
    auto P = partition_lattice(m);
    std::string const tag = "Part(" + std::to_string(m) + "): ";
    o.require(P->size() == bell[m], tag + "wrong size");
    if (m == 1) continue;
    o.require(is_simple(P), tag + "not simple");
    o.require(is_relatively_complemented(*P).ok, tag + "not relatively complemented");
    o.require(!coatoms(*P).empty(), tag + "no dual atom");
    if (m <= 3) {
      o.require(oracle::congruences(*P).size() == 2, tag + "oracle finds more than two congruences");
    }
  }
  if (o.passed) o.detail = "m = 1..5";
  return o;
}

}  // namespace

int main() {
  std::vector<AmalgamationSolution> sols;
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"congruence oracle equivalence", congruence_oracle},
      {"embedding iff Con separates zero", embedding_criterion},
      {"end-to-end amalgamation suite", [&] { return amalgamation_suite(sols); }},
      {"injective psi gives embeddings", [&] { return injective_psi(sols); }},
      {"Boolean addition", boolean_addition},
      {"retraction law", [&] { return retraction(sols); }},
      {"sectionally complemented representations", representations},
      {"congruence-preserving extensions", cp_sc},
      {"tower steps", tower},
      {"ladder-indexed direct systems", ladder},
      {"partition lattices", partition_lattices},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto const start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (std::exception const& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    auto const ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::printf("criterion %2zu %s  %s  (%s; %lld ms)\n", i + 1, o.passed ? "PASS" : "FAIL",
                criteria[i].first.c_str(), o.detail.c_str(), static_cast<long long>(ms));
    failed += !o.passed;
  }
  return failed == 0 ? 0 : 1;
}
