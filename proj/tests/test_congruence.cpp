#include <catch_amalgamated.hpp>

#include <set>

#include "conlat/conlat.hpp"
#include "oracles.hpp"

using namespace conlat;

namespace {

std::set<std::vector<Elem>> library_congruences(LatticePtr const& L) {
  std::set<std::vector<Elem>> out;
  auto C = all_congruences(L);
  for (auto const& c : C->table()) out.insert(c.classes());
  return out;
}

std::vector<LatticePtr> small_zoo() {
  return {one_element(),
          chain(2),
          chain(3),
          chain(4),
          boolean_lattice(2),
          m3(),
          n5(),
          product(chain(2), chain(3)).lattice,
          downset_lattice(FinitePoset::from_covers(3, {{0, 1}, {0, 2}}))};
}

}  // namespace

TEST_CASE("principal congruences", "[congruence]") {
  auto M = m3();
  CHECK(principal_congruence(M, 1, 1).is_omega());
  CHECK(principal_congruence(M, 1, 0).is_iota());
  auto C3 = chain(3);
  CHECK(principal_congruence(C3, 0, 1).classes() == std::vector<Elem>{0, 0, 2});
  for (auto const& L : small_zoo()) {
    for (Elem a = 0; a < L->size(); ++a) {
      for (Elem b = 0; b < L->size(); ++b) {
        CHECK(principal_congruence(L, a, b).classes() == oracle::least_congruence(*L, a, b));
      }
    }
  }
}

TEST_CASE("all congruences agree with partition enumeration", "[congruence]") {
  for (auto const& L : small_zoo()) {
    CHECK(library_congruences(L) == oracle::congruences(*L));
    auto C = all_congruences(L);
    CHECK(C->lattice()->size() == C->size());
    CHECK(C->table().front().is_omega());
    CHECK(C->table().back().is_iota());
    CHECK(is_distributive(*C->lattice()));
    for (Elem i = 0; i < C->size(); ++i) {
      for (Elem j = 0; j < C->size(); ++j) {
        CHECK(C->lattice()->leq(i, j) == (*C)[i].refines((*C)[j]));
      }
    }
  }
  CHECK(all_congruences(chain(2))->size() == 2);
  CHECK(all_congruences(m3())->size() == 2);
  CHECK(isomorphic(*all_congruences(chain(3))->lattice(), *boolean_lattice(2)));
}

TEST_CASE("con_map", "[congruence]") {
  auto M = m3();
  auto two = chain(2);
  LatticeMap f(two, M, {0, 4});
  auto cf = con_map(f);
  // Θ(0,1) of 2 goes to ι of M3.
  CHECK(cf(1) == all_congruences(M)->iota());
  CHECK(cf.separates_zero());

  auto C3 = chain(3);
  auto q = quotient(C3, principal_congruence(C3, 0, 1));
  auto CC = all_congruences(C3);
  auto CQ = all_congruences(q.lattice);
  auto cq = con_map(q.projection, *CC, *CQ);
  CHECK(cq(CC->principal(0, 1)) == CQ->omega());
  CHECK_FALSE(cq.separates_zero());

  auto id = con_map(LatticeMap::identity(n5()));
  CHECK(id == JoinMap::identity(id.domain()));

  auto collapse = LatticeMap::constant(n5(), one_element(), 0);
  CHECK_FALSE(separates_zero(con_map(collapse)));
}

TEST_CASE("con_map is functorial", "[congruence]") {
  auto A = chain(2), B = chain(3), C = boolean_lattice(2);
  auto CA = all_congruences(A), CB = all_congruences(B), CC = all_congruences(C);
  for (auto const& f : oracle::all_homs(*A, *B)) {
    for (auto const& g : oracle::all_homs(*B, *C)) {
      LatticeMap F(A, B, f), G(B, C, g);
      auto lhs = con_map(compose(G, F), *CA, *CC);
      auto rhs = compose(con_map(G, *CB, *CC), con_map(F, *CA, *CB));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("separates zero iff embedding on small lattices", "[congruence]") {
  std::vector<LatticePtr> zoo{one_element(), chain(2), chain(3), chain(4), boolean_lattice(2)};
  for (auto const& A : zoo) {
    auto CA = all_congruences(A);
    for (auto const& B : zoo) {
      auto CB = all_congruences(B);
      for (auto const& img : oracle::all_homs(*A, *B)) {
        LatticeMap f(A, B, img);
        CHECK(con_map(f, *CA, *CB).separates_zero() == oracle::is_embedding(*A, *B, img));
      }
    }
  }
}

TEST_CASE("congruence-preserving extensions", "[congruence]") {
  CHECK(is_congruence_preserving_extension(LatticeMap::identity(n5())).ok);
  CHECK(is_congruence_preserving_extension(LatticeMap(chain(2), m3(), {0, 4})).ok);
  auto r = is_congruence_preserving_extension(LatticeMap(chain(2), chain(3), {0, 1}));
  CHECK_FALSE(r.ok);
  REQUIRE(r.witness);
  // ω already extends to ω and to {0},{a,1}.
  CHECK(r.witness->classes() == std::vector<Elem>{0, 1});
  CHECK(r.extensions == 2);
  CHECK_THROWS_AS(is_congruence_preserving_extension(LatticeMap(chain(3), chain(2), {0, 0, 1})),
                  LatticeError);
}

TEST_CASE("meet-irreducible congruences", "[congruence]") {
  auto mi = meet_irreducible_congruences(m3());
  REQUIRE(mi.size() == 1);
  CHECK(mi.front().is_omega());

  auto C3 = chain(3);
  std::set<std::vector<Elem>> got;
  for (auto const& c : meet_irreducible_congruences(C3)) got.insert(c.classes());
  CHECK(got == std::set<std::vector<Elem>>{{0, 0, 2}, {0, 1, 1}});

  auto P = product(chain(2), chain(2));
  std::set<std::vector<Elem>> kernels, mis;
  for (auto const& pi : P.projections) kernels.insert(kernel(pi).classes());
  for (auto const& c : meet_irreducible_congruences(P.lattice)) mis.insert(c.classes());
  CHECK(kernels == mis);
}

TEST_CASE("from_partition validates", "[congruence]") {
  auto C3 = chain(3);
  CHECK_NOTHROW(Congruence::from_partition(C3, {0, 0, 1}));
  try {
    Congruence::from_partition(C3, {0, 1, 0});
    FAIL("expected NotACongruence");
  } catch (LatticeError const& e) {
    CHECK(e.kind() == ErrorKind::NotACongruence);
  }
}
