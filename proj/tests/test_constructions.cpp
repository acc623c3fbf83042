#include <catch_amalgamated.hpp>

#include "conlat/conlat.hpp"
#include "oracles.hpp"

using namespace conlat;

TEST_CASE("partition lattices", "[constructions]") {
  std::vector<std::size_t> const bell{1, 2, 5, 15, 52};
  for (std::size_t m = 1; m <= 5; ++m) {
    auto P = partition_lattice(m);
    CHECK(P->size() == bell[m - 1]);
    if (m >= 2) {
      auto props = check_properties(P);
      CHECK(props.simple);
      CHECK(props.relatively_complemented);
      CHECK_FALSE(coatoms(*P).empty());
    }
  }
  CHECK(isomorphic(*partition_lattice(3), *m3()));
  auto P4 = partition_lattice(4);
  CHECK(atoms(*P4).size() == 6);
  CHECK(coatoms(*P4).size() == 7);
  // Partition enumeration of Part(m) itself is only feasible for m <= 3.
  for (std::size_t m = 2; m <= 3; ++m) {
    CHECK(oracle::congruences(*partition_lattice(m)).size() == 2);
  }
  CHECK(partition_lattice(4)->label(0) == "1|2|3|4");
  CHECK(partition_lattice(4)->label(14) == "1234");
}

TEST_CASE("simple sectionally complemented extensions", "[constructions]") {
  SECTION("L = 2") {
    auto ext = simple_sc_extension(chain(2));
    CHECK(ext.m == 2);
    CHECK(ext.emb.image() == std::vector<Elem>{0, 1});
  }
  SECTION("L = 2^2") {
    auto ext = simple_sc_extension(boolean_lattice(2));
    CHECK(ext.m == 3);
    CHECK(oracle::is_hom(*boolean_lattice(2), *ext.s, ext.emb.image()));
    CHECK(ext.emb(0) == 0);
    CHECK(ext.emb(3) == ext.s->top());
  }
  SECTION("L = N5") {
    auto ext = simple_sc_extension(n5());
    CHECK(ext.m == 4);
    CHECK(ext.emb.is_embedding());
    CHECK(con_map(ext.emb).separates_zero());
    CHECK(is_relatively_complemented_in(ext.emb).ok);
    auto p = check_properties(ext.s);
    CHECK(p.simple);
    CHECK(p.sectionally_complemented);
    CHECK(ext.s->upper_covers(ext.dual_atom) == std::vector<Elem>{ext.s->top()});
  }
  SECTION("budget") {
    SearchBudget b;
    b.max_partition_size = 3;
    try {
      simple_sc_extension(n5(), b);
      FAIL("expected SearchExhausted");
    } catch (LatticeError const& e) {
      CHECK(e.kind() == ErrorKind::SearchExhausted);
      CHECK(e.witness() == std::vector<std::size_t>{3});
    }
  }
}

TEST_CASE("amalgamation", "[constructions]") {
  SECTION("identity maps") {
    auto L = n5();
    auto id = LatticeMap::identity(L);
    auto a = amalgamate(id, id);
    CHECK(isomorphic(*a.k, *L));
    CHECK(a.a1 == a.a2);
    CHECK(a.a1.is_isomorphism());
  }
  SECTION("two 3-chains over their bounds") {
    auto two = chain(2), c3 = chain(3);
    LatticeMap eta(two, c3, {0, 2});
    auto a = amalgamate(eta, eta);
    CHECK(a.m <= 4);
    for (Elem x = 0; x < 2; ++x) CHECK(a.a1(eta(x)) == a.a2(eta(x)));
    CHECK(a.a1.is_embedding());
    CHECK(a.a2.is_embedding());
    CHECK(a.a1(0) == a.k->bottom());
    CHECK(a.a1(2) == a.k->top());
  }
  SECTION("non-embeddings are rejected") {
    LatticeMap squash(chain(3), chain(2), {0, 0, 1});
    try {
      amalgamate(squash, squash);
      FAIL("expected NotAnEmbedding");
    } catch (LatticeError const& e) {
      CHECK(e.kind() == ErrorKind::NotAnEmbedding);
    }
  }
}

TEST_CASE("gadget", "[constructions]") {
  auto H = gadget();
  CHECK(H->size() == 9);
  CHECK(is_sectionally_complemented(*H).ok);
  auto con = all_congruences(H);
  CHECK(isomorphic(*con->lattice(), *chain(3)));
  // Θ(0,q) is the middle congruence, Θ(0,p) = ι.
  CHECK(con->principal(1, 0) == con->iota());
  CHECK(con->principal(2, 0) != con->iota());
  CHECK(con->principal(2, 0) != con->omega());
}

TEST_CASE("sectionally complemented representations", "[constructions]") {
  SECTION("D = 2") {
    auto rep = represent_sc(chain(2));
    CHECK(rep.l->size() == 2);
    CHECK(rep.atoms == std::vector<Elem>{1});
    CHECK(rep.alpha(rep.con->principal(1, 0)) == 1);
  }
  SECTION("D = 2^2") {
    auto rep = represent_sc(boolean_lattice(2));
    CHECK(rep.tier == 1);
    CHECK(isomorphic(*rep.l, *boolean_lattice(2)));
    CHECK(certify_representation(rep).all_passed());
  }
  SECTION("D = 3-chain by the gadget") {
    auto D = chain(3);
    auto rep = represent_sc(D);
    CHECK(rep.tier == 2);
    CHECK(certify_representation(rep).all_passed());
    CHECK(isomorphic(*all_congruences(rep.l)->lattice(), *D));
    CHECK(oracle::sectionally_complemented(*rep.l));
  }
  SECTION("D = 3-chain by search") {
    RepresentOptions opt;
    opt.tier = 3;
    auto rep = represent_sc(chain(3), opt);
    CHECK(rep.tier == 3);
    CHECK(certify_representation(rep).all_passed());
  }
  SECTION("every D with at most three join-irreducibles") {
    std::vector<FinitePoset> ps{
        FinitePoset::from_covers(0, {}),
        FinitePoset::from_covers(1, {}),
        FinitePoset::from_covers(2, {}),
        FinitePoset::from_covers(2, {{0, 1}}),
        FinitePoset::from_covers(3, {}),
        FinitePoset::from_covers(3, {{0, 1}}),
        FinitePoset::from_covers(3, {{0, 1}, {1, 2}}),
        FinitePoset::from_covers(3, {{0, 1}, {0, 2}}),
        FinitePoset::from_covers(3, {{0, 2}, {1, 2}}),
    };
    for (auto const& P : ps) {
      auto D = downset_lattice(P);
      auto rep = represent_sc(D);
      INFO("|D| = " << D->size());
      CHECK(certify_representation(rep).all_passed());
      CHECK(rep.atoms.size() == P.size());
    }
  }
  SECTION("non-distributive input") {
    CHECK_THROWS_AS(represent_sc(n5()), LatticeError);
  }
}

TEST_CASE("chopped lattices", "[constructions]") {
  SECTION("a lattice is its own ideal lattice") {
    auto L = n5();
    auto id = ideal_lattice_of_chopped(chopped_from_lattice(L));
    CHECK(isomorphic(*id.lattice, *L));
  }
  SECTION("two 2-chains over the bottom") {
    auto two = chain(2);
    auto C = merge_chopped(two, two, {0}, {0}, {0});
    CHECK(C.size() == 3);
    CHECK_FALSE(C.join(1, 2));
    auto id = ideal_lattice_of_chopped(C);
    CHECK(isomorphic(*id.lattice, *boolean_lattice(2)));
  }
  SECTION("two squares over a 2-element ideal") {
    auto sq = boolean_lattice(2);
    auto C = merge_chopped(sq, sq, {0, 1}, {0, 1}, {0, 1});
    CHECK(C.size() == 6);
    auto id = ideal_lattice_of_chopped(C);
    // Ideals: down-sets closed under the joins that exist.
    std::size_t count = 0;
    for (unsigned s = 0; s < (1U << C.size()); ++s) {
      if (!(s & 1U)) continue;
      bool ok = true;
      for (Elem x = 0; x < C.size() && ok; ++x) {
        if (!((s >> x) & 1U)) continue;
        for (Elem y = 0; y < C.size() && ok; ++y) {
          if (C.leq(y, x) && !((s >> y) & 1U)) ok = false;
          if (!((s >> y) & 1U)) continue;
          if (auto j = C.join(x, y); j && !((s >> *j) & 1U)) ok = false;
        }
      }
      count += ok;
    }
    CHECK(id.lattice->size() == count);
    CHECK(count == 8);
  }
  SECTION("seam errors") {
    auto sq = boolean_lattice(2);
    CHECK_THROWS_AS(merge_chopped(sq, sq, {0, 1, 2, 3}, {0, 1, 2, 3}, {0, 3, 1, 2}),
                    LatticeError);
    try {
      merge_chopped(chain(3), chain(3), {0, 1}, {0, 1}, {1, 0});
      FAIL("expected NotAnIsomorphism");
    } catch (LatticeError const& e) {
      CHECK(e.kind() == ErrorKind::NotAnIsomorphism);
    }
  }
}
