#include <catch_amalgamated.hpp>

#include "conlat/conlat.hpp"
#include "oracles.hpp"

using namespace conlat;

TEST_CASE("boolean extension", "[birkhoff]") {
  SECTION("D = 2") {
    auto ext = boolean_extension(chain(2));
    CHECK(ext.b->size() == 2);
    CHECK(ext.eta.image() == std::vector<Elem>{0, 1});
    CHECK(ext.rho.image() == std::vector<Elem>{0, 1});
  }
  SECTION("D = 3-chain") {
    auto ext = boolean_extension(chain(3));
    REQUIRE(ext.b->size() == 4);
    REQUIRE(ext.join_irreducibles == std::vector<Elem>{1, 2});
    // Bit 0 is m, bit 1 is the top.
    CHECK(ext.eta(1) == 0b01);
    CHECK(ext.eta(2) == 0b11);
    CHECK(ext.rho(0b10) == 2);
    CHECK(ext.rho(0b11) == 2);
    CHECK(ext.rho(0b01) == 1);
  }
  SECTION("D Boolean") {
    auto ext = boolean_extension(boolean_lattice(3));
    CHECK(ext.eta.is_isomorphism());
  }
  SECTION("non-distributive") {
    CHECK_THROWS_AS(boolean_extension(m3()), LatticeError);
  }
}

TEST_CASE("downset lattices", "[birkhoff]") {
  auto anti = FinitePoset::from_covers(3, {});
  CHECK(isomorphic(*downset_lattice(anti), *boolean_lattice(3)));
  auto c2 = FinitePoset::from_covers(2, {{0, 1}});
  CHECK(isomorphic(*downset_lattice(c2), *chain(3)));
  auto V = downset_lattice(FinitePoset::from_covers(3, {{0, 1}, {0, 2}}));
  CHECK(V->size() == 5);
  CHECK(join_irreducibles(*V).size() == 3);
  CHECK(oracle::distributive(*V));
}

TEST_CASE("Birkhoff round trip", "[birkhoff]") {
  std::vector<LatticePtr> ds{chain(2), chain(4), boolean_lattice(3),
                             product(chain(3), chain(3)).lattice,
                             product(chain(2), chain(4)).lattice};
  for (auto const& D : ds) {
    auto back = downset_lattice(join_irreducible_poset(*D));
    CHECK(is_isomorphic(back, D));
    auto ext = boolean_extension(D);
    CHECK(ext.eta.is_embedding());
    CHECK(atoms(*ext.b).size() == join_irreducibles(*D).size());
    for (Elem x = 0; x < D->size(); ++x) CHECK(ext.rho(ext.eta(x)) == x);
  }
}
