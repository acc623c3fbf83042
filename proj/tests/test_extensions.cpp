#include <catch_amalgamated.hpp>

#include "conlat/conlat.hpp"
#include "oracles.hpp"

using namespace conlat;

namespace {

void require_all_pass(Report const& r) {
  INFO(r.to_text());
  CHECK(r.all_passed());
}

}  // namespace

TEST_CASE("rectangular extension", "[extensions]") {
  SECTION("simple K") {
    auto R = rectangular_extension(m3());
    CHECK(R.thetas.size() == 1);
    CHECK(R.diag.is_isomorphism());
  }
  SECTION("3-chain") {
    auto R = rectangular_extension(chain(3));
    CHECK(isomorphic(*R.r, *boolean_lattice(2)));
    CHECK(R.diag.is_embedding());
    // 0 and 1 go to the bounds, m to an atom.
    CHECK(R.diag(0) == R.r->bottom());
    CHECK(R.diag(2) == R.r->top());
    CHECK(R.r->lower_covers(R.diag(1)) == std::vector<Elem>{R.r->bottom()});
  }
  SECTION("2^2") {
    auto R = rectangular_extension(boolean_lattice(2));
    CHECK(R.diag.is_isomorphism());
  }
  SECTION("diag separates points") {
    for (auto const& K : {chain(4), n5(), product(chain(2), chain(3)).lattice,
                          downset_lattice(FinitePoset::from_covers(3, {{0, 1}, {0, 2}}))}) {
      auto R = rectangular_extension(K);
      CHECK(oracle::is_embedding(*K, *R.r, R.diag.image()));
    }
  }
}

TEST_CASE("congruence-preserving sectionally complemented extensions", "[extensions]") {
  SECTION("M3 takes the fast path") {
    auto x = cp_sc_extension(m3());
    CHECK(x.fast_path);
    CHECK(x.emb.image() == std::vector<Elem>{0, 1, 2, 3, 4});
  }
  for (auto const& [name, K] : std::vector<std::pair<std::string, LatticePtr>>{
           {"3-chain", chain(3)}, {"N5", n5()}, {"2", chain(2)}, {"4-chain", chain(4)}}) {
    DYNAMIC_SECTION(name) {
      auto x = cp_sc_extension(K);
      require_all_pass(x.certificate);
      CHECK(is_congruence_preserving_extension(x.emb).ok);
      auto props = check_properties(x.k_prime);
      CHECK(props.sectionally_complemented);
      CHECK(props.atomistic);
      CHECK(is_relatively_complemented_in(x.emb).ok);
      CHECK(isomorphic(*all_congruences(x.k_prime)->lattice(), *all_congruences(K)->lattice()));
    }
  }
}

TEST_CASE("rc tower", "[extensions]") {
  SECTION("depth 0") {
    auto t = rc_tower(chain(3), 0);
    CHECK(t.stages.size() == 1);
  }
  SECTION("relatively complemented K is constant") {
    auto t = rc_tower(boolean_lattice(2), 2);
    REQUIRE(t.stages.size() == 3);
    CHECK(t.stabilized);
    for (auto const& s : t.stages) CHECK(s.lattice->size() == 4);
  }
  SECTION("3-chain, depth 2") {
    auto t = rc_tower(chain(3), 2);
    REQUIRE(t.stages.size() == 3);
    require_all_pass(t.certificate);
    for (std::size_t n = 1; n < t.stages.size(); ++n) {
      auto const& s = t.stages[n];
      bool const grew = s.lattice->size() > t.stages[n - 1].lattice->size();
      CHECK((grew || (s.relatively_complemented && s.boolean_con)));
      if (s.relatively_complemented) CHECK(s.boolean_con);
    }
  }
}

TEST_CASE("tower step", "[extensions]") {
  SECTION("identities") {
    auto K = chain(3);
    auto id = LatticeMap::identity(K);
    auto st = tower_step(id, id);
    require_all_pass(st.certificate);
  }
  SECTION("2 inside the 3-chain") {
    auto two = chain(2), c3 = chain(3);
    auto u0 = LatticeMap::identity(two);
    LatticeMap e0(two, c3, {0, 2});
    auto st = tower_step(u0, e0);
    require_all_pass(st.certificate);
    CHECK(isomorphic(*st.con_next->lattice(), *boolean_lattice(2)));
    CHECK(st.f.is_embedding());
  }
  SECTION("u not congruence-preserving") {
    auto two = chain(2), c3 = chain(3);
    LatticeMap u(two, c3, {0, 1});
    LatticeMap e(two, two, {0, 1});
    try {
      tower_step(u, e);
      FAIL("expected PreconditionFailed");
    } catch (LatticeError const& err) {
      CHECK(err.kind() == ErrorKind::PreconditionFailed);
      CHECK_FALSE(err.witness().empty());
    }
  }
}
