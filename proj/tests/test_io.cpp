#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "conlat/conlat.hpp"
#include "oracles.hpp"

using namespace conlat;

namespace {

using Rel = std::vector<std::vector<bool>>;

bool has_bounds(Rel const& r, std::size_t n) {
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t lubs = 0, glbs = 0;
      for (std::size_t u = 0; u < n; ++u) {
        if (!r[a][u] || !r[b][u]) continue;
        bool least = true;
        for (std::size_t v = 0; v < n; ++v) {
          if (r[a][v] && r[b][v] && !r[u][v]) least = false;
        }
        lubs += least;
      }
      for (std::size_t l = 0; l < n; ++l) {
        if (!r[l][a] || !r[l][b]) continue;
        bool greatest = true;
        for (std::size_t v = 0; v < n; ++v) {
          if (r[v][a] && r[v][b] && !r[v][l]) greatest = false;
        }
        glbs += greatest;
      }
      if (lubs != 1 || glbs != 1) return false;
    }
  }
  return true;
}

bool same_up_to_permutation(Rel const& x, Rel const& y, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) {
      for (std::size_t b = 0; b < n && ok; ++b) ok = x[a][b] == y[p[a]][p[b]];
    }
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

// Slow count: every relation on the n-2 middle points with each pair
// unrelated, <, or >, closed transitively by filtering, bounds added,
// lattices kept, isomorphic copies removed by trying all permutations.
std::size_t slow_count(std::size_t n) {
  if (n <= 2) return 1;
  std::size_t const k = n - 2;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i < pairs.size(); ++i) total *= 3;
  std::vector<Rel> found;
  for (std::size_t code = 0; code < total; ++code) {
    Rel r(n, std::vector<bool>(n, false));
    for (std::size_t a = 0; a < n; ++a) {
      r[a][a] = true;
      r[0][a] = true;
      r[a][n - 1] = true;
    }
    std::size_t c = code;
    for (auto [i, j] : pairs) {
      auto t = c % 3;
      c /= 3;
      if (t == 1) r[i + 1][j + 1] = true;
      if (t == 2) r[j + 1][i + 1] = true;
    }
    bool transitive = true;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t d = 0; d < n; ++d) {
          if (r[a][b] && r[b][d] && !r[a][d]) transitive = false;
        }
      }
    }
    if (!transitive || !has_bounds(r, n)) continue;
    bool seen = false;
    for (auto const& f : found) {
      if (same_up_to_permutation(f, r, n)) {
        seen = true;
        break;
      }
    }
    if (!seen) found.push_back(r);
  }
  return found.size();
}

}  // namespace

TEST_CASE("parse_lat", "[io]") {
  auto L = parse_lat("lat 2\nc 0 1\n");
  CHECK(L == *chain(2));
  auto M = parse_lat("# M3\nlat 5\nc 0 1\nc 0 2 # middle\n\nc 0 3\nc 1 4\nc 2 4\nc 3 4\n");
  CHECK(M == *m3());
  try {
    parse_lat("lat 2\nc 0\n");
    FAIL("expected a ParseError");
  } catch (LatticeError const& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(e.witness().front() == 2);
  }
  CHECK_THROWS_AS(parse_lat("c 0 1\n"), LatticeError);
  CHECK_THROWS_AS(parse_lat("lat 2\nc 0 x\n"), LatticeError);
  CHECK_THROWS_AS(parse_lat("lat 2\nc 0 2\n"), LatticeError);
  try {
    parse_lat("lat 4\nc 0 1\nc 0 2\n");
    FAIL("expected NotALattice");
  } catch (LatticeError const& e) {
    CHECK(e.kind() == ErrorKind::NotALattice);
  }
}

TEST_CASE("emit_lat round trip", "[io]") {
  for (auto const& L : enumerate_small_lattices(6)) {
    auto text = emit_lat(*L);
    auto back = parse_lat(text);
    CHECK(back == *L);
    CHECK(emit_lat(back) == text);
  }
  // A non-canonical numbering comes back in canonical form.
  auto L = parse_lat("lat 3\nc 2 0\nc 0 1\n");
  CHECK(emit_lat(L) == "lat 3\nc 0 1\nc 1 2\n");
}

TEST_CASE("emit_dot", "[io]") {
  auto dot = emit_dot(*boolean_lattice(2));
  CHECK(dot.find("0 -> 1;") != std::string::npos);
  CHECK(dot.find("{ rank=same; 1; 2; }") != std::string::npos);
}

TEST_CASE("enumerate_small_lattices", "[io][enumerate]") {
  std::vector<std::size_t> counts;
  for (std::size_t n = 1; n <= 6; ++n) counts.push_back(enumerate_lattices_of_size(n).size());
  CHECK(counts == std::vector<std::size_t>{1, 1, 1, 2, 5, 15});
  for (std::size_t n = 1; n <= 6; ++n) {
    INFO("n = " << n);
    CHECK(slow_count(n) == counts[n - 1]);
  }
  auto all = enumerate_small_lattices(6);
  for (std::size_t a = 0; a < all.size(); ++a) {
    CHECK(oracle::lattice_axioms(*all[a]));
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      CHECK_FALSE(oracle::isomorphic(*all[a], *all[b]));
    }
  }
  CHECK_THROWS_AS(enumerate_small_lattices(8), LatticeError);
}
