// JSON mirrors of the .lat format, maps, reports and problem files.
#ifndef CONLAT_TOOLS_JSON_IO_HPP_
#define CONLAT_TOOLS_JSON_IO_HPP_

#include <string>
#include <utility>
#include <vector>

#include "conlat/conlat.hpp"
#include "json.hpp"

namespace conlat::io {

using json = nlohmann::ordered_json;

inline json covers_json(FiniteLattice const& L) {
  json covers = json::array();
  for (Elem a = 0; a < L.size(); ++a) {
    auto ups = L.upper_covers(a);
    std::sort(ups.begin(), ups.end());
    for (auto b : ups) covers.push_back({a, b});
  }
  return covers;
}

inline json to_json(FiniteLattice const& L) {
  json j;
  j["n"] = L.size();
  j["covers"] = covers_json(L);
  if (L.has_labels()) {
    json labels = json::array();
    for (Elem a = 0; a < L.size(); ++a) labels.push_back(L.label(a));
    j["labels"] = labels;
  }
  return j;
}

inline void require(bool ok, std::string const& what) {
  if (!ok) fail(ErrorKind::ParseError, "JSON: " + what);
}

inline LatticePtr lattice_from_json(json const& j) {
  require(j.is_object() && j.contains("n") && j["n"].is_number_unsigned(),
          "lattice needs an unsigned 'n'");
  auto n = j["n"].get<std::size_t>();
  std::vector<std::pair<Elem, Elem>> covers;
  if (j.contains("covers")) {
    for (auto const& c : j["covers"]) {
      require(c.is_array() && c.size() == 2, "each cover is a pair");
      covers.emplace_back(c[0].get<Elem>(), c[1].get<Elem>());
    }
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
  return make_lattice(FiniteLattice::from_covers(n, covers, std::move(labels)));
}

inline FinitePoset poset_from_json(json const& j) {
  require(j.is_object() && j.contains("n"), "poset needs 'n'");
  auto n = j["n"].get<std::size_t>();
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  if (j.contains("covers")) {
    for (auto const& c : j["covers"]) covers.emplace_back(c[0].get<std::size_t>(), c[1].get<std::size_t>());
  }
  return FinitePoset::from_covers(n, covers);
}

inline json to_json(Report const& r) {
  json checks = json::array();
  for (auto const& c : r.checks()) {
    json e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    if (!c.detail.empty()) e["detail"] = c.detail;
    if (!c.witness.empty()) e["witness"] = c.witness;
    checks.push_back(e);
  }
  json j;
  j["all_passed"] = r.all_passed();
  j["checks"] = checks;
  return j;
}

inline json classes_json(CongruenceLattice const& C) {
  json t = json::array();
  for (auto const& c : C.table()) t.push_back(c.classes());
  return t;
}

/// A join-0 map out of Con L as its values on the join-irreducible
/// congruences, each named by a generating pair: [[a, b, value], ...].
inline json con_map_json(CongruenceLattice const& C, JoinMap const& f) {
  json out = json::array();
  for (std::size_t g = 0; g < C.generator_pairs().size(); ++g) {
    auto [a, b] = C.generator_pairs()[g];
    out.push_back({a, b, f(C.generator_indices()[g])});
  }
  return out;
}

inline JoinMap con_map_from_json(CongruenceLattice const& C, LatticePtr const& target,
                                 json const& j) {
  require(j.is_array(), "map out of Con L is a list of [a, b, value]");
  auto const J = join_irreducibles(*C.lattice());
  std::vector<Elem> values(J.size(), 0);
  std::vector<bool> given(J.size(), false);
  for (auto const& e : j) {
    require(e.is_array() && e.size() == 3, "entry is [a, b, value]");
    auto a = e[0].get<Elem>(), b = e[1].get<Elem>(), v = e[2].get<Elem>();
    require(a < C.base()->size() && b < C.base()->size(), "pair out of range");
    require(v < target->size(), "value out of range");
    auto t = C.principal(a, b);
    for (std::size_t k = 0; k < J.size(); ++k) {
      if (J[k] == t) {
        values[k] = v;
        given[k] = true;
      }
    }
  }
  for (std::size_t k = 0; k < J.size(); ++k) {
    require(given[k], "no value for a join-irreducible congruence");
  }
  return join_map_from_irreducibles(C.lattice(), target, values);
}

inline AmalgamationProblem problem_from_json(json const& j) {
  for (char const* key : {"l0", "l1", "l2", "d", "eta1", "eta2", "psi1", "psi2"}) {
    require(j.contains(key), std::string("problem needs '") + key + "'");
  }
  auto l0 = lattice_from_json(j["l0"]);
  auto l1 = lattice_from_json(j["l1"]);
  auto l2 = lattice_from_json(j["l2"]);
  auto d = lattice_from_json(j["d"]);
  LatticeMap eta1(l0, l1, j["eta1"].get<std::vector<Elem>>());
  LatticeMap eta2(l0, l2, j["eta2"].get<std::vector<Elem>>());
  auto c1 = all_congruences(l1);
  auto c2 = all_congruences(l2);
  auto psi1 = con_map_from_json(*c1, d, j["psi1"]);
  auto psi2 = con_map_from_json(*c2, d, j["psi2"]);
  bool zero = j.value("zero_mode", true);
  return AmalgamationProblem::make(eta1, eta2, d, c1, c2, psi1, psi2, zero);
}

inline json to_json(AmalgamationSolution const& s) {
  json j;
  j["l"] = to_json(*s.l);
  j["phi1"] = s.phi1.image();
  j["phi2"] = s.phi2.image();
  j["alpha"] = con_map_json(*s.con, s.alpha);
  j["dual_atoms"] = s.dual_atoms;
  j["certificate"] = to_json(s.certificate);
  return j;
}

/// Rebuilds the parts of a stored solution that verify_solution reads.
inline AmalgamationSolution solution_from_json(AmalgamationProblem const& p, json const& j) {
  for (char const* key : {"l", "phi1", "phi2", "alpha"}) {
    require(j.contains(key), std::string("solution needs '") + key + "'");
  }
  auto l = lattice_from_json(j["l"]);
  auto con = all_congruences(l);
  AmalgamationSolution s{l,
                         LatticeMap(p.l1(), l, j["phi1"].get<std::vector<Elem>>()),
                         LatticeMap(p.l2(), l, j["phi2"].get<std::vector<Elem>>()),
                         con,
                         con_map_from_json(*con, p.d, j["alpha"]),
                         {},
                         j.value("dual_atoms", std::vector<Elem>{}),
                         std::nullopt,
                         std::nullopt};
  return s;
}

inline LadderPresentation presentation_from_json(json const& j) {
  for (char const* key : {"index", "s", "subsets"}) {
    require(j.contains(key), std::string("presentation needs '") + key + "'");
  }
  return {poset_from_json(j["index"]), lattice_from_json(j["s"]),
          j["subsets"].get<std::vector<std::vector<Elem>>>()};
}

inline json to_json(LatticeMap const& f) { return f.image(); }

}  // namespace conlat::io

#endif  // CONLAT_TOOLS_JSON_IO_HPP_
