// conlat: command-line front end for the congruence-lattice toolkit.
//
// Every subcommand prints a result and a certificate; the exit status is 0
// when all certificate checks pass, 1 when one fails and 2 on an error.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "conlat/conlat.hpp"
#include "json_io.hpp"

namespace fs = std::filesystem;
using namespace conlat;
using conlat::io::json;

namespace {

struct Globals {
  std::size_t max_elements = 4096;
  std::size_t max_partition_size = 7;
  std::int64_t timeout_ms = 0;
  std::uint64_t seed = 1;
  bool json = false;
  std::string out_dir;

  SearchBudget budget() const {
    SearchBudget b;
    b.max_partition_size = max_partition_size;
    b.timeout = std::chrono::milliseconds(timeout_ms);
    return b;
  }
};

std::string read_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(fs::path const& path, std::string const& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out << text;
}

LatticePtr load_lattice(std::string const& path) {
  auto text = read_file(path);
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    return io::lattice_from_json(json::parse(text));
  }
  return make_lattice(parse_lat(text));
}

std::vector<Elem> parse_image(std::string const& s) {
  std::vector<Elem> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(static_cast<Elem>(std::stoul(item)));
  }
  return out;
}

/// Prints the result (text or JSON) and returns the exit status.
int finish(Globals const& g, std::string const& command, json result, std::string const& text,
           Report const& cert) {
  if (g.json) {
    json out;
    out["command"] = command;
    out["result"] = std::move(result);
    out["certificate"] = io::to_json(cert);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << text;
    if (!cert.checks().empty()) std::cout << "certificate:\n" << cert.to_text();
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  }
  return cert.all_passed() ? 0 : 1;
}

int cmd_con(Globals const& g, std::string const& file) {
  auto L = load_lattice(file);
  auto C = all_congruences(L);
  Report cert;
  cert.add("con_distributive", is_distributive(*C->lattice()),
           "|Con L| = " + std::to_string(C->size()));
  std::string text = emit_lat(*C->lattice());
  for (Elem k = 0; k < C->size(); ++k) {
    text += "# " + std::to_string(k) + ":";
    for (auto c : (*C)[k].classes()) text += " " + std::to_string(c);
    text += "\n";
  }
  json r;
  r["con"] = io::to_json(*C->lattice());
  r["classes"] = io::classes_json(*C);
  return finish(g, "con", r, text, cert);
}

int cmd_check(Globals const& g, std::string const& file, std::string const& map,
              std::string const& into) {
  auto L = load_lattice(file);
  auto p = check_properties(L);
  auto C = all_congruences(L);
  Report cert;
  cert.add("con_distributive", is_distributive(*C->lattice()));
  json r;
  r["size"] = L->size();
  r["simple"] = p.simple;
  r["atomistic"] = p.atomistic;
  r["sectionally_complemented"] = p.sectionally_complemented;
  r["relatively_complemented"] = p.relatively_complemented;
  r["distributive"] = p.distributive;
  r["boolean"] = p.boolean;
  r["con_size"] = C->size();
  std::ostringstream text;
  text << "size " << L->size() << "\n|Con| " << C->size() << "\n";
  for (auto const& [k, v] : r.items()) {
    if (v.is_boolean()) text << k << " " << (v.get<bool>() ? "yes" : "no") << "\n";
  }
  if (!map.empty()) {
    auto K = into.empty() ? L : load_lattice(into);
    LatticeMap f(L, K, parse_image(map));
    bool emb = f.is_embedding();
    bool sep = con_map(f).separates_zero();
    cert.add("embedding_iff_separates_zero", emb == sep);
    r["embedding"] = emb;
    r["separates_zero"] = sep;
    text << "embedding " << (emb ? "yes" : "no") << "\nseparates_zero " << (sep ? "yes" : "no")
         << "\n";
  }
  return finish(g, "check", r, text.str(), cert);
}

int cmd_boolext(Globals const& g, std::string const& file) {
  auto D = load_lattice(file);
  auto ext = boolean_extension(D);
  Report cert;
  bool retract = true;
  for (Elem x = 0; x < D->size(); ++x) retract = retract && ext.rho(ext.eta(x)) == x;
  cert.add("rho_eta_identity", retract);
  auto at = atoms(*ext.b);
  std::vector<Elem> img;
  for (auto a : at) img.push_back(ext.rho(a));
  std::sort(img.begin(), img.end());
  cert.add("rho_atoms_onto_join_irreducibles", img == ext.join_irreducibles);
  json r;
  r["b"] = io::to_json(*ext.b);
  r["eta"] = ext.eta.image();
  r["rho"] = ext.rho.image();
  r["join_irreducibles"] = ext.join_irreducibles;
  std::string text = emit_lat(*ext.b) + "# eta:";
  for (auto y : ext.eta.image()) text += " " + std::to_string(y);
  text += "\n";
  return finish(g, "boolext", r, text, cert);
}

int cmd_represent(Globals const& g, std::string const& file, int tier) {
  auto D = load_lattice(file);
  RepresentOptions opt;
  opt.tier = tier;
  opt.budget = g.budget();
  auto rep = represent_sc(D, opt);
  auto cert = certify_representation(rep);
  json r;
  r["l"] = io::to_json(*rep.l);
  r["tier"] = rep.tier;
  r["atoms"] = rep.atoms;
  r["alpha"] = io::con_map_json(*rep.con, rep.alpha);
  if (!g.out_dir.empty()) write_file(fs::path(g.out_dir) / "represent.lat", emit_lat(*rep.l));
  std::string text = emit_lat(*rep.l) + "# tier " + std::to_string(rep.tier) + "\n";
  return finish(g, "represent", r, text, cert);
}

int cmd_extendsc(Globals const& g, std::string const& file) {
  auto L = load_lattice(file);
  auto s = simple_sc_extension(L, g.budget());
  Report cert;
  cert.add("embedding", s.emb.is_embedding());
  cert.add("zero_preserved", s.emb(L->bottom()) == s.s->bottom());
  cert.add("simple", is_simple(s.s));
  cert.add("sectionally_complemented", is_sectionally_complemented(*s.s).ok);
  cert.add("relatively_complemented_in", is_relatively_complemented_in(s.emb).ok);
  json r;
  r["m"] = s.m;
  r["embedding"] = s.emb.image();
  r["dual_atom"] = s.dual_atom;
  std::ostringstream text;
  text << "Part(" << s.m << "), |S| = " << s.s->size() << "\n# embedding:";
  for (auto y : s.emb.image()) text << " " << y;
  text << "\n";
  return finish(g, "extendsc", r, text.str(), cert);
}

int cmd_amalgamate(Globals const& g, std::vector<std::string> const& files,
                   std::string const& e1, std::string const& e2) {
  if (files.size() != 3) fail(ErrorKind::InvalidArgument, "amalgamate needs L0 L1 L2");
  auto l0 = load_lattice(files[0]), l1 = load_lattice(files[1]), l2 = load_lattice(files[2]);
  LatticeMap eta1(l0, l1, parse_image(e1)), eta2(l0, l2, parse_image(e2));
  auto a = amalgamate(eta1, eta2, g.budget());
  Report cert;
  cert.add("commuting_square", compose(a.a1, eta1) == compose(a.a2, eta2));
  cert.add("a1_embedding_if_eta_embeddings", !(eta1.is_embedding() && eta2.is_embedding()) ||
                                                 (a.a1.is_embedding() && a.a2.is_embedding()));
  cert.add("host_inclusion_embedding", a.host_inclusion.is_embedding());
  json r;
  r["k"] = io::to_json(*a.k);
  r["a1"] = a.a1.image();
  r["a2"] = a.a2.image();
  r["m"] = a.m;
  std::string text = emit_lat(*a.k) + "# host Part(" + std::to_string(a.m) + ")\n";
  return finish(g, "amalgamate", r, text, cert);
}

int cmd_amalgam_con(Globals const& g, std::string const& file, bool verify_only,
                    std::string const& solution_file, std::string const& out) {
  auto p = io::problem_from_json(json::parse(read_file(file)));
  if (verify_only) {
    if (solution_file.empty()) {
      fail(ErrorKind::InvalidArgument, "--verify-only needs --solution");
    }
    auto s = io::solution_from_json(p, json::parse(read_file(solution_file)));
    auto cert = verify_solution(p, s);
    return finish(g, "amalgam-con", json::object(), "", cert);
  }
  RepresentOptions ro;
  ro.budget = g.budget();
  auto s = solve_general(p, g.budget(), ro);
  auto sol = io::to_json(s);
  if (!out.empty()) write_file(out, sol.dump(2) + "\n");
  std::string text = emit_lat(*s.l);
  return finish(g, "amalgam-con", sol, text, s.certificate);
}

int cmd_cpext(Globals const& g, std::string const& file) {
  auto K = load_lattice(file);
  CpScOptions opt;
  opt.budget = g.budget();
  opt.represent.budget = g.budget();
  auto ext = cp_sc_extension(K, opt);
  json r;
  r["k_prime"] = io::to_json(*ext.k_prime);
  r["embedding"] = ext.emb.image();
  r["fast_path"] = ext.fast_path;
  if (!g.out_dir.empty()) write_file(fs::path(g.out_dir) / "cpext.lat", emit_lat(*ext.k_prime));
  return finish(g, "cpext", r, emit_lat(*ext.k_prime), ext.certificate);
}

int cmd_tower(Globals const& g, std::vector<std::string> const& files, std::size_t depth,
              std::vector<std::string> const& embeds) {
  if (files.empty()) fail(ErrorKind::InvalidArgument, "tower needs at least K0");
  CpScOptions opt;
  opt.budget = g.budget();
  opt.represent.budget = g.budget();
  json r;
  std::ostringstream text;
  auto stage_file = [&](std::size_t n, FiniteLattice const& L) {
    if (!g.out_dir.empty()) {
      write_file(fs::path(g.out_dir) / ("stage" + std::to_string(n) + ".lat"), emit_lat(L));
    }
  };
  if (files.size() == 1) {
    auto t = rc_tower(load_lattice(files[0]), depth, opt);
    json stages = json::array();
    for (std::size_t n = 0; n < t.stages.size(); ++n) {
      auto const& s = t.stages[n];
      stages.push_back({{"size", s.lattice->size()},
                        {"relatively_complemented", s.relatively_complemented},
                        {"boolean_con", s.boolean_con}});
      text << "stage " << n << ": |K| = " << s.lattice->size()
           << (s.relatively_complemented ? ", relatively complemented" : "") << "\n";
      stage_file(n, *s.lattice);
    }
    r["stages"] = stages;
    r["stabilized"] = t.stabilized;
    return finish(g, "tower", r, text.str(), t.certificate);
  }
  if (embeds.size() + 1 != files.size()) {
    fail(ErrorKind::InvalidArgument, "one --embed per consecutive pair K_n -> K_{n+1}");
  }
  std::vector<LatticePtr> ks;
  for (auto const& f : files) ks.push_back(load_lattice(f));
  TowerStepOptions to;
  to.budget = g.budget();
  to.represent.budget = g.budget();
  auto u = LatticeMap::identity(ks[0]);
  Report cert;
  json steps = json::array();
  stage_file(0, *ks[0]);
  for (std::size_t n = 0; n + 1 < ks.size(); ++n) {
    LatticeMap e(ks[n], ks[n + 1], parse_image(embeds[n]));
    auto st = tower_step(u, e, to);
    cert.append(st.certificate, "step" + std::to_string(n) + ".");
    steps.push_back({{"l_next", io::to_json(*st.l_next)},
                     {"f", st.f.image()},
                     {"u_next", st.u_next.image()}});
    text << "step " << n << ": |L_" << n + 1 << "| = " << st.l_next->size() << "\n";
    stage_file(n + 1, *st.l_next);
    u = st.u_next;
  }
  r["steps"] = steps;
  return finish(g, "tower", r, text.str(), cert);
}

int cmd_ladder(Globals const& g, std::string const& file, std::size_t steps,
               std::size_t chain_len, std::string const& s_file) {
  auto p = [&] {
    if (!file.empty()) return io::presentation_from_json(json::parse(read_file(file)));
    auto S = s_file.empty() ? boolean_lattice(2) : load_lattice(s_file);
    return random_presentation(build_2_ladder(steps, chain_len), S, g.seed);
  }();
  LadderOptions opt;
  opt.budget = g.budget();
  opt.represent.budget = g.budget();
  auto sys = run_ladder_system(p, opt);
  json r;
  r["subsets"] = sys.subsets;
  json sizes = json::array();
  std::ostringstream text;
  for (std::size_t i = 0; i < sys.lattices.size(); ++i) {
    sizes.push_back(sys.lattices[i]->size());
    text << "index " << i << ": |S_i| = " << sys.subsets[i].size()
         << ", |L_i| = " << sys.lattices[i]->size() << "\n";
    if (!g.out_dir.empty()) {
      write_file(fs::path(g.out_dir) / ("L" + std::to_string(i) + ".lat"),
                 emit_lat(*sys.lattices[i]));
    }
  }
  r["lattice_sizes"] = sizes;
  json maps = json::object();
  for (auto const& [key, f] : sys.maps) {
    maps[std::to_string(key.first) + "->" + std::to_string(key.second)] = f.image();
  }
  r["maps"] = maps;
  return finish(g, "ladder", r, text.str(), sys.certificate);
}

int cmd_enum(Globals const& g, std::size_t n_max) {
  auto all = enumerate_small_lattices(n_max);
  std::vector<std::size_t> counts(n_max + 1, 0);
  Report cert;
  std::size_t idx = 0;
  for (auto const& L : all) {
    ++counts[L->size()];
    if (!g.out_dir.empty()) {
      write_file(fs::path(g.out_dir) /
                     ("lat" + std::to_string(L->size()) + "_" + std::to_string(idx) + ".lat"),
                 emit_lat(*L));
    }
    ++idx;
  }
  bool distinct = true;
  for (std::size_t a = 0; a < all.size(); ++a) {
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      if (all[a]->size() == all[b]->size() && isomorphic(*all[a], *all[b])) distinct = false;
    }
  }
  cert.add("pairwise_non_isomorphic", distinct);
  json r;
  r["counts"] = std::vector<std::size_t>(counts.begin() + 1, counts.end());
  std::ostringstream text;
  for (std::size_t n = 1; n <= n_max; ++n) text << n << ": " << counts[n] << "\n";
  return finish(g, "enum", r, text.str(), cert);
}

int cmd_dot(std::string const& file) {
  std::cout << emit_dot(*load_lattice(file));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Congruence lattices of finite lattices"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--max-elements", g.max_elements, "Cap on the size of any built lattice");
  app.add_option("--max-partition-size", g.max_partition_size,
                 "Largest m tried for Part(m) searches");
  app.add_option("--timeout-ms", g.timeout_ms, "Search timeout in milliseconds (0 = none)");
  app.add_option("--seed", g.seed, "Seed for randomized generation");
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--out-dir", g.out_dir, "Directory for emitted .lat files");

  std::string file, map, into, solution, out, s_file;
  std::vector<std::string> files, embeds;
  int tier = 0;
  bool verify_only = false;
  std::size_t depth = 1, steps = 1, chain_len = 3, n_max = 6;

  auto* con = app.add_subcommand("con", "Print Con L and its class table");
  con->add_option("lattice", file)->required();
  auto* check = app.add_subcommand("check", "Lattice properties; optional map check");
  check->add_option("lattice", file)->required();
  check->add_option("--map", map, "Comma-separated images of a homomorphism");
  check->add_option("--into", into, "Codomain of --map (default: the lattice itself)");
  auto* boolext = app.add_subcommand("boolext", "Boolean extension of a distributive lattice");
  boolext->add_option("lattice", file)->required();
  auto* represent = app.add_subcommand("represent", "Sectionally complemented L with Con L = D");
  represent->add_option("lattice", file)->required();
  represent->add_option("--tier", tier, "Force a construction tier (1-3)");
  auto* extendsc = app.add_subcommand("extendsc", "Embed L into a partition lattice");
  extendsc->add_option("lattice", file)->required();
  auto* amalg = app.add_subcommand("amalgamate", "Amalgamate L1 <- L0 -> L2 in a partition lattice");
  amalg->add_option("lattices", files)->required()->expected(3);
  std::string e1, e2;
  amalg->add_option("--eta1", e1)->required();
  amalg->add_option("--eta2", e2)->required();
  auto* acon = app.add_subcommand("amalgam-con", "Solve a congruence amalgamation problem");
  acon->add_option("problem", file)->required();
  acon->add_flag("--verify-only", verify_only, "Re-check a stored solution");
  acon->add_option("--solution", solution, "Stored solution for --verify-only");
  acon->add_option("--out", out, "Write the solution JSON here");
  auto* cpext = app.add_subcommand("cpext", "Congruence-preserving sectionally complemented extension");
  cpext->add_option("lattice", file)->required();
  auto* tower = app.add_subcommand("tower", "Iterated extensions");
  tower->add_option("lattices", files)->required();
  tower->add_option("--depth", depth, "Stages of K -> K' for a single lattice");
  tower->add_option("--embed", embeds, "Embedding K_n -> K_{n+1} per consecutive pair");
  auto* ladder = app.add_subcommand("ladder", "Direct system over a finite 2-ladder");
  ladder->add_option("presentation", file, "Presentation JSON (omit for a random one)");
  ladder->add_option("--steps", steps, "Rounds of the random 2-ladder");
  ladder->add_option("--chain-length", chain_len, "Chain length of the random 2-ladder");
  ladder->add_option("--s", s_file, "S for a random presentation (default 2^2)");
  auto* en = app.add_subcommand("enum", "All lattices up to n elements");
  en->add_option("n", n_max)->check(CLI::Range(1, 7));
  auto* dot = app.add_subcommand("dot", "Hasse diagram in DOT");
  dot->add_option("lattice", file)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    ScopedElementCap cap(g.max_elements);
    if (*con) return cmd_con(g, file);
    if (*check) return cmd_check(g, file, map, into);
    if (*boolext) return cmd_boolext(g, file);
    if (*represent) return cmd_represent(g, file, tier);
    if (*extendsc) return cmd_extendsc(g, file);
    if (*amalg) return cmd_amalgamate(g, files, e1, e2);
    if (*acon) return cmd_amalgam_con(g, file, verify_only, solution, out);
    if (*cpext) return cmd_cpext(g, file);
    if (*tower) return cmd_tower(g, files, depth, embeds);
    if (*ladder) return cmd_ladder(g, file, steps, chain_len, s_file);
    if (*en) return cmd_enum(g, n_max);
    if (*dot) return cmd_dot(file);
  } catch (LatticeError const& e) {
    if (g.json) {
      json err{{"error", std::string(to_string(e.kind()))}, {"message", e.what()},
               {"witness", e.witness()}};
      std::cout << err.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
