#ifndef CONLAT_IO_HPP_
#define CONLAT_IO_HPP_

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "conlat/errors.hpp"
#include "conlat/lattice.hpp"

namespace conlat {

namespace detail {

[[noreturn]] inline void parse_fail(std::size_t line, std::size_t col, std::string const& msg) {
  fail(ErrorKind::ParseError,
       "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg,
       {line, col});
}

struct Token {
  std::string_view text;
  std::size_t col;
};

inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size() || s[i] == '#') break;
    std::size_t const start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '#') ++i;
    out.push_back({s.substr(start, i - start), start + 1});
  }
  return out;
}

inline std::size_t parse_index(Token const& t, std::size_t line) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc{} || p != t.text.data() + t.text.size()) {
    parse_fail(line, t.col, "expected a decimal index, got '" + std::string(t.text) + "'");
  }
  return v;
}

}  // namespace detail

/// Reads the .lat format:
///
///     lat <n>
///     c <a> <b>     # a is covered by b
///
/// Blank lines and `#` comments are ignored. Any set of pairs whose
/// reflexive-transitive closure is a lattice order is accepted; the result
/// is re-indexed to a linear extension.
inline FiniteLattice parse_lat(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t n = 0;
  bool header = false;
  std::vector<std::pair<Elem, Elem>> covers;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto const end = std::min(text.find('\n', pos), text.size());
    auto line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    ++line_no;
    auto toks = detail::tokenize(line);
    if (toks.empty()) continue;
    if (!header) {
      if (toks[0].text != "lat") detail::parse_fail(line_no, toks[0].col, "expected 'lat <n>'");
      if (toks.size() != 2) {
        detail::parse_fail(line_no, toks.size() < 2 ? line.size() + 1 : toks[2].col,
                           "expected 'lat <n>'");
      }
      n = detail::parse_index(toks[1], line_no);
      if (n == 0) detail::parse_fail(line_no, toks[1].col, "a lattice needs at least one element");
      check_cap(n, "parse_lat");
      header = true;
      continue;
    }
    if (toks[0].text != "c") {
      detail::parse_fail(line_no, toks[0].col, "expected 'c <a> <b>'");
    }
    if (toks.size() != 3) {
      detail::parse_fail(line_no, toks.size() < 3 ? line.size() + 1 : toks[3].col,
                         "expected 'c <a> <b>'");
    }
    auto a = detail::parse_index(toks[1], line_no);
    auto b = detail::parse_index(toks[2], line_no);
    if (a >= n) detail::parse_fail(line_no, toks[1].col, "index out of range");
    if (b >= n) detail::parse_fail(line_no, toks[2].col, "index out of range");
    covers.emplace_back(static_cast<Elem>(a), static_cast<Elem>(b));
  }
  if (!header) detail::parse_fail(line_no, 1, "missing 'lat <n>' header");
  return FiniteLattice::from_covers(n, covers);
}

/// Canonical text: the header, then one line per cover in increasing order.
inline std::string emit_lat(FiniteLattice const& L) {
  std::string out = "lat " + std::to_string(L.size()) + "\n";
  for (Elem a = 0; a < L.size(); ++a) {
    auto ups = L.upper_covers(a);
    std::sort(ups.begin(), ups.end());
    for (auto b : ups) out += "c " + std::to_string(a) + " " + std::to_string(b) + "\n";
  }
  return out;
}

/// Hasse diagram with ranks by height, bottom at rank 0.
inline std::string emit_dot(FiniteLattice const& L, std::string const& name = "L") {
  std::string out = "digraph " + name + " {\n  rankdir=BT;\n  node [shape=circle];\n";
  auto const P = L.as_poset();
  for (Elem a = 0; a < L.size(); ++a) {
    std::string label = L.has_labels() ? L.label(a) : std::to_string(a);
    std::string escaped;
    for (char ch : label) {
      if (ch == '"' || ch == '\\') escaped += '\\';
      escaped += ch;
    }
    out += "  " + std::to_string(a) + " [label=\"" + escaped + "\"];\n";
  }
  for (std::size_t h = 0, any = 1; any; ++h) {
    any = 0;
    std::string same;
    for (Elem a = 0; a < L.size(); ++a) {
      if (P.height(a) == h) {
        same += " " + std::to_string(a) + ";";
        any = 1;
      }
    }
    if (any) out += "  { rank=same;" + same + " }\n";
  }
  for (Elem a = 0; a < L.size(); ++a) {
    auto ups = L.upper_covers(a);
    std::sort(ups.begin(), ups.end());
    for (auto b : ups) out += "  " + std::to_string(a) + " -> " + std::to_string(b) + ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace conlat

#endif  // CONLAT_IO_HPP_
