#ifndef CONLAT_PARTITION_HPP_
#define CONLAT_PARTITION_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "conlat/errors.hpp"
#include "conlat/lattice.hpp"

namespace conlat {

namespace detail {

using Rgs = std::vector<std::uint8_t>;

inline void all_rgs(std::size_t m, Rgs& cur, std::uint8_t max, std::vector<Rgs>& out) {
  if (cur.size() == m) {
    out.push_back(cur);
    return;
  }
  for (std::uint8_t b = 0; b <= max + 1; ++b) {
    cur.push_back(b);
    all_rgs(m, cur, std::max(max, b), out);
    cur.pop_back();
  }
}

inline Rgs normalize(std::vector<std::size_t> const& labels) {
  std::map<std::size_t, std::uint8_t> seen;
  Rgs r(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    r[i] = seen.emplace(labels[i], static_cast<std::uint8_t>(seen.size())).first->second;
  }
  return r;
}

inline std::size_t block_count(Rgs const& r) {
  return r.empty() ? 0 : *std::max_element(r.begin(), r.end()) + std::size_t{1};
}

}  // namespace detail

/// Part(m): equivalence relations on m points ordered by refinement.
/// Elements are restricted growth strings sorted by block count (descending)
/// then lexicographically, so 0 is the discrete partition and the top is the
/// one-block partition. Labels list the blocks, e.g. "12|3". Memoised.
inline LatticePtr partition_lattice(std::size_t m) {
  if (m == 0) fail(ErrorKind::InvalidArgument, "partition lattice needs m >= 1");
  if (m > 12) fail(ErrorKind::SizeCapExceeded, "partition lattice too large", {m});
  static std::mutex mu;
  static std::map<std::size_t, LatticePtr> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(m); it != cache.end()) {
      check_cap(it->second->size(), "partition lattice");
      return it->second;
    }
  }
  std::vector<detail::Rgs> parts;
  detail::Rgs cur{0};
  if (m == 1) {
    parts.push_back(cur);
  } else {
    detail::all_rgs(m, cur, 0, parts);
  }
  check_cap(parts.size(), "partition lattice");
  std::sort(parts.begin(), parts.end(), [](auto const& a, auto const& b) {
    auto ca = detail::block_count(a), cb = detail::block_count(b);
    if (ca != cb) return ca > cb;
    return a < b;
  });
  std::map<detail::Rgs, Elem> index;
  for (Elem k = 0; k < parts.size(); ++k) index.emplace(parts[k], k);
  std::size_t const n = parts.size();
  std::vector<Elem> join(n * n), meet(n * n);
  std::vector<std::size_t> lab(m);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = a; b < n; ++b) {
      auto const& pa = parts[a];
      auto const& pb = parts[b];
      for (std::size_t i = 0; i < m; ++i) lab[i] = pa[i] * 16 + pb[i];
      Elem const mt = index.at(detail::normalize(lab));
      // Join: merge blocks of pa that share a block of pb.
      std::vector<std::size_t> parent(m);
      for (std::size_t i = 0; i < m; ++i) parent[i] = i;
      auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
          if (pa[i] == pa[j] || pb[i] == pb[j]) {
            auto ri = find(i), rj = find(j);
            if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
          }
        }
      }
      for (std::size_t i = 0; i < m; ++i) lab[i] = find(i);
      Elem const jn = index.at(detail::normalize(lab));
      join[a * n + b] = join[b * n + a] = jn;
      meet[a * n + b] = meet[b * n + a] = mt;
    }
  }
  std::vector<std::string> labels;
  for (auto const& p : parts) {
    std::string s;
    for (std::size_t blk = 0; blk < detail::block_count(p); ++blk) {
      if (blk) s += "|";
      for (std::size_t i = 0; i < m; ++i) {
        if (p[i] == blk) s += std::to_string(i + 1);
      }
    }
    labels.push_back(s);
  }
  auto L = make_lattice(
      FiniteLattice::from_tables(n, std::move(join), std::move(meet), std::move(labels)));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(m, L);
  return L;
}

}  // namespace conlat

#endif  // CONLAT_PARTITION_HPP_
