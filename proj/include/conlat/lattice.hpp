#ifndef CONLAT_LATTICE_HPP_
#define CONLAT_LATTICE_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conlat/bitset.hpp"
#include "conlat/errors.hpp"
#include "conlat/poset.hpp"

namespace conlat {

using Elem = std::uint32_t;

class FiniteLattice;
using LatticePtr = std::shared_ptr<FiniteLattice const>;

/// An explicit finite lattice on the indices 0..n-1.
///
/// Indices always form a linear extension of the order, so 0 is the bottom,
/// n-1 the top, and a <= b implies a <= b as integers. The order is stored as
/// up-set and down-set bitset rows and join/meet as dense n*n tables. Values
/// are immutable after construction. Labels are carried for display only and
/// do not take part in equality.
class FiniteLattice {
 public:
  /// The one-element lattice.
  FiniteLattice() { init_from_tables(1, {0}, {0}, {}); }

  /// Builds a lattice from an arbitrary order relation given by
  /// `leq(a, b)` over the input numbering 0..n-1. Elements are re-indexed to
  /// a linear extension (smallest input index first among ties); if
  /// `old_to_new` is non-null it receives the re-indexing.
  template <typename Leq>
  static FiniteLattice from_order(std::size_t n, Leq&& leq,
                                  std::vector<std::string> labels = {},
                                  std::vector<Elem>* old_to_new = nullptr) {
    std::vector<detail::Bitset> up(n, detail::Bitset(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b || leq(static_cast<Elem>(a), static_cast<Elem>(b))) {
          up[a].set(b);
        }
      }
    }
    return from_up_sets(std::move(up), std::move(labels), old_to_new);
  }

  /// Reflexive-transitive closure of the cover pairs (a, b), meaning a < b.
  static FiniteLattice from_covers(std::size_t n,
                                   std::vector<std::pair<Elem, Elem>> const& covers,
                                   std::vector<std::string> labels = {},
                                   std::vector<Elem>* old_to_new = nullptr) {
    if (n == 0) fail(ErrorKind::InvalidArgument, "a lattice needs at least one element");
    check_cap(n, "from_covers");
    std::vector<detail::Bitset> up(n, detail::Bitset(n));
    for (auto [a, b] : covers) {
      if (a >= n || b >= n) {
        fail(ErrorKind::InvalidArgument, "cover references an index >= n",
             {a, b});
      }
      if (a == b) fail(ErrorKind::NotAPartialOrder, "self-loop cover", {a, b});
      up[a].set(b);
    }
    for (std::size_t a = 0; a < n; ++a) up[a].set(a);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t a = 0; a < n; ++a) {
        if (up[a].test(k)) up[a] |= up[k];
      }
    }
    return from_up_sets(std::move(up), std::move(labels), old_to_new);
  }

  /// `up[a]` holds every b with a <= b (input numbering).
  static FiniteLattice from_up_sets(std::vector<detail::Bitset> up,
                                    std::vector<std::string> labels = {},
                                    std::vector<Elem>* old_to_new = nullptr) {
    std::size_t const n = up.size();
    if (n == 0) fail(ErrorKind::InvalidArgument, "a lattice needs at least one element");
    check_cap(n, "lattice");
    if (!labels.empty() && labels.size() != n) {
      fail(ErrorKind::InvalidArgument, "label count differs from element count");
    }
    for (std::size_t a = 0; a < n; ++a) up[a].set(a);
    for (std::size_t a = 0; a < n; ++a) {
      for (auto b = up[a].find_first(); b != detail::Bitset::npos;
           b = up[a].find_next(b)) {
        if (b != a && up[b].test(a)) {
          fail(ErrorKind::NotAPartialOrder, "cycle in order relation", {a, b});
        }
        if (!up[b].is_subset_of(up[a])) {
          fail(ErrorKind::NotAPartialOrder, "order relation is not transitive",
               {a, b});
        }
      }
    }
    // Linear extension: Kahn's algorithm, smallest input index first.
    std::vector<std::size_t> indeg(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      for (auto b = up[a].find_first(); b != detail::Bitset::npos;
           b = up[a].find_next(b)) {
        if (b != a) ++indeg[b];
      }
    }
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>>
        ready;
    for (std::size_t a = 0; a < n; ++a) {
      if (indeg[a] == 0) ready.push(a);
    }
    std::vector<Elem> pos(n);
    std::vector<std::size_t> order;
    order.reserve(n);
    while (!ready.empty()) {
      auto a = ready.top();
      ready.pop();
      pos[a] = static_cast<Elem>(order.size());
      order.push_back(a);
      for (auto b = up[a].find_first(); b != detail::Bitset::npos;
           b = up[a].find_next(b)) {
        if (b != a && --indeg[b] == 0) ready.push(b);
      }
    }
    std::vector<detail::Bitset> nup(n, detail::Bitset(n));
    std::vector<detail::Bitset> ndown(n, detail::Bitset(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (auto b = up[a].find_first(); b != detail::Bitset::npos;
           b = up[a].find_next(b)) {
        nup[pos[a]].set(pos[b]);
        ndown[pos[b]].set(pos[a]);
      }
    }
    std::vector<Elem> join(n * n), meet(n * n);
    // Column-major scan over input indices so witnesses are stable.
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t a = 0; a <= b; ++a) {
        auto const x = pos[a], y = pos[b];
        auto ub = nup[x] & nup[y];
        auto j = ub.find_first();
        if (j == detail::Bitset::npos || !ub.is_subset_of(nup[j])) {
          fail(ErrorKind::NotALattice, "pair has no least upper bound", {a, b});
        }
        auto lb = ndown[x] & ndown[y];
        auto m = lb.find_last();
        if (m == detail::Bitset::npos || !lb.is_subset_of(ndown[m])) {
          fail(ErrorKind::NotALattice, "pair has no greatest lower bound",
               {a, b});
        }
        join[x * n + y] = join[y * n + x] = static_cast<Elem>(j);
        meet[x * n + y] = meet[y * n + x] = static_cast<Elem>(m);
      }
    }
    std::vector<std::string> nlabels;
    if (!labels.empty()) {
      nlabels.resize(n);
      for (std::size_t a = 0; a < n; ++a) nlabels[pos[a]] = std::move(labels[a]);
    }
    if (old_to_new != nullptr) *old_to_new = pos;
    FiniteLattice L(Raw{});
    L.n_ = n;
    L.up_ = std::move(nup);
    L.down_ = std::move(ndown);
    L.join_ = std::move(join);
    L.meet_ = std::move(meet);
    L.labels_ = std::move(nlabels);
    L.init_covers();
    return L;
  }

  /// Trusted construction from join and meet tables already indexed by a
  /// linear extension. Throws std::logic_error if the indexing is not one.
  static FiniteLattice from_tables(std::size_t n, std::vector<Elem> join,
                                   std::vector<Elem> meet,
                                   std::vector<std::string> labels = {}) {
    check_cap(n, "lattice");
    FiniteLattice L(Raw{});
    L.init_from_tables(n, std::move(join), std::move(meet), std::move(labels));
    return L;
  }

  std::size_t size() const noexcept { return n_; }
  Elem bottom() const noexcept { return 0; }
  Elem top() const noexcept { return static_cast<Elem>(n_ - 1); }

  bool leq(Elem a, Elem b) const { return up_[a].test(b); }
  bool less(Elem a, Elem b) const { return a != b && leq(a, b); }
  bool comparable(Elem a, Elem b) const { return leq(a, b) || leq(b, a); }
  Elem join(Elem a, Elem b) const { return join_[a * n_ + b]; }
  Elem meet(Elem a, Elem b) const { return meet_[a * n_ + b]; }

  template <typename Range>
  Elem join_all(Range const& xs) const {
    Elem r = bottom();
    for (auto x : xs) r = join(r, static_cast<Elem>(x));
    return r;
  }

  template <typename Range>
  Elem meet_all(Range const& xs) const {
    Elem r = top();
    for (auto x : xs) r = meet(r, static_cast<Elem>(x));
    return r;
  }

  detail::Bitset const& up_set(Elem a) const { return up_[a]; }
  detail::Bitset const& down_set(Elem a) const { return down_[a]; }

  std::vector<Elem> const& lower_covers(Elem a) const { return lower_[a]; }
  std::vector<Elem> const& upper_covers(Elem a) const { return upper_[a]; }

  /// Length of the longest chain from the bottom to `a`.
  std::size_t height(Elem a) const { return height_[a]; }
  std::size_t length() const { return height_[n_ - 1]; }

  std::vector<std::pair<Elem, Elem>> covers() const {
    std::vector<std::pair<Elem, Elem>> out;
    for (Elem a = 0; a < n_; ++a) {
      for (auto b : upper_[a]) out.emplace_back(a, b);
    }
    return out;
  }

  std::vector<std::string> const& labels() const noexcept { return labels_; }
  bool has_labels() const noexcept { return !labels_.empty(); }
  std::string label(Elem a) const {
    return labels_.empty() ? std::to_string(a) : labels_[a];
  }

  /// Same lattice with new display labels.
  FiniteLattice with_labels(std::vector<std::string> labels) const {
    if (!labels.empty() && labels.size() != n_) {
      fail(ErrorKind::InvalidArgument, "label count differs from element count");
    }
    FiniteLattice copy = *this;
    copy.labels_ = std::move(labels);
    return copy;
  }

  FinitePoset as_poset() const {
    return FinitePoset::from_up_sets(up_, labels_);
  }

  std::vector<Elem> const& join_table() const noexcept { return join_; }
  std::vector<Elem> const& meet_table() const noexcept { return meet_; }

  /// Structural equality (same indices, same tables); labels ignored.
  friend bool operator==(FiniteLattice const& a, FiniteLattice const& b) {
    return a.n_ == b.n_ && a.join_ == b.join_ && a.meet_ == b.meet_;
  }

 private:
  struct Raw {};
  explicit FiniteLattice(Raw) {}

  void init_from_tables(std::size_t n, std::vector<Elem> join,
                        std::vector<Elem> meet, std::vector<std::string> labels) {
    if (n == 0 || join.size() != n * n || meet.size() != n * n) {
      throw std::logic_error("from_tables: malformed tables");
    }
    if (!labels.empty() && labels.size() != n) {
      throw std::logic_error("from_tables: label count mismatch");
    }
    n_ = n;
    join_ = std::move(join);
    meet_ = std::move(meet);
    labels_ = std::move(labels);
    up_.assign(n, detail::Bitset(n));
    down_.assign(n, detail::Bitset(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (meet_[a * n + b] == a) {
          if (b < a) throw std::logic_error("from_tables: not a linear extension");
          up_[a].set(b);
          down_[b].set(a);
        }
      }
    }
    init_covers();
  }

  void init_covers() {
    lower_.assign(n_, {});
    upper_.assign(n_, {});
    height_.assign(n_, 0);
    for (std::size_t b = 0; b < n_; ++b) {
      // Scan strictly-below elements by decreasing index: a is a lower cover
      // iff it is not below a lower cover already found.
      detail::Bitset covered(n_);
      for (auto a = down_[b].find_last(); a != detail::Bitset::npos;) {
        if (a != b && !covered.test(a)) {
          lower_[b].push_back(static_cast<Elem>(a));
          covered |= down_[a];
        }
        if (a == 0) break;
        // step to the previous set bit
        std::size_t prev = detail::Bitset::npos;
        for (std::size_t c = a; c-- > 0;) {
          if (down_[b].test(c)) {
            prev = c;
            break;
          }
        }
        a = prev;
      }
      std::sort(lower_[b].begin(), lower_[b].end());
      for (auto a : lower_[b]) {
        upper_[a].push_back(static_cast<Elem>(b));
        height_[b] = std::max(height_[b], height_[a] + 1);
      }
    }
  }

  std::size_t n_ = 0;
  std::vector<detail::Bitset> up_;
  std::vector<detail::Bitset> down_;
  std::vector<Elem> join_;
  std::vector<Elem> meet_;
  std::vector<std::vector<Elem>> lower_;
  std::vector<std::vector<Elem>> upper_;
  std::vector<std::size_t> height_;
  std::vector<std::string> labels_;
};

inline LatticePtr make_lattice(FiniteLattice L) {
  return std::make_shared<FiniteLattice const>(std::move(L));
}

inline bool same_lattice(LatticePtr const& a, LatticePtr const& b) {
  return a == b || (a && b && *a == *b);
}

/// A map between finite lattices that preserves join and meet. Construction
/// verifies both on every pair.
class LatticeMap {
 public:
  LatticeMap(LatticePtr domain, LatticePtr codomain, std::vector<Elem> image)
      : domain_(std::move(domain)),
        codomain_(std::move(codomain)),
        image_(std::move(image)) {
    auto const& A = *domain_;
    auto const& B = *codomain_;
    if (image_.size() != A.size()) {
      fail(ErrorKind::InvalidArgument, "image length differs from domain size");
    }
    for (auto y : image_) {
      if (y >= B.size()) fail(ErrorKind::InvalidArgument, "image index out of range", {y});
    }
    for (Elem a = 0; a < A.size(); ++a) {
      for (Elem b = a + 1; b < A.size(); ++b) {
        if (image_[A.join(a, b)] != B.join(image_[a], image_[b])) {
          fail(ErrorKind::NotAHomomorphism, "map does not preserve join", {a, b});
        }
        if (image_[A.meet(a, b)] != B.meet(image_[a], image_[b])) {
          fail(ErrorKind::NotAHomomorphism, "map does not preserve meet", {a, b});
        }
      }
    }
  }

  /// As above, and additionally requires image(0) = 0.
  static LatticeMap zero_preserving(LatticePtr domain, LatticePtr codomain,
                                    std::vector<Elem> image) {
    LatticeMap f(std::move(domain), std::move(codomain), std::move(image));
    if (!f.preserves_zero()) {
      fail(ErrorKind::NotAHomomorphism, "map does not preserve zero", {0});
    }
    return f;
  }

  static LatticeMap identity(LatticePtr L) {
    std::vector<Elem> img(L->size());
    for (Elem a = 0; a < img.size(); ++a) img[a] = a;
    return LatticeMap(L, L, std::move(img));
  }

  static LatticeMap constant(LatticePtr domain, LatticePtr codomain, Elem value) {
    std::vector<Elem> img(domain->size(), value);
    return LatticeMap(std::move(domain), std::move(codomain), std::move(img));
  }

  Elem operator()(Elem a) const { return image_[a]; }
  LatticePtr const& domain() const noexcept { return domain_; }
  LatticePtr const& codomain() const noexcept { return codomain_; }
  std::vector<Elem> const& image() const noexcept { return image_; }

  bool preserves_zero() const { return image_[0] == 0; }

  bool is_injective() const {
    std::vector<bool> seen(codomain_->size(), false);
    for (auto y : image_) {
      if (seen[y]) return false;
      seen[y] = true;
    }
    return true;
  }

  /// For lattice homomorphisms injectivity already implies order reflection.
  bool is_embedding() const { return is_injective(); }

  bool is_surjective() const {
    std::vector<bool> seen(codomain_->size(), false);
    std::size_t hit = 0;
    for (auto y : image_) {
      if (!seen[y]) {
        seen[y] = true;
        ++hit;
      }
    }
    return hit == codomain_->size();
  }

  bool is_isomorphism() const {
    return domain_->size() == codomain_->size() && is_injective();
  }

  LatticeMap inverse() const {
    if (!is_isomorphism()) fail(ErrorKind::NotAnIsomorphism, "map is not invertible");
    std::vector<Elem> inv(image_.size());
    for (Elem a = 0; a < image_.size(); ++a) inv[image_[a]] = a;
    return LatticeMap(codomain_, domain_, std::move(inv));
  }

  friend bool operator==(LatticeMap const& f, LatticeMap const& g) {
    return f.image_ == g.image_ && same_lattice(f.domain_, g.domain_) &&
           same_lattice(f.codomain_, g.codomain_);
  }

 private:
  LatticePtr domain_;
  LatticePtr codomain_;
  std::vector<Elem> image_;
};

/// g after f.
inline LatticeMap compose(LatticeMap const& g, LatticeMap const& f) {
  if (!same_lattice(f.codomain(), g.domain())) {
    fail(ErrorKind::InvalidArgument, "compose: codomain of f is not domain of g");
  }
  std::vector<Elem> img(f.image().size());
  for (Elem a = 0; a < img.size(); ++a) img[a] = g(f(a));
  return LatticeMap(f.domain(), g.codomain(), std::move(img));
}

/// A finite direct product with its coordinate maps. Elements are encoded in
/// mixed radix with the first factor most significant, which keeps the index
/// order a linear extension.
struct ProductLattice {
  LatticePtr lattice;
  std::vector<LatticePtr> factors;
  std::vector<LatticeMap> projections;

  Elem encode(std::span<Elem const> coords) const {
    Elem x = 0;
    for (std::size_t k = 0; k < factors.size(); ++k) {
      x = static_cast<Elem>(x * factors[k]->size() + coords[k]);
    }
    return x;
  }

  std::vector<Elem> decode(Elem x) const {
    std::vector<Elem> c(factors.size());
    for (std::size_t k = factors.size(); k-- > 0;) {
      auto const s = static_cast<Elem>(factors[k]->size());
      c[k] = x % s;
      x /= s;
    }
    return c;
  }
};

inline ProductLattice product(std::vector<LatticePtr> const& factors) {
  std::size_t n = 1;
  for (auto const& f : factors) {
    n *= f->size();
    check_cap(n, "product");
  }
  ProductLattice P;
  P.factors = factors;
  std::vector<std::vector<Elem>> coords(n);
  for (Elem x = 0; x < n; ++x) {
    // decode without the lattice pointer
    Elem r = x;
    std::vector<Elem> c(factors.size());
    for (std::size_t k = factors.size(); k-- > 0;) {
      auto const s = static_cast<Elem>(factors[k]->size());
      c[k] = r % s;
      r /= s;
    }
    coords[x] = std::move(c);
  }
  std::vector<Elem> join(n * n), meet(n * n);
  std::vector<Elem> tj(factors.size()), tm(factors.size());
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = x; y < n; ++y) {
      Elem jx = 0, mx = 0;
      for (std::size_t k = 0; k < factors.size(); ++k) {
        auto const& F = *factors[k];
        jx = static_cast<Elem>(jx * F.size() + F.join(coords[x][k], coords[y][k]));
        mx = static_cast<Elem>(mx * F.size() + F.meet(coords[x][k], coords[y][k]));
      }
      join[x * n + y] = join[y * n + x] = jx;
      meet[x * n + y] = meet[y * n + x] = mx;
    }
  }
  std::vector<std::string> labels;
  bool const labelled =
      !factors.empty() &&
      std::all_of(factors.begin(), factors.end(),
                  [](auto const& f) { return f->has_labels(); });
  if (labelled) {
    labels.resize(n);
    for (Elem x = 0; x < n; ++x) {
      std::string s = "(";
      for (std::size_t k = 0; k < factors.size(); ++k) {
        if (k) s += ",";
        s += factors[k]->label(coords[x][k]);
      }
      labels[x] = s + ")";
    }
  }
  P.lattice = make_lattice(
      FiniteLattice::from_tables(n, std::move(join), std::move(meet), std::move(labels)));
  for (std::size_t k = 0; k < factors.size(); ++k) {
    std::vector<Elem> img(n);
    for (Elem x = 0; x < n; ++x) img[x] = coords[x][k];
    P.projections.emplace_back(P.lattice, factors[k], std::move(img));
  }
  return P;
}

inline ProductLattice product(LatticePtr const& a, LatticePtr const& b) {
  return product(std::vector<LatticePtr>{a, b});
}

/// The map x -> (f_k(x))_k into a product; every f_k must share the domain.
inline LatticeMap tuple_map(ProductLattice const& P, LatticePtr const& domain,
                            std::vector<LatticeMap> const& components) {
  if (components.size() != P.factors.size()) {
    fail(ErrorKind::InvalidArgument, "tuple_map: wrong number of components");
  }
  std::vector<Elem> img(domain->size());
  std::vector<Elem> c(components.size());
  for (Elem x = 0; x < domain->size(); ++x) {
    for (std::size_t k = 0; k < components.size(); ++k) c[k] = components[k](x);
    img[x] = P.encode(c);
  }
  return LatticeMap(domain, P.lattice, std::move(img));
}

}  // namespace conlat

#endif  // CONLAT_LATTICE_HPP_
