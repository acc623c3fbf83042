#ifndef CONLAT_JOINMAP_HPP_
#define CONLAT_JOINMAP_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "conlat/errors.hpp"
#include "conlat/lattice.hpp"

namespace conlat {

/// A map between finite lattices that preserves binary joins and the bottom
/// (for finite lattices, equivalently all joins). Checked on construction.
class JoinMap {
 public:
  JoinMap(LatticePtr domain, LatticePtr codomain, std::vector<Elem> image)
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
    if (image_[A.bottom()] != B.bottom()) {
      fail(ErrorKind::NotAHomomorphism, "map does not preserve zero", {0});
    }
    for (Elem a = 0; a < A.size(); ++a) {
      for (Elem b = a + 1; b < A.size(); ++b) {
        if (image_[A.join(a, b)] != B.join(image_[a], image_[b])) {
          fail(ErrorKind::NotAHomomorphism, "map does not preserve join", {a, b});
        }
      }
    }
  }

  static JoinMap identity(LatticePtr L) {
    std::vector<Elem> img(L->size());
    for (Elem a = 0; a < img.size(); ++a) img[a] = a;
    return JoinMap(L, L, std::move(img));
  }

  /// The underlying map of a lattice homomorphism that preserves zero.
  static JoinMap from(LatticeMap const& f) {
    return JoinMap(f.domain(), f.codomain(), f.image());
  }

  Elem operator()(Elem a) const { return image_[a]; }
  LatticePtr const& domain() const noexcept { return domain_; }
  LatticePtr const& codomain() const noexcept { return codomain_; }
  std::vector<Elem> const& image() const noexcept { return image_; }

  /// Only the bottom maps to the bottom.
  bool separates_zero() const {
    for (Elem a = 1; a < image_.size(); ++a) {
      if (image_[a] == codomain_->bottom()) return false;
    }
    return true;
  }

  bool is_injective() const {
    std::vector<bool> seen(codomain_->size(), false);
    for (auto y : image_) {
      if (seen[y]) return false;
      seen[y] = true;
    }
    return true;
  }

  /// Bijective and order-reflecting.
  bool is_isomorphism() const {
    if (domain_->size() != codomain_->size() || !is_injective()) return false;
    auto const& A = *domain_;
    auto const& B = *codomain_;
    for (Elem a = 0; a < A.size(); ++a) {
      for (Elem b = 0; b < A.size(); ++b) {
        if (A.leq(a, b) != B.leq(image_[a], image_[b])) return false;
      }
    }
    return true;
  }

  JoinMap inverse() const {
    if (!is_isomorphism()) fail(ErrorKind::NotAnIsomorphism, "join map is not invertible");
    std::vector<Elem> inv(image_.size());
    for (Elem a = 0; a < image_.size(); ++a) inv[image_[a]] = a;
    return JoinMap(codomain_, domain_, std::move(inv));
  }

  friend bool operator==(JoinMap const& f, JoinMap const& g) {
    return f.image_ == g.image_ && same_lattice(f.domain_, g.domain_) &&
           same_lattice(f.codomain_, g.codomain_);
  }

 private:
  LatticePtr domain_;
  LatticePtr codomain_;
  std::vector<Elem> image_;
};

/// g after f.
inline JoinMap compose(JoinMap const& g, JoinMap const& f) {
  if (!same_lattice(f.codomain(), g.domain())) {
    fail(ErrorKind::InvalidArgument, "compose: codomain of f is not domain of g");
  }
  std::vector<Elem> img(f.image().size());
  for (Elem a = 0; a < img.size(); ++a) img[a] = g(f(a));
  return JoinMap(f.domain(), g.codomain(), std::move(img));
}

/// g after f, where g is a lattice homomorphism that preserves zero.
inline JoinMap compose(LatticeMap const& g, JoinMap const& f) {
  return compose(JoinMap::from(g), f);
}

}  // namespace conlat

#endif  // CONLAT_JOINMAP_HPP_
