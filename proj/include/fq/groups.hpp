#pragma once

#include <vector>

#include "fq/cayley.hpp"

namespace fq {

/// Finite group given by an explicit multiplication table; the product x*y
/// is stored at x + order*y. Group axioms are validated on construction.
class FiniteGroupTable {
 public:
  FiniteGroupTable(int order, std::vector<Element> table);

  /// Z_n under addition.
  static FiniteGroupTable cyclic(int n);
  /// S_n (n <= 5) on lexicographically ordered permutations, with
  /// (σ·τ)(i) = σ(τ(i)). Element 0 is the identity.
  static FiniteGroupTable symmetric(int n);

  [[nodiscard]] int order() const { return order_; }
  [[nodiscard]] Element identity() const { return identity_; }
  [[nodiscard]] Element mul(Element x, Element y) const {
    return table_[static_cast<std::size_t>(x + order_ * y)];
  }
  [[nodiscard]] Element inverse(Element x) const { return inverse_[static_cast<std::size_t>(x)]; }
  [[nodiscard]] const std::vector<Element>& table() const { return table_; }

  [[nodiscard]] bool is_endomorphism(const Endomap& f) const;
  /// h -> g h g^{-1}.
  [[nodiscard]] Endomap conjugation_by(Element g) const;
  [[nodiscard]] bool is_abelian() const;

 private:
  int order_;
  std::vector<Element> table_;
  Element identity_ = 0;
  std::vector<Element> inverse_;
};

}  // namespace fq
