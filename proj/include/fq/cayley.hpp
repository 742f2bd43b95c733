#pragma once

#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "fq/types.hpp"

namespace fq {

/// Flat Cayley table of an n-ary operation on {0..order-1}.
///
/// The entry for (x1,...,xn) lives at x1 + q*x2 + ... + q^(n-1)*xn, so a
/// right translation x -> T(x, a1, ..., a_{n-1}) is a contiguous run of q
/// entries starting at q * flat_index(tail).
class CayleyOp {
 public:
  CayleyOp(int arity, int order, std::vector<Element> table);

  static CayleyOp from_function(int arity, int order,
                                const std::function<Element(std::span<const Element>)>& fn);

  [[nodiscard]] int arity() const { return arity_; }
  [[nodiscard]] int order() const { return order_; }
  [[nodiscard]] const std::vector<Element>& table() const { return table_; }
  [[nodiscard]] std::size_t size() const { return table_.size(); }

  [[nodiscard]] std::size_t index(std::span<const Element> args) const;
  [[nodiscard]] Element at(std::size_t flat) const { return table_[flat]; }
  Element operator()(std::span<const Element> args) const { return table_[index(args)]; }
  Element operator()(std::initializer_list<Element> args) const {
    return (*this)(std::span<const Element>(args.begin(), args.size()));
  }

  /// Start of the column holding x -> T(x, tail).
  [[nodiscard]] std::size_t column_offset(std::span<const Element> tail) const {
    return static_cast<std::size_t>(order_) * flat_index(order_, tail);
  }

  bool operator==(const CayleyOp&) const = default;

 private:
  int arity_;
  int order_;
  std::vector<Element> table_;
};

/// Self-map of {0..order-1}; image of x stored at index x.
class Endomap {
 public:
  Endomap(int order, std::vector<Element> table);

  static Endomap identity(int order);
  static Endomap constant(int order, Element value);

  [[nodiscard]] int order() const { return static_cast<int>(table_.size()); }
  [[nodiscard]] const std::vector<Element>& table() const { return table_; }
  Element operator()(Element x) const { return table_[static_cast<std::size_t>(x)]; }

  [[nodiscard]] bool is_bijective() const;
  [[nodiscard]] bool is_identity() const;

  /// (this ∘ inner)(x) = this(inner(x)).
  [[nodiscard]] Endomap after(const Endomap& inner) const;
  [[nodiscard]] Endomap power(int k) const;

  bool operator==(const Endomap&) const = default;
  auto operator<=>(const Endomap&) const = default;

 private:
  std::vector<Element> table_;
};

/// Bijection of {0..order-1}.
class Permutation {
 public:
  explicit Permutation(std::vector<Element> image);
  explicit Permutation(const Endomap& map);

  static Permutation identity(int order);

  [[nodiscard]] int order() const { return static_cast<int>(image_.size()); }
  [[nodiscard]] const std::vector<Element>& image() const { return image_; }
  Element operator()(Element x) const { return image_[static_cast<std::size_t>(x)]; }

  [[nodiscard]] Permutation inverse() const;
  /// (this ∘ inner)(x) = this(inner(x)).
  [[nodiscard]] Permutation after(const Permutation& inner) const;
  [[nodiscard]] bool is_identity() const;
  [[nodiscard]] Endomap as_endomap() const { return Endomap(order(), image_); }

  /// Disjoint cycles of length >= 2, each starting at its least element,
  /// ordered by that element.
  [[nodiscard]] std::vector<std::vector<Element>> cycles() const;

  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<Element> image_;
};

/// Map between two (possibly different) carriers; used for morphisms.
class CarrierMap {
 public:
  CarrierMap(int domain, int codomain, std::vector<Element> images);
  CarrierMap(const Endomap& map)  // NOLINT(google-explicit-constructor)
      : CarrierMap(map.order(), map.order(), map.table()) {}
  CarrierMap(const Permutation& perm)  // NOLINT(google-explicit-constructor)
      : CarrierMap(perm.order(), perm.order(), perm.image()) {}

  [[nodiscard]] int domain() const { return domain_; }
  [[nodiscard]] int codomain() const { return codomain_; }
  [[nodiscard]] const std::vector<Element>& images() const { return images_; }
  Element operator()(Element x) const { return images_[static_cast<std::size_t>(x)]; }
  [[nodiscard]] bool is_bijective() const;

 private:
  int domain_;
  int codomain_;
  std::vector<Element> images_;
};

/// All permutations of {0..order-1} in lexicographic order.
std::vector<Permutation> all_permutations(int order);

/// All self-maps of {0..order-1} in lexicographic order of their tables.
std::vector<Endomap> all_endomaps(int order);

}  // namespace fq
