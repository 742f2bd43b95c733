#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fq/cayley.hpp"

namespace fq {

/// An operation together with its twist, with no axiom guarantees.
struct RawStructure {
  CayleyOp op;
  Endomap twist;

  RawStructure(CayleyOp o, Endomap t);

  [[nodiscard]] int arity() const { return op.arity(); }
  [[nodiscard]] int order() const { return op.order(); }

  bool operator==(const RawStructure&) const = default;
};

/// Outcome of an exhaustive axiom check. On failure `axiom` names the first
/// violated condition and `witness` holds the lexicographically first
/// offending tuple.
struct AxiomReport {
  bool passed = true;
  std::string axiom;
  std::vector<Element> witness;
  std::string detail;

  explicit operator bool() const { return passed; }

  static AxiomReport pass() { return {}; }
  static AxiomReport fail(std::string axiom, std::vector<Element> witness, std::string detail = {});
};

std::string describe(const AxiomReport& report);

class ValidationError : public Error {
 public:
  explicit ValidationError(AxiomReport report);
  [[nodiscard]] const AxiomReport& report() const { return report_; }

 private:
  AxiomReport report_;
};

/// A finite n-ary f-structure (Q, T, α) whose declared level has been
/// certified by an exhaustive check.
class FStructure {
 public:
  /// Validates `level`; throws ValidationError with the failing report.
  static FStructure make(RawStructure raw, Level level);
  static FStructure make(CayleyOp op, Endomap twist, Level level) {
    return make(RawStructure(std::move(op), std::move(twist)), level);
  }
  /// Certifies the highest of shelf < rack < quandle that holds. Throws if
  /// not even the shelf axiom holds.
  static FStructure make_highest(RawStructure raw);
  /// Skips validation; reserved for callers that have already proven the
  /// level (the enumerator's interior).
  static FStructure unchecked(RawStructure raw, Level level);

  [[nodiscard]] const RawStructure& raw() const { return raw_; }
  [[nodiscard]] const CayleyOp& op() const { return raw_.op; }
  [[nodiscard]] const Endomap& twist() const { return raw_.twist; }
  [[nodiscard]] Level level() const { return level_; }
  [[nodiscard]] int arity() const { return raw_.arity(); }
  [[nodiscard]] int order() const { return raw_.order(); }

  Element operator()(std::span<const Element> args) const { return raw_.op(args); }
  Element operator()(std::initializer_list<Element> args) const { return raw_.op(args); }

  bool operator==(const FStructure& other) const { return raw_ == other.raw_; }

 private:
  FStructure(RawStructure raw, Level level) : raw_(std::move(raw)), level_(level) {}

  RawStructure raw_;
  Level level_;
};

AxiomReport check_axioms(const RawStructure& s, Level level);
inline AxiomReport check_axioms(const FStructure& s, Level level) { return check_axioms(s.raw(), level); }

/// Highest of shelf < rack < quandle that holds, or nullopt if none.
std::optional<Level> highest_level(const RawStructure& s);

/// Two preimages with the same image under a right translation.
struct Collision {
  Element first;
  Element second;
  Element image;
};

std::variant<Permutation, Collision> right_translation(const RawStructure& s, std::span<const Element> tail);
inline std::variant<Permutation, Collision> right_translation(const FStructure& s, std::span<const Element> tail) {
  return right_translation(s.raw(), tail);
}

/// T(T(row_1), ..., T(row_n)) == T(T(col_1), ..., T(col_n)) for every n x n
/// argument matrix. Witness lists the matrix row-major.
AxiomReport is_medial(const RawStructure& s);
inline AxiomReport is_medial(const FStructure& s) { return is_medial(s.raw()); }

/// φ ∘ T1 = T2 ∘ φ^{×n} and φ ∘ α1 = α2 ∘ φ.
AxiomReport is_morphism(const CarrierMap& phi, const RawStructure& s1, const RawStructure& s2);
inline AxiomReport is_morphism(const CarrierMap& phi, const FStructure& s1, const FStructure& s2) {
  return is_morphism(phi, s1.raw(), s2.raw());
}
AxiomReport is_isomorphism(const CarrierMap& phi, const RawStructure& s1, const RawStructure& s2);
inline AxiomReport is_isomorphism(const CarrierMap& phi, const FStructure& s1, const FStructure& s2) {
  return is_isomorphism(phi, s1.raw(), s2.raw());
}

/// α ∘ T = T ∘ α^{×n}: the twist is an endomorphism of (Q, T).
AxiomReport twist_is_endomorphism(const RawStructure& s);
inline AxiomReport twist_is_endomorphism(const FStructure& s) { return twist_is_endomorphism(s.raw()); }

}  // namespace fq
