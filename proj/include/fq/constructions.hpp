#pragma once

#include <optional>
#include <vector>

#include "fq/groups.hpp"
#include "fq/structure.hpp"

namespace fq {

/// Coefficients (S_1, ..., S_n) of T(x_1..x_n) = S_1 x_1 + ... + S_n x_n over Z_m.
struct AffineParams {
  int modulus = 0;
  std::vector<int> coeffs;

  AffineParams(int m, std::vector<int> c);
  [[nodiscard]] int arity() const { return static_cast<int>(coeffs.size()); }
  [[nodiscard]] int coefficient_sum() const;
};

int mod_reduce(long long value, int modulus);
int gcd_int(int a, int b);

/// T(x, ...) = f(x). Validated at `level`.
FStructure trivial_f_quandle(int order, const Endomap& f, int arity = 2, Level level = Level::Quandle);

/// x * y = y^{-1} x f(y) on a group; f must be a group endomorphism.
FStructure conjugation_f_quandle(const FiniteGroupTable& g, const Endomap& f);

/// x * y = 2ay - ax + b (mod m) with twist f(x) = ax + b; a must be a unit.
FStructure dihedral_f_quandle(int modulus, int a, int b);

/// Affine structure with twist (S_1 + ... + S_n) x unless overridden.
/// Certified at the highest level that holds; throws ValidationError only if
/// the result is not even a shelf (possible with an override).
FStructure affine_structure(const AffineParams& params, const std::optional<Endomap>& twist_override = std::nullopt);

/// T(x, y, z) = f(x y^{-1} z) with twist f.
FStructure heap_f_quandle(const FiniteGroupTable& g, const Endomap& f);

/// T(x_1..x_n) = ((x_1 * x_2) * f(x_3)) * ... * f^{n-2}(x_n) with α = f^{n-1}.
FStructure induced_from_binary(const FStructure& binary, int target_arity);

struct YauTwistResult {
  FStructure structure;
  /// Set when the input was a rack or quandle but β is not bijective, so
  /// the translations β∘R cannot be invertible.
  bool downgraded = false;
};

/// (Q, β∘T, β∘α). β must be a morphism of s (operation and twist).
YauTwistResult yau_twist(const FStructure& s, const Endomap& beta);

}  // namespace fq
