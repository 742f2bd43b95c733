#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fq/structure.hpp"

namespace fq {

/// Coefficient vector in A = Z_{m_1} + ... + Z_{m_k}.
using CoeffElement = std::vector<std::int64_t>;

/// A = Z_{m_1} + ... + Z_{m_k}; elements are residue vectors.
class CoeffGroup {
 public:
  explicit CoeffGroup(std::vector<std::int64_t> moduli);
  static CoeffGroup cyclic(std::int64_t m) { return CoeffGroup({m}); }

  [[nodiscard]] int rank() const { return static_cast<int>(moduli_.size()); }
  [[nodiscard]] const std::vector<std::int64_t>& moduli() const { return moduli_; }
  /// |A|; throws SizeLimitError beyond 2^24.
  [[nodiscard]] int order() const;

  [[nodiscard]] CoeffElement zero() const { return CoeffElement(moduli_.size(), 0); }
  [[nodiscard]] CoeffElement reduce(CoeffElement v) const;
  [[nodiscard]] CoeffElement add(const CoeffElement& a, const CoeffElement& b) const;
  /// Elements are numbered with the first coordinate fastest.
  [[nodiscard]] CoeffElement element(int index) const;
  [[nodiscard]] int index(const CoeffElement& v) const;

  bool operator==(const CoeffGroup&) const = default;

 private:
  std::vector<std::int64_t> moduli_;
};

/// Endomorphism of A as a k x k integer matrix acting on column vectors.
/// Entry (i, j) must send Z_{m_j} into Z_{m_i}, i.e. m_i | a_ij m_j.
class CoeffMap {
 public:
  CoeffMap(const CoeffGroup& group, std::vector<std::int64_t> entries);
  static CoeffMap scalar(const CoeffGroup& group, std::int64_t c);
  static CoeffMap identity(const CoeffGroup& group) { return scalar(group, 1); }
  static CoeffMap zero(const CoeffGroup& group) { return scalar(group, 0); }

  [[nodiscard]] int rank() const { return rank_; }
  [[nodiscard]] const std::vector<std::int64_t>& entries() const { return entries_; }
  [[nodiscard]] std::int64_t operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * rank_ + j)]; }

  [[nodiscard]] CoeffElement apply(const CoeffGroup& group, const CoeffElement& v) const;
  /// (this ∘ inner).
  [[nodiscard]] CoeffMap after(const CoeffGroup& group, const CoeffMap& inner) const;
  [[nodiscard]] CoeffMap plus(const CoeffGroup& group, const CoeffMap& other) const;
  /// Equal as maps on A (entries compared mod m_i).
  [[nodiscard]] bool same_map(const CoeffGroup& group, const CoeffMap& other) const;
  [[nodiscard]] bool is_bijective(const CoeffGroup& group) const;

 private:
  int rank_ = 1;
  std::vector<std::int64_t> entries_;
};

/// X-module structure on A: automorphisms η_x, endomorphisms τ^1_x..τ^{n-1}_x
/// for every n-tuple x (flat-indexed like Cayley tables), and the
/// coefficient-side map g. For arity 3, τ = τ^1 and μ = τ^2.
struct ModuleStructure {
  FStructure base;
  CoeffGroup coeff;
  std::vector<CoeffMap> eta;
  std::vector<std::vector<CoeffMap>> taus;
  CoeffMap g;

  /// Tuple-independent scalars: η = eta, τ^j = taus[j-1], g.
  static ModuleStructure scalar(const FStructure& base, std::int64_t modulus, std::int64_t eta,
                                const std::vector<std::int64_t>& taus, std::int64_t g);
  /// The Alexander module of an affine base: η = S_1, τ^j = S_{j+1}, g = ΣS.
  static ModuleStructure alexander(const FStructure& base, std::int64_t modulus, const std::vector<std::int64_t>& coeffs);

  [[nodiscard]] int arity() const { return base.arity(); }
  /// Throws DimensionError when the families do not cover every tuple.
  void validate_shape() const;
};

/// Checks the module equations over all tuples. Tags: "automorphism" (η_x not
/// invertible); arity 3 uses E1..E5; other arities use E10, E11.i, E12.i.
/// Quandle bases add E14.i (τ^i_{f x, f u..} g = (η+Στ)_{w..w} τ^i_{x,u..}
/// with w = T(x,u..)); "Eid" (η+Στ = id on diagonal tuples) is checked when
/// both twists are the identity.
AxiomReport check_module_structure(const ModuleStructure& m);

/// κ: one coefficient element per base n-tuple.
struct TwoCocycle {
  ModuleStructure module;
  std::vector<CoeffElement> kappa;
};

/// η_{T(x),f(u)..} κ_x + κ_{T(x),f(u)..} = η_{T(x_1,u),..} κ_{x_1,u} + Σ_j τ^j_{..} κ_{x_{j+1},u}
/// + κ_{T(x_1,u),..}; quandle_variant adds κ_{x..x} = 0. Tags "E13", "diagonal".
AxiomReport check_generalized_2cocycle(const TwoCocycle& c, bool quandle_variant);

}  // namespace fq
