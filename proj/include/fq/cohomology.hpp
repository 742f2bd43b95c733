#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fq/modular.hpp"
#include "fq/structure.hpp"

namespace fq {

/// Scalar coefficients on A = Z_m: η = eta·, τ^j = taus[j-1]· and the
/// coefficient-side twist g. Ternary (P, Q, R) means eta = P, taus = {Q, R};
/// binary (T, S) means eta = T, taus = {S}.
struct ScalarModuleParams {
  std::int64_t modulus = 2;
  std::int64_t eta = 1;
  std::vector<std::int64_t> taus;
  /// Defaults to eta + Σ taus, the twist of the matching affine structure.
  std::optional<std::int64_t> g;

  static ScalarModuleParams ternary(std::int64_t m, std::int64_t p, std::int64_t q, std::int64_t r);
  static ScalarModuleParams binary(std::int64_t m, std::int64_t t, std::int64_t s);

  [[nodiscard]] int arity() const { return static_cast<int>(taus.size()) + 1; }
  [[nodiscard]] std::int64_t g_value() const;
  /// Throws PreconditionError unless modulus >= 2 and eta is a unit.
  void validate() const;
};

/// Number of arguments of a degree-p cochain: (n-1)(p-1)+1.
int cochain_arguments(int arity, int degree);

/// Dense A-valued function on X^k, k = cochain_arguments(arity, degree),
/// flat-indexed like Cayley tables (first argument fastest).
struct Cochain {
  int degree = 1;
  int arity = 3;
  int order = 1;
  std::int64_t modulus = 2;
  std::vector<std::int64_t> values;

  static Cochain zero(int degree, int arity, int order, std::int64_t modulus);
  /// χ_x: 1 at tuple x, 0 elsewhere.
  static Cochain indicator(int degree, int arity, int order, std::int64_t modulus, std::span<const Element> tuple);

  [[nodiscard]] int arguments() const { return cochain_arguments(arity, degree); }
  std::int64_t operator()(std::span<const Element> tuple) const { return values[flat_index(order, tuple)]; }
  bool operator==(const Cochain&) const = default;
};

/// [x_1, ..., x_{(n-1)p+1}]: T applied to x_1..x_n, then repeatedly to the
/// running value and the next n-1 arguments twisted by f^{j-1} for block j.
Element bracket_eval(const RawStructure& s, std::span<const Element> args);
inline Element bracket_eval(const FStructure& s, std::span<const Element> args) { return bracket_eval(s.raw(), args); }

/// δ^p φ for arity 2 or 3 with scalar coefficients. Degrees 1 and 2 give
///   ternary: δ¹φ = Pφ(x)+Qφ(y)+Rφ(z)−φ(T(x,y,z))
///            δ²ψ = Pψ(x1,x2,x3)+ψ(T(x1,x2,x3),f x4,f x5) − Pψ(x1,x4,x5)
///                  − Qψ(x2,x4,x5) − Rψ(x3,x4,x5) − ψ(T(x1,x4,x5),T(x2,x4,x5),T(x3,x4,x5))
///   binary:  δ¹φ = Tφ(x)+Sφ(y)−φ(x*y)
///            δ²ψ = Tψ(x1,x2)+ψ(x1*x2,f x3) − Tψ(x1,x3) − Sψ(x2,x3) − ψ(x1*x3,x2*x3)
/// and every degree follows the same pattern.
Cochain coboundary_apply(const FStructure& s, const ScalarModuleParams& params, const Cochain& phi);

/// Matrix of δ^p: column j is δ^p of the j-th indicator cochain.
struct CochainMatrix {
  int source_degree = 1;
  IntMatrix matrix;
  [[nodiscard]] int target_degree() const { return source_degree + 1; }
};

/// Largest rows*cols accepted by coboundary_matrix.
inline constexpr std::size_t kMaxMatrixEntries = std::size_t{1} << 26;

CochainMatrix coboundary_matrix(const FStructure& s, const ScalarModuleParams& params, int degree);

/// Rows express φ(f x_1, ..., f x_k) − g·φ(x_1, ..., x_k) = 0; the kernel is
/// the twist-compatible subspace C^p_g.
IntMatrix twist_constraint_matrix(const FStructure& s, const ScalarModuleParams& params, int degree);

struct CohomologyOptions {
  /// Work in the twist-compatible subcomplex C^*_g (on which δδ = 0);
  /// false uses every cochain.
  bool twist_compatible = true;
};

struct CohomologyResult {
  int degree = 1;
  std::int64_t modulus = 2;
  bool prime_modulus = true;
  /// Prime modulus: dim ker δ^p, dim of the image of δ^{p-1} inside it, and
  /// their difference.
  std::size_t dim_ker = 0;
  std::size_t dim_im_prev = 0;
  std::optional<std::size_t> h_dim;
  /// H^p ≅ ⊕ Z_{d_i}; for a prime modulus this is h_dim copies of p.
  std::vector<std::int64_t> invariant_factors;
  /// Orders of the kernel generators (composite modulus).
  std::vector<std::int64_t> kernel_orders;
  std::vector<std::vector<std::int64_t>> kernel_basis;
  std::vector<std::vector<std::int64_t>> image_basis;
  /// image_basis[i] = δ^{p-1}(image_preimages[i]).
  std::vector<std::vector<std::int64_t>> image_preimages;
  /// Kernel vectors completing image_basis to a kernel basis (prime modulus).
  std::vector<std::vector<std::int64_t>> quotient_representatives;
  /// dim ker δ^p − rank δ^{p-1} over all cochains, without intersecting
  /// the image with the kernel (prime modulus only).
  std::optional<std::int64_t> unrestricted_difference;
  double runtime_ms = 0;
};

/// H^p = ker δ^p / (im δ^{p-1} ∩ ker δ^p) with δ^0 = 0.
CohomologyResult cohomology_group(const FStructure& s, const ScalarModuleParams& params, int degree,
                                  const CohomologyOptions& options = {});

struct ComplexReport {
  bool passed = true;
  /// Degree p where δ^{p+1}δ^p ≠ 0.
  int degree = 0;
  std::vector<std::int64_t> witness_cochain;
  std::vector<Element> witness_tuple;
  std::int64_t witness_value = 0;
  explicit operator bool() const { return passed; }
};

/// Checks δ^{p+1}δ^p = 0 for 1 <= p < p_max on a spanning set of C^p.
ComplexReport verify_complex(const FStructure& s, const ScalarModuleParams& params, int p_max,
                             const CohomologyOptions& options = {});

/// Spanning set of the cochain space of the given degree: a basis (prime
/// modulus) or generators (composite) of C^p_g, or all indicators.
std::vector<std::vector<std::int64_t>> cochain_space_generators(const FStructure& s, const ScalarModuleParams& params,
                                                                 int degree, const CohomologyOptions& options = {});

/// "2χ_0+χ_1", "χ_(1,2)+2χ_(2,1)"; terms in lexicographic tuple order.
std::string format_chi(const std::vector<std::int64_t>& values, int order, int arguments);

}  // namespace fq
