#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fq/modules.hpp"
#include "fq/structure.hpp"

namespace fq {

/// α_x : A^n -> A for every base n-tuple x (flat-indexed), on the fiber
/// A = {0..fiber_order-1}, with fiber twist g.
struct DynamicalCocycle {
  FStructure base;
  int fiber_order = 1;
  std::vector<CayleyOp> alpha;
  Endomap g;

  /// Throws DimensionError on mismatched sizes.
  void validate_shape() const;
};

struct CocycleReport {
  bool passed = true;
  /// 1: α_{x..x}(a..a) = g(a); 2: α_x(-, b..) bijective; 3: compatibility.
  int condition = 0;
  std::vector<Element> base_witness;
  std::vector<Element> fiber_witness;
  std::string detail;
  explicit operator bool() const { return passed; }
};
std::string describe(const CocycleReport& report);

/// Checks the three dynamical cocycle conditions exhaustively.
CocycleReport check_dynamical_cocycle(const DynamicalCocycle& d);

/// Element (x, a) of X × A is encoded as x + q·a.
inline Element encode_pair(int base_order, Element x, Element a) { return x + base_order * a; }

struct ExtensionResult {
  RawStructure raw;
  /// Highest level reached, if any.
  std::optional<Level> level;
};

/// T((x,a),..) = (T(x..), α_x(a..)) with twist (x,a) ↦ (f x, g a).
ExtensionResult build_extension(const DynamicalCocycle& d);

/// λ_{T(x),f(u)..} λ_x = λ_{T(x_1,u),..,T(x_n,u)} λ_{x_1,u} for all tuples;
/// quandle_variant adds λ_{x..x} = id. Reports condition 3 or 1 on failure.
CocycleReport check_constant_cocycle(const FStructure& base, const std::vector<Permutation>& lambda, bool quandle_variant);

/// The dynamical cocycle of a constant cocycle: α_x(a, ..) = λ_x(a), g = id.
DynamicalCocycle constant_to_dynamical(const FStructure& base, const std::vector<Permutation>& lambda);

/// α_x(a_1..a_n) = η_x a_1 + Σ τ^j_x a_{j+1} + κ_x with fiber twist g, with
/// no validity check on κ. A is enumerated by CoeffGroup::element.
DynamicalCocycle affine_dynamical_cocycle(const TwoCocycle& c);

/// As affine_dynamical_cocycle, after requiring that the module equations
/// and the 2-cocycle condition hold (with κ_{x..x} = 0 over quandle bases).
/// Throws PreconditionError otherwise.
DynamicalCocycle extension_from_2cocycle(const TwoCocycle& c);

}  // namespace fq
