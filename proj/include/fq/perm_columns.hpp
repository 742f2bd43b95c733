#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "fq/structure.hpp"

namespace fq {

/// Compact writes "(12)", Spaced writes "(1 2)". Orders above 9 always use
/// Spaced since single digits no longer suffice.
enum class CycleStyle { Compact, Spaced };

/// 1-based disjoint cycles with fixed points elided; identity is "(1)".
std::string render_cycles(const Permutation& p, CycleStyle style = CycleStyle::Compact);

/// Inverse of render_cycles; accepts both styles.
Permutation parse_cycles(std::string_view text, int order);

/// Columns x -> T(x, y, z) of a ternary table: for each z in ascending
/// order, the q columns y = 1..q joined by ",", z-groups joined by "; ".
/// Throws PreconditionError if the arity is not 3 or a column is not a
/// permutation.
std::string to_permutation_columns(const RawStructure& s, CycleStyle style = CycleStyle::Compact);
inline std::string to_permutation_columns(const FStructure& s, CycleStyle style = CycleStyle::Compact) {
  return to_permutation_columns(s.raw(), style);
}

/// Parses permutation-column text. The order is inferred from the number of
/// z-groups. Without an explicit twist, it is read off the diagonal,
/// f(x) = T(x, x, x).
RawStructure parse_permutation_columns(std::string_view text, const std::optional<Endomap>& twist = std::nullopt);

/// Collapses whitespace runs to a single space and trims the ends.
std::string normalize_whitespace(std::string_view text);

}  // namespace fq
