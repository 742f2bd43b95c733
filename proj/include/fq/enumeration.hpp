#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fq/structure.hpp"

namespace fq {

enum class TwistPolicy { All, Identity, Bijective };
enum class MorphismPolicy { Require, None };

std::string_view to_string(TwistPolicy p);
std::string_view to_string(MorphismPolicy p);
std::optional<TwistPolicy> parse_twist_policy(std::string_view text);
std::optional<MorphismPolicy> parse_morphism_policy(std::string_view text);

struct SearchConfig {
  int order = 2;
  int arity = 3;
  TwistPolicy twists = TwistPolicy::All;
  /// Require keeps only structures whose twist is an endomorphism of (Q, T).
  MorphismPolicy morphism = MorphismPolicy::Require;
  Level level = Level::Quandle;
  /// Lifts the arity-3 order guardrail.
  bool force = false;
  int workers = 1;
};

/// Largest arity-3 order enumerated without `force`.
inline constexpr int kTernaryOrderGuardrail = 4;

/// All labeled structures matching `cfg`, lexicographic in (twist table,
/// op table). Output is independent of the worker count.
std::vector<FStructure> enumerate(const SearchConfig& cfg);

/// Naive filter over every table and twist; only sensible for tiny orders.
/// Used as an independent cross-check of the pruned search.
std::vector<FStructure> enumerate_brute_force(const SearchConfig& cfg);

/// Applies σ: T' = σ∘T∘(σ^{-1})^{×n}, f' = σ∘f∘σ^{-1}.
RawStructure relabel(const RawStructure& s, const Permutation& sigma);
FStructure relabel(const FStructure& s, const Permutation& sigma);

/// Minimum over all relabelings of (twist table, op table), lexicographic.
FStructure canonical_form(const FStructure& s);
RawStructure canonical_form(const RawStructure& s);

/// A bijection φ with φ∘T1 = T2∘φ^{×n} and φ∘f1 = f2∘φ, if one exists.
std::optional<Permutation> are_isomorphic(const RawStructure& s1, const RawStructure& s2);
inline std::optional<Permutation> are_isomorphic(const FStructure& s1, const FStructure& s2) {
  return are_isomorphic(s1.raw(), s2.raw());
}

struct IsoClassReport {
  FStructure representative;
  std::size_t class_size = 0;
  /// Permutation-column text; empty unless arity 3 and all columns bijective.
  std::string rendering;
  bool twist_is_identity = false;
};

/// Partitions by canonical form; reports sorted by representative.
std::vector<IsoClassReport> classify(const std::vector<FStructure>& structures);

/// Rough count of search nodes, reported by guardrail refusals.
double estimate_search_cost(const SearchConfig& cfg);
/// log10 of estimate_search_cost, finite where the count overflows.
double estimate_search_log10(const SearchConfig& cfg);

}  // namespace fq
