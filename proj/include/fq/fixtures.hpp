#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fq/extensions.hpp"
#include "fq/modules.hpp"

// JSON fixtures for modules, 2-cocycles and constant cocycles.
//
//   {"base": "<canonical text>", "coeff": [m_1, ..],
//    "eta": "scalar:<c>" | [[k*k entries] per base tuple],
//    "taus": [<same form> per j]   (arity 3 also accepts "tau" and "mu"),
//    "g": "scalar:<c>" | [k*k entries],
//    "kappa": [[k entries] per base tuple] | "zero"}
//
//   {"base": "<canonical text>", "lambda": [[images] per base tuple]}
//
// Base tuples are in flat-index order. The base is certified at the highest
// level that holds.

namespace fq {

TwoCocycle parse_cocycle_fixture(std::string_view json);
std::string to_fixture_json(const TwoCocycle& c);

struct ConstantCocycleFixture {
  FStructure base;
  std::vector<Permutation> lambda;
};
ConstantCocycleFixture parse_constant_fixture(std::string_view json);
std::string to_fixture_json(const ConstantCocycleFixture& c);

/// Dispatches on the presence of "lambda".
std::variant<TwoCocycle, ConstantCocycleFixture> parse_any_fixture(std::string_view json);

}  // namespace fq
