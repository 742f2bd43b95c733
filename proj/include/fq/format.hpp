#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fq/structure.hpp"

// Canonical serialization of structures.
//
//   fq v1
//   arity <n>
//   order <q>
//   twist <q images, 0-based>
//   op <q^n values in flat-index order>
//
// The JSON mirror is {"version": "fq v1", "arity", "order", "twist", "op"}.

namespace fq {

std::string to_text(const RawStructure& s);
inline std::string to_text(const FStructure& s) { return to_text(s.raw()); }
RawStructure parse_text(std::string_view text);

std::string to_json(const RawStructure& s);
inline std::string to_json(const FStructure& s) { return to_json(s.raw()); }
RawStructure parse_json(std::string_view text);

/// Splits a stream of canonical-text records separated by "---" lines.
std::vector<RawStructure> parse_text_stream(std::string_view text);

/// Dispatches on content: JSON if it starts with '{', canonical text if it
/// starts with "fq ".
RawStructure parse_any(std::string_view text);

}  // namespace fq
