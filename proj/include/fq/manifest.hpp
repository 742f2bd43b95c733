#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fq {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// 64-bit FNV-1a; byte order independent, so digests agree across platforms.
std::uint64_t fnv1a64(std::string_view bytes);
/// 16 lowercase hex digits.
std::string hex_digest(std::string_view bytes);

/// Record of one CLI run.
struct RunManifest {
  std::string command;
  /// Effective options in sorted key order.
  std::vector<std::pair<std::string, std::string>> config;
  /// (path, digest) of each input file.
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::string> outputs;
  double wall_seconds = 0;
  std::string tool_version{kToolVersion};

  [[nodiscard]] std::string to_json() const;
};

}  // namespace fq
