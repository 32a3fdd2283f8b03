#pragma once

#include "nonrecip/params.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace nonrecip {

/// Parses a JSON configuration document into a flat key/value map.
/// Top-level numbers and strings are kept as-is; one level of nested objects
/// is flattened with a dot ("sweep": {"points": 11} -> "sweep.points").
/// Throws ConfigError on malformed input.
[[nodiscard]] RawConfig parse_config(std::string_view json_text);

[[nodiscard]] RawConfig load_config_file(const std::filesystem::path& path);

/// Inverse of parse_config: dotted keys become one level of nesting.
/// Numbers are written in shortest round-trip form.
[[nodiscard]] std::string dump_config(const RawConfig& raw);

}  // namespace nonrecip
