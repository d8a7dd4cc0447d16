#pragma once

// JSON configuration documents.
//
//   {
//     "parameter_mode": "effective" | "physical",
//     "topology": "n_type" | "network4" | "chain" | "generic",   (optional)
//     "cavities":    [{"id", "detuning", "decay", "drive"?}],
//     "mechanicals": [{"id", "frequency", "damping", "thermal_occupation"}],
//     "edges":       [{"kind", "from", "to", "strength"}]          (optional)
//   }
//
// Complex values (drive, strength) are a number or a [re, im] pair.
// Unknown keys anywhere are rejected.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "omcool/model.hpp"

namespace omcool {

/// Parse a document into a configuration without checking model invariants.
/// Throws ParseError with line and key context.
SystemConfig parse_config_document(std::string_view text);

/// Parse and validate. Throws ParseError or ConfigError.
ValidatedConfig parse_config_string(std::string_view text);

/// Read, parse, and validate a file. Throws IoError, ParseError, ConfigError.
ValidatedConfig parse_config(const std::filesystem::path& path);

/// Canonical document: fixed key order, two-space indent, shortest
/// round-trip numbers, trailing newline. parse(dump(c)) == c.
std::string dump_config(const SystemConfig& config);

/// FNV-1a 64 of dump_config.
std::uint64_t config_hash(const SystemConfig& config);
std::string config_hash_hex(const SystemConfig& config);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace omcool
