#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace euler2c {

std::string library_version();

std::uint64_t fnv1a64(std::string_view s);

/// Hex FNV-1a hash of the canonical (key-sorted, compact) JSON dump of `config`.
std::string config_hash(const nlohmann::json& config);

/// Copy of `config` with "version" and "config_hash" entries added.
nlohmann::json stamped_config(const nlohmann::json& config);

/// Shortest text that round-trips, never fewer than 17 significant digits for non-integers.
std::string format_double(double x);

using Cell = std::variant<double, long long, std::string>;
using Row = std::vector<Cell>;

/// '#'-prefixed metadata lines (version, hash, config, extra notes), a header row, then data.
void write_csv(std::ostream& os, const nlohmann::json& config, const std::vector<std::string>& columns,
               const std::vector<Row>& rows, const std::vector<std::string>& notes = {});

/// {"config": ..., "results": ..., "diagnostics": ...}
void write_json(std::ostream& os, const nlohmann::json& config, const nlohmann::json& results,
                const nlohmann::json& diagnostics);

}  // namespace euler2c
