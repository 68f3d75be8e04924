#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "zarex/bit_matrix.hpp"
#include "zarex/grid_region.hpp"
#include "zarex/pattern.hpp"
#include "zarex/record.hpp"

// JSON documents. Rationals are canonical strings ("3/2"); matrix and region
// indices are 1-based on disk. Every document carries "schema": "zarex/1";
// readers accept a missing schema field and reject any other value.

namespace zarex {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "zarex/1";
inline constexpr const char* kToolVersion = "0.1.0";

Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);

Json pattern_to_json(const Pattern& p);
Pattern pattern_from_json(const Json& j);

Json matrix_to_json(const BitMatrix& m);
BitMatrix matrix_from_json(const Json& j);

Json region_to_json(const GridRegion& s);
GridRegion region_from_json(const Json& j);

/// elapsed_ms is written only when `timing` is set, so exact records are
/// byte-identical across runs.
Json record_to_json(const ExtremalRecord& rec, bool timing = false);
ExtremalRecord record_from_json(const Json& j);

Json report_to_json(const CheckReport& rep);
CheckReport report_from_json(const Json& j);

/// Sorted keys, no whitespace.
std::string canonical(const Json& j);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

/// FNV-1a-64 of the canonical JSON (without the schema field).
std::string pattern_id(const Pattern& p);
std::string pattern_id(const BitMatrix& m);

/// Fixed-point rendering with `digits` fractional digits, truncated toward zero.
std::string decimal(const Rat& r, int digits = 6);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace zarex
