#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "fenc/array.hpp"
#include "fenc/bits.hpp"
#include "fenc/cipher.hpp"
#include "fenc/perfmodel.hpp"
#include "fenc/threat.hpp"
#include "fenc/variability.hpp"
#include "fenc/workloads.hpp"

namespace fenc {

inline constexpr int kSchemaVersion = 1;

// Array state: {"schema_version", "config", "cells": [[{"top": {"state", "vth"}, "bottom": {...}}]]}.
// Doubles are written in shortest round-trip form, so dump -> load is exact.
nlohmann::json dump_array(const MemoryArray& array);
MemoryArray load_array(const nlohmann::json& doc);

/// V_TH of every FeFET as a (2 * rows) x cols grid: top row, then bottom row, per cell row.
nlohmann::json vth_map(const MemoryArray& array);

// Key files are line oriented:
//
//   # comment
//   granularity: per-bit
//   <one line per row (per-bit, per-row) or per block (per-block)>
//
// A per-bit line holds ceil(cols / 4) hex digits; column 0 is the most
// significant bit of the first digit and trailing pad bits must be zero.
// Per-row and per-block lines hold a single hex digit, 0 or 1.
KeyStore parse_key_file(const std::string& text, const KeyShape& shape);
KeyStore load_key_file(const std::filesystem::path& path, const KeyShape& shape);
std::string format_key_file(const KeyStore& keys);

/// Plaintext files: one row per line of '0'/'1' characters; spaces, commas and
/// '#' comments are ignored. Rows must have equal length.
BitMatrix parse_bit_matrix(const std::string& text);
BitMatrix load_bit_matrix(const std::filesystem::path& path);

nlohmann::json bits_to_json(const BitMatrix& m);

nlohmann::json to_json(const AttackReport& r);
std::string to_csv(const AttackReport& r);

nlohmann::json to_json(const ComparisonReport& r);
std::string to_csv(const ComparisonReport& r);

nlohmann::json to_json(const ReductionReport& r, TrafficMode mode);
std::string to_csv(const ReductionReport& r);

nlohmann::json to_json(const std::vector<BerPoint>& sweep);

/// Writes through a temporary file in the same directory, then renames.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace fenc
