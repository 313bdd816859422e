#ifndef OPTLEV_REPORT_HPP
#define OPTLEV_REPORT_HPP

// Output plumbing: CSV export of spectra and optimizer traces, run
// manifests, content digests, and number formatting for printed summaries.

#include <cstdint>
#include <string>
#include <vector>

#include "optlev/noise.hpp"
#include "optlev/search.hpp"

namespace optlev {

inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a over the raw bytes; digest rendered as 16 lowercase hex digits.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hex_digest(std::uint64_t value);

// First column frequency_hz, one ASD column (m/sqrt(Hz)) per noise source
// in declaration order; scientific notation, 9 significant digits.
std::string spectra_csv(const BudgetResult& budget);
void write_spectra_csv(const std::string& path, const BudgetResult& budget);

// One row per evaluation: index, parameters, margins, objective, feasible.
std::string trace_csv(const OptimizeResult& result);
void write_trace_csv(const std::string& path, const OptimizeResult& result);

struct RunManifest {
  std::string command;
  std::string config_digest;
  std::string tool_version = kToolVersion;
  std::string timestamp_utc;
  std::vector<std::string> outputs;
};

std::string manifest_json(const RunManifest& manifest);
void write_manifest(const std::string& path, const RunManifest& manifest);
std::string utc_timestamp();

// SI engineering notation: eng(4.1379e2, "W") -> "413.8 W",
// eng(5.32e-11, "m") -> "53.20 pm". Falls back to plain scientific
// notation outside the femto..tera prefix range.
std::string eng(double value, const char* unit, int digits = 4);
// Plain scientific notation with a unit: sci(2.25e-19, "m/rtHz").
std::string sci(double value, const char* unit, int digits = 3);

// Throws std::runtime_error when the file cannot be written.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace optlev

#endif  // OPTLEV_REPORT_HPP
