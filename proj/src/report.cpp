#include "optlev/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include "json.hpp"

namespace optlev {

namespace {

void append_formatted(std::string& out, double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.8e", value);
  out += buf;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    hash ^= static_cast<std::uint64_t>(c);
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::string hex_digest(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(value));
  return std::string(buf);
}

std::string spectra_csv(const BudgetResult& budget) {
  std::string out = "frequency_hz";
  for (int i = 0; i < kNoiseSourceCount; ++i) {
    out += ',';
    out += noise_source_name(static_cast<NoiseSource>(i));
  }
  out += '\n';
  const std::size_t n = budget.grid.points.size();
  for (std::size_t row = 0; row < n; ++row) {
    append_formatted(out, budget.grid.points[row]);
    for (int i = 0; i < kNoiseSourceCount; ++i) {
      const NoiseSpectrum& spectrum = budget.of(static_cast<NoiseSource>(i));
      out += ',';
      append_formatted(out, std::sqrt(spectrum.psd[row]));
    }
    out += '\n';
  }
  return out;
}

void write_spectra_csv(const std::string& path, const BudgetResult& budget) {
  write_text_file(path, spectra_csv(budget));
}

std::string trace_csv(const OptimizeResult& result) {
  std::string out = "index";
  for (const std::string& name : result.param_names) {
    out += ',';
    out += name;
  }
  for (const std::string& id : margin_ids()) {
    out += ',';
    out += id;
  }
  out += ",objective,feasible\n";
  for (const TraceRow& row : result.trace) {
    out += std::to_string(row.index);
    for (double v : row.params) {
      out += ',';
      append_formatted(out, v);
    }
    for (double v : row.margins) {
      out += ',';
      append_formatted(out, v);
    }
    out += ',';
    append_formatted(out, row.objective);
    out += row.feasible ? ",1\n" : ",0\n";
  }
  return out;
}

void write_trace_csv(const std::string& path, const OptimizeResult& result) {
  write_text_file(path, trace_csv(result));
}

std::string manifest_json(const RunManifest& manifest) {
  nlohmann::json j;
  j["command"] = manifest.command;
  j["config_digest"] = manifest.config_digest;
  j["tool_version"] = manifest.tool_version;
  j["timestamp_utc"] = manifest.timestamp_utc;
  j["outputs"] = manifest.outputs;
  return j.dump(2) + "\n";
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  write_text_file(path, manifest_json(manifest));
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return std::string(buf);
}

std::string sci(double value, const char* unit, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*e", digits, value);
  std::string out = buf;
  if (unit != nullptr && unit[0] != '\0') {
    out += ' ';
    out += unit;
  }
  return out;
}

std::string eng(double value, const char* unit, int digits) {
  if (!std::isfinite(value) || value == 0.0) {
    return sci(value, unit, digits > 0 ? digits - 1 : 0);
  }
  static const char* kPrefix[] = {"f", "p", "n", "u", "m",
                                  "",  "k", "M", "G", "T"};
  int exp3 =
      static_cast<int>(std::floor(std::log10(std::fabs(value)) / 3.0)) * 3;
  for (int attempt = 0; attempt < 2; ++attempt) {
    if (exp3 < -15 || exp3 > 12) {
      return sci(value, unit, digits > 0 ? digits - 1 : 0);
    }
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits,
                  value * std::pow(10.0, -exp3));
    // rounding can carry the mantissa past 1000; bump the prefix and retry
    if (std::fabs(std::strtod(buf, nullptr)) >= 1000.0) {
      exp3 += 3;
      continue;
    }
    std::string out = buf;
    if ((unit != nullptr && unit[0] != '\0') || exp3 != 0) {
      out += ' ';
      out += kPrefix[(exp3 + 15) / 3];
      if (unit != nullptr) out += unit;
    }
    return out;
  }
  return sci(value, unit, digits > 0 ? digits - 1 : 0);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  out << content;
  out.flush();
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open for reading: " + path);
  }
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw std::runtime_error("read failed: " + path);
  }
  return content;
}

}  // namespace optlev
