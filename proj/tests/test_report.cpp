#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "optlev/config.hpp"
#include "optlev/noise.hpp"
#include "optlev/report.hpp"
#include "optlev/search.hpp"

using namespace optlev;

namespace {

SystemConfig reference() { return parse_config(bundled_table1()); }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream in(line);
  std::string field;
  while (std::getline(in, field, sep)) out.push_back(field);
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("fnv1a64 matches the published test vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
  CHECK(hex_digest(0x1ull) == "0000000000000001");
  CHECK(hex_digest(0xcbf29ce484222325ull) == "cbf29ce484222325");
}

TEST_CASE("engineering and scientific formatting") {
  CHECK(eng(413.79250722624727, "W") == "413.8 W");
  CHECK(eng(5.32e-11, "m") == "53.2 pm");
  CHECK(eng(23073.831583705698, "Hz") == "23.07 kHz");
  CHECK(eng(-2.5e-3, "N") == "-2.5 mN");
  CHECK(eng(1.9373411496156546e-06, "N") == "1.937 uN");
  CHECK(eng(999.96, "W") == "1 kW");  // rounding carries into the next prefix
  CHECK(eng(0.0, "m") == "0.000e+00 m");
  CHECK(eng(1e30, "x") == "1.000e+30 x");  // beyond tera: falls back

  CHECK(sci(2.2537761446533981e-19, "m/rtHz") == "2.254e-19 m/rtHz");
  CHECK(sci(-1.0, "", 2) == "-1.00e+00");
}

TEST_CASE("spectra csv layout") {
  FrequencyGrid grid = log_grid(10.0, 1000.0, 5);
  BudgetResult budget = total_budget(reference(), grid);
  std::string csv = spectra_csv(budget);
  std::vector<std::string> rows = lines_of(csv);

  REQUIRE(rows.size() == 6);  // header + 5 grid points
  CHECK(rows[0] ==
        "frequency_hz,sql,shot,radiation_pressure,quantum_total,"
        "brownian_substrate,brownian_coating,brownian_total,gas_thermal,"
        "laser_frequency,laser_intensity,seismic,classical_total,grand_total");

  std::vector<std::string> first = split(rows[1], ',');
  REQUIRE(first.size() == 14);
  CHECK(first[0] == "1.00000000e+01");
  // column 1 is the SQL amplitude at 10 Hz
  double expected = std::sqrt(budget.of(NoiseSource::sql).psd[0]);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", expected);
  CHECK(first[1] == buf);
  CHECK(first.back() != "");

  CHECK(split(rows[5], ',')[0] == "1.00000000e+03");
}

TEST_CASE("trace csv layout") {
  SearchSpace space;
  space.params.push_back({"cavity.lower.input_power", 12.0, 14.0});
  OptimizeOptions options;
  options.lhs_samples = 3;
  options.max_evaluations = 8;
  OptimizeResult result = optimize(reference(), space, options);

  std::string csv = trace_csv(result);
  std::vector<std::string> rows = lines_of(csv);
  REQUIRE(rows.size() == result.trace.size() + 1);

  std::vector<std::string> header = split(rows[0], ',');
  REQUIRE(header.size() == 1 + 1 + margin_ids().size() + 2);
  CHECK(header[0] == "index");
  CHECK(header[1] == "cavity.lower.input_power");
  CHECK(header[2] == "vertical_spring");
  CHECK(header[header.size() - 2] == "objective");
  CHECK(header.back() == "feasible");

  for (size_t i = 1; i < rows.size(); ++i) {
    std::vector<std::string> fields = split(rows[i], ',');
    REQUIRE(fields.size() == header.size());
    CHECK(fields[0] == std::to_string(i - 1));
    CHECK((fields.back() == "0" || fields.back() == "1"));
  }
}

TEST_CASE("run manifest serializes to stable json") {
  RunManifest manifest;
  manifest.command = "budget";
  manifest.config_digest = "729419f0ae1066bd";
  manifest.timestamp_utc = "2000-01-01T00:00:00Z";
  manifest.outputs = {"spectra.csv", "budget.txt"};

  std::string text = manifest_json(manifest);
  nlohmann::json parsed = nlohmann::json::parse(text);
  CHECK(parsed["command"] == "budget");
  CHECK(parsed["config_digest"] == "729419f0ae1066bd");
  CHECK(parsed["tool_version"] == kToolVersion);
  CHECK(parsed["timestamp_utc"] == "2000-01-01T00:00:00Z");
  REQUIRE(parsed["outputs"].size() == 2);
  CHECK(parsed["outputs"][0] == "spectra.csv");
  CHECK(text.back() == '\n');

  // a timestamp from the clock parses as ISO-8601 UTC
  std::string now = utc_timestamp();
  REQUIRE(now.size() == 20);
  CHECK(now[4] == '-');
  CHECK(now[10] == 'T');
  CHECK(now.back() == 'Z');
}

TEST_CASE("text file round trip and error reporting") {
  std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "optlev_report_test";
  std::filesystem::create_directories(dir);
  std::string path = (dir / "roundtrip.txt").string();

  std::string payload = "line one\nline two\n";
  write_text_file(path, payload);
  CHECK(read_text_file(path) == payload);

  CHECK_THROWS_AS(read_text_file((dir / "missing.txt").string()),
                  std::runtime_error);
  CHECK_THROWS_AS(write_text_file((dir / "no" / "such" / "dir.txt").string(),
                                  "x"),
                  std::runtime_error);
  std::filesystem::remove_all(dir);
}
