#include <algorithm>
#include <fstream>
#include <iterator>
#include <string>

#include "doctest.h"
#include "optlev/config.hpp"

using namespace optlev;

namespace {

SystemConfig reference() { return parse_config(bundled_table1()); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(static_cast<bool>(in));
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("bundled config parses to the reference design") {
  SystemConfig cfg = reference();

  CHECK(cfg.mirror.radius == doctest::Approx(0.35e-3).epsilon(1e-15));
  CHECK(cfg.mirror.aspect_ratio == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(cfg.mirror.roc == doctest::Approx(30e-3).epsilon(1e-15));
  CHECK(cfg.mirror.hr_side == HrSide::lower);
  CHECK(cfg.mirror.absorption == doctest::Approx(0.34e-6).epsilon(1e-15));
  CHECK(cfg.mirror.internal_mode_freq == doctest::Approx(3.1e6).epsilon(1e-15));

  CHECK(cfg.laser.wavelength == doctest::Approx(1.064e-6).epsilon(1e-15));
  CHECK(!cfg.laser.rin_asd.has_value());

  CHECK(cfg.lower.length == doctest::Approx(95e-3).epsilon(1e-15));
  CHECK(cfg.lower.fixed_mirror_roc == doctest::Approx(120e-3).epsilon(1e-15));
  CHECK(cfg.lower.coc_distance == doctest::Approx(5e-3).epsilon(1e-15));
  CHECK(cfg.lower.finesse == doctest::Approx(100.0).epsilon(1e-15));
  CHECK(cfg.lower.input_power == doctest::Approx(13.0).epsilon(1e-15));
  CHECK(cfg.lower.detuning_norm == doctest::Approx(-0.005).epsilon(1e-15));
  REQUIRE(cfg.lower.spot_radius.has_value());
  CHECK(*cfg.lower.spot_radius == doctest::Approx(0.14e-3).epsilon(1e-15));

  CHECK(cfg.upper.length == doctest::Approx(50e-3).epsilon(1e-15));
  CHECK(cfg.upper.fixed_mirror_roc == doctest::Approx(30e-3).epsilon(1e-15));
  CHECK(cfg.upper.coc_distance == doctest::Approx(1.3e-3).epsilon(1e-15));
  CHECK(cfg.upper.input_power == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(cfg.upper.detuning_norm == doctest::Approx(0.018).epsilon(1e-15));
  REQUIRE(cfg.upper.spot_radius.has_value());
  CHECK(*cfg.upper.spot_radius == doctest::Approx(0.19e-3).epsilon(1e-15));

  CHECK(cfg.environment.temperature == doctest::Approx(300.0).epsilon(1e-15));
  CHECK(cfg.environment.pressure == doctest::Approx(1e-5).epsilon(1e-15));
  CHECK(cfg.environment.gas_molecule_mass ==
        doctest::Approx(4.81e-26).epsilon(1e-15));

  // 13-layer stack alternating high / low, starting and ending high.
  REQUIRE(cfg.mirror.coating.layers.size() == 13);
  for (size_t i = 0; i < 13; ++i) {
    const CoatingLayer& layer = cfg.mirror.coating.layers[i];
    if (i % 2 == 0) {
      CHECK(layer.material.refractive_index == doctest::Approx(2.07));
      CHECK(layer.thickness == doctest::Approx(91e-9));
      CHECK(layer.material.young_modulus == doctest::Approx(140e9));
      CHECK(layer.material.poisson_ratio == doctest::Approx(0.28));
      CHECK(layer.material.loss_angle == doctest::Approx(2e-4));
    } else {
      CHECK(layer.material.refractive_index == doctest::Approx(1.45));
      CHECK(layer.thickness == doctest::Approx(237e-9));
      CHECK(layer.material.young_modulus == doctest::Approx(73e9));
      CHECK(layer.material.poisson_ratio == doctest::Approx(0.17));
      CHECK(layer.material.loss_angle == doctest::Approx(5e-5));
    }
  }
  CHECK(cfg.mirror.coating.substrate.young_modulus == doctest::Approx(73e9));
  CHECK(cfg.mirror.coating.substrate.loss_angle == doctest::Approx(1e-6));
  CHECK(cfg.mirror.coating.substrate.refractive_index == doctest::Approx(1.45));
  CHECK(cfg.mirror.coating.substrate.density == doctest::Approx(2200.0));
}

TEST_CASE("mirror mass from cylinder geometry") {
  SystemConfig cfg = reference();
  CHECK(mirror_mass(cfg.mirror) ==
        doctest::Approx(1.9755381803323815e-07).epsilon(1e-12));
}

TEST_CASE("shipped reference file matches the bundled text byte for byte") {
  CHECK(slurp(std::string(OPTLEV_DATA_DIR) + "/table1.cfg") == bundled_table1());
}

TEST_CASE("serialize / parse round-trips the full config") {
  SystemConfig cfg = reference();
  std::string text = serialize_config(cfg);
  SystemConfig again = parse_config(text);
  CHECK(again == cfg);
  // serialization is a fixed point
  CHECK(serialize_config(again) == text);

  // also with the optional laser RIN present
  cfg.laser.rin_asd = 3.25e-9;
  again = parse_config(serialize_config(cfg));
  CHECK(again == cfg);
}

TEST_CASE("parse errors carry position and cause") {
  auto expect_error = [](const std::string& text, const char* needle,
                         int line) {
    try {
      parse_config(text);
      FAIL_CHECK("expected ParseError for: " << needle);
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
      if (line > 0) CHECK(e.line() == line);
    }
  };

  expect_error("[mirror]\nbogus_key = 1\n", "unknown key", 2);
  expect_error("[nope]\n", "unknown section", 1);
  expect_error("[mirror]\nradius = 1\nradius = 2\n", "duplicate", 3);
  expect_error("radius = 1\n", "section", 1);
  expect_error("", "missing", 0);

  // trailing unit suffix on an otherwise complete config
  std::string with_unit = bundled_table1();
  size_t wl = with_unit.find("wavelength = ");
  REQUIRE(wl != std::string::npos);
  with_unit.insert(with_unit.find('\n', wl), " nm");
  int unit_line =
      1 + static_cast<int>(std::count(with_unit.begin(),
                                      with_unit.begin() + static_cast<long>(wl),
                                      '\n'));
  expect_error(with_unit, "number", unit_line);

  std::string no_finesse = bundled_table1();
  size_t pos = no_finesse.find("finesse = 100");
  REQUIRE(pos != std::string::npos);
  no_finesse.replace(pos, 13, "# finesse gone");
  expect_error(no_finesse, "finesse", 0);
}

TEST_CASE("validate accepts the reference design and flags broken fields") {
  CHECK(validate(reference()).empty());

  auto has_code = [](const SystemConfig& cfg, const std::string& code) {
    for (const Violation& v : validate(cfg)) {
      if (v.code == code) return true;
    }
    return false;
  };

  SystemConfig cfg = reference();
  cfg.mirror.radius = -1.0;
  CHECK(has_code(cfg, "mirror.radius.positive"));

  cfg = reference();
  cfg.mirror.roc = -30e-3;
  CHECK(has_code(cfg, "mirror.roc.convex"));

  cfg = reference();
  cfg.mirror.hr_side = HrSide::upper;
  CHECK(has_code(cfg, "mirror.hr_side.supported"));

  cfg = reference();
  cfg.lower.detuning_norm = -1.5;
  CHECK(has_code(cfg, "cavity.lower.detuning_norm.range"));

  cfg = reference();
  cfg.upper.detuning_norm = -0.018;  // same sign as lower
  CHECK(has_code(cfg, "system.detunings.opposite"));

  cfg = reference();
  cfg.laser.wavelength = 0.0;
  CHECK(has_code(cfg, "laser.wavelength.positive"));

  cfg = reference();
  cfg.upper.finesse = 0.0;
  CHECK(has_code(cfg, "cavity.upper.finesse.positive"));

  cfg = reference();
  cfg.environment.pressure = -1e-5;
  CHECK(has_code(cfg, "environment.pressure.nonnegative"));

  cfg = reference();
  cfg.mirror.coating.substrate.poisson_ratio = 0.6;
  CHECK(has_code(cfg, "mirror.substrate.poisson_ratio.range"));

  cfg = reference();
  cfg.mirror.coating.layers.clear();
  CHECK(has_code(cfg, "mirror.coating.nonempty"));

  cfg = reference();
  cfg.lower.spot_radius = -0.1e-3;
  CHECK(has_code(cfg, "cavity.lower.spot_radius.positive"));
}

TEST_CASE("alternating stack construction") {
  MaterialProps high;
  high.refractive_index = 2.0;
  high.young_modulus = 1e9;
  high.density = 1000;
  MaterialProps low = high;
  low.refractive_index = 1.5;

  CoatingStack stack = make_alternating_stack(high, 1e-7, 4, low, 2e-7, 3, low);
  REQUIRE(stack.layers.size() == 7);
  for (size_t i = 0; i < stack.layers.size(); ++i) {
    double expected = (i % 2 == 0) ? 2.0 : 1.5;
    CHECK(stack.layers[i].material.refractive_index == doctest::Approx(expected));
  }

  CHECK_THROWS_AS(make_alternating_stack(high, 1e-7, 0, low, 2e-7, 0, low),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_alternating_stack(high, 1e-7, 5, low, 2e-7, 2, low),
                  std::invalid_argument);
}
