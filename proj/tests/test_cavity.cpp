#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "optlev/cavity.hpp"
#include "optlev/config.hpp"

using namespace optlev;

namespace {

SystemConfig reference() { return parse_config(bundled_table1()); }

// Independent power-reflectivity oracle: recursive Fresnel coefficients
// instead of the characteristic-matrix product used by the library.
double fresnel_reflectivity(const CoatingStack& stack, double wavelength,
                            double ambient_index) {
  std::vector<double> n{ambient_index};
  std::vector<double> d{0.0};
  for (const CoatingLayer& layer : stack.layers) {
    n.push_back(layer.material.refractive_index);
    d.push_back(layer.thickness);
  }
  n.push_back(stack.substrate.refractive_index);

  const int last = static_cast<int>(n.size()) - 1;
  std::complex<double> r = (n[last - 1] - n[last]) / (n[last - 1] + n[last]);
  for (int j = last - 2; j >= 0; --j) {
    double r_step = (n[j] - n[j + 1]) / (n[j] + n[j + 1]);
    double delta = 2.0 * M_PI * n[j + 1] * d[j + 1] / wavelength;
    std::complex<double> phase = std::exp(std::complex<double>(0.0, 2.0 * delta));
    r = (r_step + r * phase) / (1.0 + r_step * r * phase);
  }
  return std::norm(r);
}

}  // namespace

TEST_CASE("effective ROC seen by each cavity") {
  SystemConfig cfg = reference();
  CHECK(effective_roc(cfg.mirror, CavityLabel::lower) ==
        doctest::Approx(-0.030).epsilon(1e-15));
  CHECK(effective_roc(cfg.mirror, CavityLabel::upper) ==
        doctest::Approx(0.020689655172413793).epsilon(1e-15));

  cfg.mirror.hr_side = HrSide::upper;
  CHECK_THROWS_AS(effective_roc(cfg.mirror, CavityLabel::lower),
                  std::invalid_argument);
}

TEST_CASE("resonator g parameters of the reference cavities") {
  SystemConfig cfg = reference();
  DerivedPair derived = derive_pair(cfg);

  CHECK(derived.lower.g_fixed ==
        doctest::Approx(0.20833333333333326).epsilon(1e-12));
  CHECK(derived.lower.g_levitated ==
        doctest::Approx(4.166666666666667).epsilon(1e-12));
  CHECK(derived.lower.g_fixed * derived.lower.g_levitated ==
        doctest::Approx(0.8680555555555554).epsilon(1e-12));

  CHECK(derived.upper.g_fixed ==
        doctest::Approx(-0.6666666666666667).epsilon(1e-12));
  CHECK(derived.upper.g_levitated ==
        doctest::Approx(-1.416666666666667).epsilon(1e-12));
  CHECK(derived.upper.g_fixed * derived.upper.g_levitated ==
        doctest::Approx(0.9444444444444448).epsilon(1e-12));

  CHECK(derived.lower.effective_levitated_roc ==
        doctest::Approx(-0.030).epsilon(1e-15));
  CHECK(derived.upper.effective_levitated_roc ==
        doctest::Approx(0.020689655172413793).epsilon(1e-15));
}

TEST_CASE("Gaussian eigenmode of both resonators") {
  SystemConfig cfg = reference();
  double wavelength = cfg.laser.wavelength;

  GPair g_lower = resonator_g(cfg.lower.length, cfg.lower.fixed_mirror_roc,
                              effective_roc(cfg.mirror, CavityLabel::lower));
  ModeGeometry lower = mode_geometry(cfg.lower.length, g_lower, wavelength);
  CHECK(lower.waist_radius ==
        doctest::Approx(6.423648751352641e-05).epsilon(1e-12));
  CHECK(lower.spot_radius_levitated ==
        doctest::Approx(1.407350929042293e-04).epsilon(1e-12));
  CHECK(lower.spot_radius_fixed ==
        doctest::Approx(6.293864691072102e-04).epsilon(1e-12));
  CHECK(lower.waist_position ==
        doctest::Approx(-0.02374999999999999).epsilon(1e-12));

  GPair g_upper = resonator_g(cfg.upper.length, cfg.upper.fixed_mirror_roc,
                              effective_roc(cfg.mirror, CavityLabel::upper));
  ModeGeometry upper = mode_geometry(cfg.upper.length, g_upper, wavelength);
  CHECK(upper.waist_radius ==
        doctest::Approx(3.124928531197974e-05).epsilon(1e-12));
  CHECK(upper.spot_radius_levitated ==
        doctest::Approx(2.2200321941136307e-04).epsilon(1e-12));
  CHECK(upper.spot_radius_fixed ==
        doctest::Approx(3.236225232221111e-04).epsilon(1e-12));
  CHECK(upper.waist_position ==
        doctest::Approx(0.02027972027972028).epsilon(1e-12));
}

TEST_CASE("mode self-consistency under Gaussian propagation") {
  SystemConfig cfg = reference();
  double wavelength = cfg.laser.wavelength;
  for (CavityLabel label : {CavityLabel::lower, CavityLabel::upper}) {
    const CavitySpec& spec =
        label == CavityLabel::lower ? cfg.lower : cfg.upper;
    GPair g = resonator_g(spec.length, spec.fixed_mirror_roc,
                          effective_roc(cfg.mirror, label));
    ModeGeometry mode = mode_geometry(spec.length, g, wavelength);
    double z_r = M_PI * mode.waist_radius * mode.waist_radius / wavelength;
    double at_levitated =
        mode.waist_radius *
        std::sqrt(1.0 + std::pow(mode.waist_position / z_r, 2));
    double at_fixed =
        mode.waist_radius *
        std::sqrt(1.0 + std::pow((spec.length - mode.waist_position) / z_r, 2));
    CHECK(at_levitated ==
          doctest::Approx(mode.spot_radius_levitated).epsilon(1e-12));
    CHECK(at_fixed == doctest::Approx(mode.spot_radius_fixed).epsilon(1e-12));
  }
}

TEST_CASE("unstable resonators are rejected with the offending product") {
  SystemConfig cfg = reference();
  double wavelength = cfg.laser.wavelength;

  // negative product
  GPair bad{-1.375, 4.1666666666666667};
  try {
    mode_geometry(0.095, bad, wavelength);
    FAIL_CHECK("expected UnstableResonator");
  } catch (const UnstableResonator& e) {
    CHECK(e.g_product() == doctest::Approx(bad.product()).epsilon(1e-12));
  }

  // boundary product == 1 (planar) is rejected too
  CHECK_THROWS_AS(mode_geometry(0.095, GPair{1.0, 1.0}, wavelength),
                  UnstableResonator);
  // boundary product == 0 (confocal-like) is rejected
  CHECK_THROWS_AS(mode_geometry(0.095, GPair{0.0, 0.5}, wavelength),
                  UnstableResonator);
}

TEST_CASE("spot radius override is used where provided") {
  SystemConfig cfg = reference();
  DerivedPair derived = derive_pair(cfg);
  CHECK(derived.lower.spot_radius_used == doctest::Approx(0.14e-3).epsilon(1e-15));
  CHECK(derived.upper.spot_radius_used == doctest::Approx(0.19e-3).epsilon(1e-15));

  cfg.lower.spot_radius.reset();
  CavityDerived no_override = derive_cavity(cfg, CavityLabel::lower);
  CHECK(no_override.spot_radius_used ==
        doctest::Approx(no_override.spot_radius_levitated).epsilon(1e-15));
}

TEST_CASE("circulating power, force, and linewidth") {
  SystemConfig cfg = reference();
  DerivedPair derived = derive_pair(cfg);

  CHECK(circulating_power(13.0, 100.0, -0.005) ==
        doctest::Approx(413.79250722624727).epsilon(1e-12));
  CHECK(derived.lower.circulating_power ==
        doctest::Approx(413.79250722624727).epsilon(1e-12));
  CHECK(derived.upper.circulating_power ==
        doctest::Approx(127.28271487389712).epsilon(1e-12));

  CHECK(derived.lower.radiation_force ==
        doctest::Approx(2.760526465453959e-06).epsilon(1e-12));
  CHECK(derived.upper.radiation_force ==
        doctest::Approx(8.491388724255173e-07).epsilon(1e-12));

  CHECK(cavity_linewidth(95e-3, 100.0) ==
        doctest::Approx(99139556.17415017).epsilon(1e-12));
  CHECK(derived.lower.linewidth_fwhm ==
        doctest::Approx(99139556.17415017).epsilon(1e-12));
  CHECK(derived.upper.linewidth_fwhm ==
        doctest::Approx(188365156.73088533).epsilon(1e-12));
  CHECK(derived.lower.pole_freq ==
        doctest::Approx(7889275.2105263155).epsilon(1e-12));
  CHECK(derived.upper.pole_freq ==
        doctest::Approx(derived.upper.linewidth_fwhm / (4.0 * M_PI))
            .epsilon(1e-15));
}

TEST_CASE("stack reflectivity against closed forms and an independent oracle") {
  SystemConfig cfg = reference();
  double wavelength = cfg.laser.wavelength;

  // full 13-layer reference stack
  double tmm = stack_reflectivity(cfg.mirror.coating, wavelength);
  CHECK(tmm == doctest::Approx(0.9686254308076071).epsilon(1e-12));
  CHECK(tmm == doctest::Approx(
                   fresnel_reflectivity(cfg.mirror.coating, wavelength, 1.0))
                   .epsilon(1e-12));

  // bare substrate: ((n0 - ns) / (n0 + ns))^2
  CoatingStack bare;
  bare.substrate = cfg.mirror.coating.substrate;
  CHECK(stack_reflectivity(bare, wavelength) ==
        doctest::Approx(0.033735943356934604).epsilon(1e-12));

  // single quarter-wave high-index film: ((1 - nh^2/ns) / (1 + nh^2/ns))^2
  CoatingStack quarter = bare;
  CoatingLayer film;
  film.material = cfg.mirror.coating.layers[0].material;  // n = 2.07
  film.thickness = wavelength / (4.0 * film.material.refractive_index);
  quarter.layers.push_back(film);
  CHECK(stack_reflectivity(quarter, wavelength) ==
        doctest::Approx(0.24435643977482238).epsilon(1e-12));

  // perturbed stacks agree with the recursive oracle as well
  for (double scale : {0.5, 0.8, 1.37}) {
    CoatingStack perturbed = cfg.mirror.coating;
    for (size_t i = 0; i < perturbed.layers.size(); ++i) {
      perturbed.layers[i].thickness *= scale + 0.01 * static_cast<double>(i);
    }
    double lib = stack_reflectivity(perturbed, wavelength);
    double oracle = fresnel_reflectivity(perturbed, wavelength, 1.0);
    CHECK(lib == doctest::Approx(oracle).epsilon(1e-12));
  }
}

TEST_CASE("clipping loss against the finesse budget") {
  SystemConfig cfg = reference();
  DerivedPair derived = derive_pair(cfg);

  ClippingResult lower = clipping_loss(cfg.mirror.radius,
                                       derived.lower.spot_radius_used,
                                       cfg.lower.finesse);
  CHECK(lower.loss == doctest::Approx(3.726653172078664e-06).epsilon(1e-12));
  CHECK(lower.bound == doctest::Approx(0.06283185307179587).epsilon(1e-12));
  CHECK(lower.within_budget);

  ClippingResult upper = clipping_loss(cfg.mirror.radius,
                                       derived.upper.spot_radius_used,
                                       cfg.upper.finesse);
  CHECK(upper.loss == doctest::Approx(0.0011286832388105574).epsilon(1e-12));
  CHECK(upper.within_budget);

  // a spot comparable to the mirror radius blows the budget
  ClippingResult bad = clipping_loss(0.35e-3, 0.3e-3, 100.0);
  CHECK(!bad.within_budget);
}

TEST_CASE("peak intensity and thermal load") {
  SystemConfig cfg = reference();
  DerivedPair derived = derive_pair(cfg);

  double peak_lower = peak_intensity(derived.lower.circulating_power,
                                     derived.lower.spot_radius_used);
  double peak_upper = peak_intensity(derived.upper.circulating_power,
                                     derived.upper.spot_radius_used);
  CHECK(peak_lower == doctest::Approx(1.3440229171315528e10).epsilon(1e-12));
  CHECK(peak_upper == doctest::Approx(2.244617533776957e9).epsilon(1e-12));
  CHECK(peak_lower < kDamageThreshold);
  CHECK(peak_upper < kDamageThreshold);

  ThermalLoad thermal = thermal_load(cfg, derived.lower.circulating_power);
  CHECK(thermal.absorbed_power ==
        doctest::Approx(0.00014068945245692405).epsilon(1e-12));
  CHECK(thermal.temperature_rise ==
        doctest::Approx(17.908587807360604).epsilon(1e-12));
}
