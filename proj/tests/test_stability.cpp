#include <cmath>
#include <complex>

#include "doctest.h"
#include "optlev/cavity.hpp"
#include "optlev/config.hpp"
#include "optlev/stability.hpp"

using namespace optlev;

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

SystemConfig reference() { return parse_config(bundled_table1()); }

SystemConfig flipped_detunings() {
  SystemConfig cfg = reference();
  cfg.lower.detuning_norm = +0.005;  // red side down, blue side up
  cfg.upper.detuning_norm = -0.018;
  return cfg;
}

}  // namespace

TEST_CASE("vertical optical springs of the reference design") {
  SystemConfig cfg = reference();
  DerivedPair derived = derive_pair(cfg);
  double mass = mirror_mass(cfg.mirror);
  double omega = kTwoPi * 100.0;

  VerticalSpring lower = vertical_optical_spring(cfg.lower, derived.lower, mass,
                                                 cfg.laser.wavelength, omega);
  VerticalSpring upper = vertical_optical_spring(cfg.upper, derived.upper, mass,
                                                 cfg.laser.wavelength, omega);

  CHECK(lower.spring_constant ==
        doctest::Approx(-10.377659601569958).epsilon(1e-12));
  CHECK(lower.damping_rate == doctest::Approx(2.119415750687471).epsilon(1e-12));
  CHECK(upper.spring_constant ==
        doctest::Approx(11.488382804316746).epsilon(1e-12));
  CHECK(upper.damping_rate ==
        doctest::Approx(-1.2345031492644856).epsilon(1e-12));

  CHECK(lower.spring_constant + upper.spring_constant ==
        doctest::Approx(1.1107232027467884).epsilon(1e-12));
  CHECK(lower.damping_rate + upper.damping_rate ==
        doctest::Approx(0.8849126014229853).epsilon(1e-12));

  // imaginary part is m w gamma; real part is the spring constant
  CHECK(lower.stiffness.real_part ==
        doctest::Approx(lower.spring_constant).epsilon(1e-15));
  CHECK(lower.stiffness.imag_part ==
        doctest::Approx(mass * omega * lower.damping_rate).epsilon(1e-12));

  // both evaluation points sit far below linewidth/10
  CHECK(lower.adiabatic_valid);
  CHECK(upper.adiabatic_valid);
  VerticalSpring fast = vertical_optical_spring(
      cfg.lower, derived.lower, mass, cfg.laser.wavelength,
      derived.lower.linewidth_fwhm);
  CHECK(!fast.adiabatic_valid);
}

TEST_CASE("horizontal spring components and conventions") {
  SystemConfig cfg = reference();
  DerivedPair derived = derive_pair(cfg);
  double omega = kTwoPi * 100.0;

  ComplexStiffness lower =
      horizontal_spring(cfg, derived.lower, omega, RocConvention::signed_roc);
  ComplexStiffness upper =
      horizontal_spring(cfg, derived.upper, omega, RocConvention::signed_roc);

  CHECK(lower.real_part ==
        doctest::Approx(-0.0005521052930907918).epsilon(1e-12));
  CHECK(upper.real_part ==
        doctest::Approx(0.0006531837480196288).epsilon(1e-12));
  CHECK(lower.real_part + upper.real_part ==
        doctest::Approx(1.01078454928837e-4).epsilon(1e-12));

  CHECK(lower.imag_part / omega ==
        doctest::Approx(4.16565766842303e-14).epsilon(1e-9));
  CHECK(upper.imag_part / omega ==
        doctest::Approx(-6.160373580180098e-14).epsilon(1e-9));
  CHECK((lower.imag_part + upper.imag_part) / omega ==
        doctest::Approx(-1.9947159117570668e-14).epsilon(1e-9));

  // the literal-ROC variant changes the damping factor, not the spring
  ComplexStiffness lower_lit =
      horizontal_spring(cfg, derived.lower, omega, RocConvention::paper_literal);
  ComplexStiffness upper_lit =
      horizontal_spring(cfg, derived.upper, omega, RocConvention::paper_literal);
  CHECK(lower_lit.real_part == doctest::Approx(lower.real_part).epsilon(1e-15));
  CHECK((lower_lit.imag_part + upper_lit.imag_part) / omega ==
        doctest::Approx(-2.3734120634318483e-15).epsilon(1e-9));

  // dc limit carries no damping term
  ComplexStiffness dc = horizontal_spring(cfg, derived.lower, 0.0);
  CHECK(dc.imag_part == 0.0);

  // degenerate 1 - G = 0 geometry is rejected
  CavityDerived degenerate = derived.lower;
  degenerate.g_fixed = 1.0;
  degenerate.g_levitated = 1.0;
  CHECK_THROWS_AS(horizontal_spring(cfg, degenerate, omega), std::domain_error);
}

TEST_CASE("rotational stiffness and the stiffness matrix") {
  SystemConfig cfg = reference();
  DerivedPair derived = derive_pair(cfg);
  double mass = mirror_mass(cfg.mirror);
  double omega = kTwoPi * 100.0;

  CHECK(gravity_rotational_stiffness(mass, cfg.mirror.roc) ==
        doctest::Approx(5.8120234488469636e-08).epsilon(1e-12));

  StiffnessMatrix matrix = stiffness_matrix(cfg, derived, omega);
  CHECK(matrix.vertical.real_part ==
        doctest::Approx(1.1107232027467884).epsilon(1e-12));
  CHECK(matrix.horizontal.real_part ==
        doctest::Approx(1.01078454928837e-4).epsilon(1e-12));
  CHECK(matrix.rotational.real_part ==
        doctest::Approx(5.8120234488469636e-08).epsilon(1e-12));
  CHECK(matrix.rotational.imag_part == 0.0);
  CHECK(matrix.vertical.eval_freq == doctest::Approx(100.0).epsilon(1e-15));
}

TEST_CASE("force balance of the reference design") {
  SystemConfig cfg = reference();
  DerivedPair derived = derive_pair(cfg);
  ForceBalance balance = force_balance(cfg, derived);

  CHECK(balance.weight == doctest::Approx(1.9373411496156546e-06).epsilon(1e-12));
  CHECK(balance.lower_force ==
        doctest::Approx(2.760526465453959e-06).epsilon(1e-12));
  CHECK(balance.upper_force ==
        doctest::Approx(8.491388724255173e-07).epsilon(1e-12));
  CHECK(balance.residual ==
        doctest::Approx(-0.013396482386368341).epsilon(1e-12));
}

TEST_CASE("trapping ranges and the binding condition") {
  SystemConfig cfg = reference();
  DerivedPair derived = derive_pair(cfg);
  TrappingRanges ranges = trapping_ranges(cfg, derived);

  CHECK(ranges.axial_bound == doctest::Approx(5.32e-11).epsilon(1e-12));
  CHECK(ranges.lateral_detuning ==
        doctest::Approx(7.056571405434795e-07).epsilon(1e-12));
  CHECK(ranges.lateral_geometric == doctest::Approx(1.3e-3).epsilon(1e-12));
  CHECK(ranges.lateral_mode_match ==
        doctest::Approx(1.8164580919146114e-05).epsilon(1e-12));
  CHECK(ranges.lateral_bound ==
        doctest::Approx(ranges.lateral_detuning).epsilon(1e-15));
  CHECK(ranges.lateral_binding == TrapBound::detuning);
}

TEST_CASE("vertical susceptibility: dc value, resonance, free-mass limit") {
  SystemConfig cfg = reference();
  DerivedPair derived = derive_pair(cfg);
  double mass = mirror_mass(cfg.mirror);
  double k_net = 1.1107232027467884;
  double f_res = 377.3812685633414;

  std::complex<double> dc = susceptibility(cfg, derived, 0.0);
  CHECK(std::abs(dc * k_net - 1.0) < 1e-12);

  // finite (damped) response on resonance
  std::complex<double> at_res = susceptibility(cfg, derived, kTwoPi * f_res);
  CHECK(std::isfinite(std::abs(at_res)));
  CHECK(std::abs(at_res) > std::abs(dc));

  // one decade above resonance the spring still contributes 1/99 ~ 1.01%
  double omega10 = kTwoPi * f_res * 10.0;
  std::complex<double> chi10 = susceptibility(cfg, derived, omega10);
  double deviation10 = std::abs(chi10 * (-mass * omega10 * omega10) - 1.0);
  CHECK(deviation10 == doctest::Approx(1.0101080435659191e-2).epsilon(1e-9));

  // two decades above resonance the mass term dominates to ~1e-4
  double omega = kTwoPi * f_res * 100.0;
  std::complex<double> chi = susceptibility(cfg, derived, omega);
  double deviation = std::abs(chi * (-mass * omega * omega) - 1.0);
  CHECK(deviation == doctest::Approx(1.0007962238111706e-4).epsilon(1e-9));
  CHECK(deviation < 1e-2);
}

TEST_CASE("stability report gates the reference design correctly") {
  SystemConfig cfg = reference();
  DerivedPair derived = derive_pair(cfg);

  StabilityReport rep = stability_report(cfg, derived);
  CHECK(rep.vertical_spring == doctest::Approx(1.1107232027467884).epsilon(1e-12));
  CHECK(rep.vertical_damping ==
        doctest::Approx(0.8849126014229853).epsilon(1e-12));
  CHECK(rep.horizontal_spring ==
        doctest::Approx(1.01078454928837e-4).epsilon(1e-12));
  CHECK(rep.horizontal_damping_coef ==
        doctest::Approx(-1.9947159117570668e-14).epsilon(1e-9));
  CHECK(rep.rotational_stiffness ==
        doctest::Approx(5.8120234488469636e-08).epsilon(1e-12));

  CHECK(rep.vertical_ok);
  CHECK(rep.horizontal_real_ok);
  CHECK(!rep.horizontal_damping_positive);  // known anti-damped; surfaced only
  CHECK(rep.rotational_ok);
  CHECK(rep.adiabatic_valid);
  CHECK(rep.passes);

  CHECK(rep.has_resonance);
  CHECK(rep.f_res == doctest::Approx(377.3812685633414).epsilon(1e-12));

  // gating the damping sign makes the verdict fail
  StabilityReport strict = stability_report(cfg, derived, StabilityBand{},
                                            RocConvention::signed_roc, true);
  CHECK(!strict.passes);
  CHECK(strict.vertical_ok);
}

TEST_CASE("flipping both detuning signs destroys the vertical trap") {
  SystemConfig cfg = flipped_detunings();
  DerivedPair derived = derive_pair(cfg);

  StabilityReport rep = stability_report(cfg, derived);
  CHECK(rep.vertical_spring < 0.0);
  CHECK(!rep.vertical_ok);
  CHECK(!rep.passes);
  CHECK(!rep.has_resonance);
}
