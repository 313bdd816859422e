#include "optlev/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "optlev/constants.hpp"

namespace optlev {

namespace {

constexpr double kPi = 3.14159265358979323846;

const CavitySpec& spec_of(const SystemConfig& config, CavityLabel label) {
  return label == CavityLabel::lower ? config.lower : config.upper;
}

// Horizontal restoring lever arm: the distance between the centers of
// curvature of the two mirrors forming this cavity. [m]
double lever_arm(const SystemConfig& config, CavityLabel label) {
  return spec_of(config, label).coc_distance;
}

double g_product_for_damping(const SystemConfig& config,
                             const CavityDerived& derived,
                             RocConvention convention) {
  if (convention == RocConvention::signed_roc) {
    return derived.g_fixed * derived.g_levitated;
  }
  // Raw printed ROC magnitudes: G = (1 - l/R_fixed)(1 - l/R) with the bare
  // positive R of the levitated mirror for both cavities.
  const CavitySpec& spec = spec_of(config, derived.label);
  double g1 = 1.0 - spec.length / spec.fixed_mirror_roc;
  double g2 = 1.0 - spec.length / config.mirror.roc;
  return g1 * g2;
}

}  // namespace

VerticalSpring vertical_optical_spring(const CavitySpec& spec,
                                       const CavityDerived& derived, double mass,
                                       double wavelength, double omega) {
  double d = spec.detuning_norm;
  double lorentz = 1.0 + d * d;
  double k = 16.0 * spec.finesse * d * derived.circulating_power /
             (wavelength * kConst.c * lorentz);
  double kappa = derived.linewidth_fwhm;  // already angular [rad/s]
  double gamma = -(k / mass) * 4.0 / (kappa * lorentz);

  VerticalSpring spring;
  spring.spring_constant = k;
  spring.damping_rate = gamma;
  spring.stiffness.real_part = k;
  spring.stiffness.imag_part = mass * omega * gamma;
  spring.stiffness.eval_freq = omega / (2.0 * kPi);
  spring.adiabatic_valid = omega <= kappa / 10.0;
  return spring;
}

ComplexStiffness horizontal_spring(const SystemConfig& config,
                                   const CavityDerived& derived, double omega,
                                   RocConvention convention) {
  const CavitySpec& spec = spec_of(config, derived.label);
  double a = lever_arm(config, derived.label);
  double sign = derived.label == CavityLabel::lower ? -1.0 : 1.0;
  double g_product = g_product_for_damping(config, derived, convention);
  double one_minus_g = 1.0 - g_product;
  if (one_minus_g == 0.0) {
    std::ostringstream msg;
    msg << "horizontal spring is degenerate: g1*g2 = 1 for the "
        << (derived.label == CavityLabel::lower ? "lower" : "upper") << " cavity";
    throw std::domain_error(msg.str());
  }

  double base = sign * derived.radiation_force / a;
  ComplexStiffness k;
  k.real_part = base;
  k.imag_part = -base * omega * kPi * spec.length /
                (spec.finesse * kConst.c * one_minus_g);
  k.eval_freq = omega / (2.0 * kPi);
  return k;
}

double gravity_rotational_stiffness(double mass, double roc) {
  return mass * kConst.g_acc * roc;
}

StiffnessMatrix stiffness_matrix(const SystemConfig& config,
                                 const DerivedPair& derived, double omega,
                                 RocConvention convention) {
  double mass = mirror_mass(config.mirror);
  double f = omega / (2.0 * kPi);

  StiffnessMatrix m;
  VerticalSpring lower = vertical_optical_spring(config.lower, derived.lower, mass,
                                                 config.laser.wavelength, omega);
  VerticalSpring upper = vertical_optical_spring(config.upper, derived.upper, mass,
                                                 config.laser.wavelength, omega);
  m.vertical.real_part = lower.stiffness.real_part + upper.stiffness.real_part;
  m.vertical.imag_part = lower.stiffness.imag_part + upper.stiffness.imag_part;
  m.vertical.eval_freq = f;

  ComplexStiffness hl = horizontal_spring(config, derived.lower, omega, convention);
  ComplexStiffness hu = horizontal_spring(config, derived.upper, omega, convention);
  m.horizontal.real_part = hl.real_part + hu.real_part;
  m.horizontal.imag_part = hl.imag_part + hu.imag_part;
  m.horizontal.eval_freq = f;

  m.rotational.real_part = gravity_rotational_stiffness(mass, config.mirror.roc);
  m.rotational.imag_part = 0.0;
  m.rotational.eval_freq = f;
  return m;
}

std::complex<double> susceptibility(const SystemConfig& config,
                                    const DerivedPair& derived, double omega,
                                    RocConvention convention) {
  double mass = mirror_mass(config.mirror);
  StiffnessMatrix m = stiffness_matrix(config, derived, omega, convention);
  std::complex<double> denom(-mass * omega * omega + m.vertical.real_part,
                             m.vertical.imag_part);
  if (denom == std::complex<double>(0.0, 0.0)) {
    std::ostringstream msg;
    msg << "susceptibility pole: undamped spring resonance at f_res = "
        << std::sqrt(m.vertical.real_part / mass) / (2.0 * kPi) << " Hz";
    throw std::domain_error(msg.str());
  }
  return 1.0 / denom;
}

ForceBalance force_balance(const SystemConfig& config, const DerivedPair& derived) {
  ForceBalance fb;
  fb.weight = mirror_mass(config.mirror) * kConst.g_acc;
  fb.lower_force = derived.lower.radiation_force;
  fb.upper_force = derived.upper.radiation_force;
  fb.residual = (fb.lower_force - fb.upper_force - fb.weight) / fb.weight;
  return fb;
}

TrappingRanges trapping_ranges(const SystemConfig& config,
                               const DerivedPair& derived) {
  double lambda = config.laser.wavelength;
  TrappingRanges r;
  r.axial_bound = std::numeric_limits<double>::infinity();
  r.lateral_detuning = std::numeric_limits<double>::infinity();
  r.lateral_geometric = std::numeric_limits<double>::infinity();
  r.lateral_mode_match = std::numeric_limits<double>::infinity();

  for (CavityLabel label : {CavityLabel::lower, CavityLabel::upper}) {
    const CavitySpec& spec = spec_of(config, label);
    const CavityDerived& d = derived.of(label);
    double a = lever_arm(config, label);

    // Axial: displacement that detunes the cavity by its half linewidth
    // relative to the operating point, lambda |d| / finesse.
    double dz = lambda * std::abs(spec.detuning_norm) / spec.finesse;
    r.axial_bound = std::min(r.axial_bound, dz);

    // Lateral via detuning: a transverse offset x shortens the geometric
    // path by x^2 / (2 a); the linear trap holds while that stays within
    // the axial bound.
    double dx_detuning = std::sqrt(2.0 * a * dz);
    r.lateral_detuning = std::min(r.lateral_detuning, dx_detuning);

    // Lateral via geometry: the optical axis pivot argument fails once the
    // offset is comparable to the lever arm itself.
    r.lateral_geometric = std::min(r.lateral_geometric, a);

    // Lateral via mode matching: the displaced mode acquires a waist offset
    // x and a tilt x / a; overlap stays near unity while
    // (x / w0)^2 + (x / (a theta0))^2 << 2 with theta0 = lambda / (pi w0).
    double theta0 = lambda / (kPi * d.waist_radius);
    double inv2 = 1.0 / (d.waist_radius * d.waist_radius) +
                  1.0 / (a * theta0 * a * theta0);
    double dx_mode = std::sqrt(2.0 / inv2);
    r.lateral_mode_match = std::min(r.lateral_mode_match, dx_mode);
  }

  r.lateral_bound = std::min({r.lateral_detuning, r.lateral_geometric,
                              r.lateral_mode_match});
  if (r.lateral_bound == r.lateral_detuning) {
    r.lateral_binding = TrapBound::detuning;
  } else if (r.lateral_bound == r.lateral_geometric) {
    r.lateral_binding = TrapBound::geometric;
  } else {
    r.lateral_binding = TrapBound::mode_match;
  }
  return r;
}

StabilityReport stability_report(const SystemConfig& config,
                                 const DerivedPair& derived,
                                 const StabilityBand& band,
                                 RocConvention convention,
                                 bool strict_horizontal_damping) {
  if (!(band.f_min > 0.0) || !(band.f_max > band.f_min) || band.points < 2) {
    throw std::invalid_argument("stability band must satisfy 0 < f_min < f_max with at least 2 points");
  }
  double mass = mirror_mass(config.mirror);

  StabilityReport rep;
  rep.vertical_ok = true;
  rep.horizontal_real_ok = true;
  rep.horizontal_damping_positive = true;
  rep.adiabatic_valid = true;

  double log_lo = std::log(band.f_min);
  double log_hi = std::log(band.f_max);
  for (int i = 0; i < band.points; ++i) {
    double f = std::exp(log_lo + (log_hi - log_lo) * i / (band.points - 1));
    double omega = 2.0 * kPi * f;
    StiffnessMatrix m = stiffness_matrix(config, derived, omega, convention);
    if (!(m.vertical.real_part > 0.0) || !(m.vertical.imag_part > 0.0)) {
      rep.vertical_ok = false;
    }
    if (!(m.horizontal.real_part > 0.0)) {
      rep.horizontal_real_ok = false;
    }
    if (!(m.horizontal.imag_part > 0.0)) {
      rep.horizontal_damping_positive = false;
    }
    VerticalSpring vl = vertical_optical_spring(config.lower, derived.lower, mass,
                                                config.laser.wavelength, omega);
    VerticalSpring vu = vertical_optical_spring(config.upper, derived.upper, mass,
                                                config.laser.wavelength, omega);
    if (!vl.adiabatic_valid || !vu.adiabatic_valid) {
      rep.adiabatic_valid = false;
    }
  }

  double omega_ref = 2.0 * kPi * band.f_min;
  StiffnessMatrix at_ref = stiffness_matrix(config, derived, omega_ref, convention);
  VerticalSpring vl = vertical_optical_spring(config.lower, derived.lower, mass,
                                              config.laser.wavelength, omega_ref);
  VerticalSpring vu = vertical_optical_spring(config.upper, derived.upper, mass,
                                              config.laser.wavelength, omega_ref);
  rep.vertical_spring = vl.spring_constant + vu.spring_constant;
  rep.vertical_damping = vl.damping_rate + vu.damping_rate;
  rep.horizontal_spring = at_ref.horizontal.real_part;
  rep.horizontal_damping_coef = at_ref.horizontal.imag_part / omega_ref;
  rep.rotational_stiffness = at_ref.rotational.real_part;
  rep.rotational_ok = rep.rotational_stiffness > 0.0;

  if (rep.vertical_spring > 0.0) {
    rep.has_resonance = true;
    rep.f_res = std::sqrt(rep.vertical_spring / mass) / (2.0 * kPi);
  }

  rep.passes = rep.vertical_ok && rep.horizontal_real_ok && rep.rotational_ok &&
               (!strict_horizontal_damping || rep.horizontal_damping_positive);
  return rep;
}

}  // namespace optlev
