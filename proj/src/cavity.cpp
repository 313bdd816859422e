#include "optlev/cavity.hpp"

#include <cmath>
#include <complex>

#include "optlev/constants.hpp"

namespace optlev {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double effective_roc(const MirrorSpec& mirror, CavityLabel seen_from) {
  if (mirror.hr_side != HrSide::lower)
    throw std::invalid_argument("unsupported hr_side = upper; the HR face must "
                                "look into the lower cavity");
  if (mirror.roc == 0.0)
    throw std::invalid_argument("mirror ROC must be nonzero");
  if (seen_from == CavityLabel::lower) {
    // The lower cavity looks at the convex HR face directly.
    return -mirror.roc;
  }
  // The upper cavity sees the HR face through the substrate; refraction at
  // the flat back turns it into a concave mirror of ROC R/n.
  return mirror.roc / mirror.coating.substrate.refractive_index;
}

GPair resonator_g(double length, double fixed_roc, double levitated_roc) {
  if (fixed_roc == 0.0 || levitated_roc == 0.0)
    throw std::invalid_argument("zero mirror ROC in resonator_g");
  return GPair{1.0 - length / fixed_roc, 1.0 - length / levitated_roc};
}

ModeGeometry mode_geometry(double length, const GPair& g, double wavelength) {
  const double g1 = g.g_levitated;  // mirror 1 = levitated
  const double g2 = g.g_fixed;      // mirror 2 = fixed
  const double G = g1 * g2;
  if (!(G > 0.0 && G < 1.0))
    throw UnstableResonator("resonator not stable: g1*g2 = " + std::to_string(G) +
                                " outside (0, 1)",
                            G);
  const double pref = wavelength * length / kPi;
  ModeGeometry m;
  m.spot_radius_levitated = std::sqrt(pref * std::sqrt(g2 / (g1 * (1.0 - G))));
  m.spot_radius_fixed = std::sqrt(pref * std::sqrt(g1 / (g2 * (1.0 - G))));
  m.waist_radius =
      std::sqrt(pref * std::sqrt(G * (1.0 - G)) / std::abs(g1 + g2 - 2.0 * G));
  m.waist_position = length * g2 * (1.0 - g1) / (g1 + g2 - 2.0 * G);
  return m;
}

double stack_reflectivity(const CoatingStack& stack, double wavelength,
                          double ambient_index) {
  if (wavelength <= 0.0)
    throw std::invalid_argument("wavelength must be > 0");
  using cd = std::complex<double>;
  // Characteristic matrix product, layers ordered incident medium -> substrate.
  cd m00 = 1.0, m01 = 0.0, m10 = 0.0, m11 = 1.0;
  for (const CoatingLayer& layer : stack.layers) {
    const double n = layer.material.refractive_index;
    const double phi = 2.0 * kPi * n * layer.thickness / wavelength;
    const cd c = std::cos(phi);
    const cd s = cd(0.0, 1.0) * std::sin(phi);
    const cd a00 = c, a01 = s / n, a10 = s * n, a11 = c;
    const cd t00 = m00 * a00 + m01 * a10;
    const cd t01 = m00 * a01 + m01 * a11;
    const cd t10 = m10 * a00 + m11 * a10;
    const cd t11 = m10 * a01 + m11 * a11;
    m00 = t00; m01 = t01; m10 = t10; m11 = t11;
  }
  const double ns = stack.substrate.refractive_index;
  const cd B = m00 + m01 * ns;
  const cd C = m10 + m11 * ns;
  const cd r = (ambient_index * B - C) / (ambient_index * B + C);
  return std::norm(r);
}

double circulating_power(double input_power, double finesse, double detuning_norm) {
  return input_power * (finesse / kPi) / (1.0 + detuning_norm * detuning_norm);
}

double radiation_force(double circ_power) { return 2.0 * circ_power / kConst.c; }

double cavity_linewidth(double length, double finesse) {
  if (length <= 0.0 || finesse <= 0.0)
    throw std::invalid_argument("cavity length and finesse must be > 0");
  return kPi * kConst.c / (length * finesse);
}

ClippingResult clipping_loss(double mirror_radius, double spot_radius,
                             double finesse) {
  ClippingResult r;
  if (spot_radius <= 0.0) {
    r.loss = 0.0;  // vanishing beam: no spill
  } else {
    r.loss = std::exp(-2.0 * mirror_radius * mirror_radius /
                      (spot_radius * spot_radius));
  }
  r.bound = 2.0 * kPi / finesse;
  r.within_budget = r.loss <= r.bound;
  return r;
}

double peak_intensity(double circ_power, double spot_radius) {
  if (spot_radius <= 0.0)
    throw std::invalid_argument("spot radius must be > 0");
  return 2.0 * circ_power / (kPi * spot_radius * spot_radius);
}

ThermalLoad thermal_load(const SystemConfig& config, double circ_power_lower,
                         double emissivity) {
  ThermalLoad t;
  t.absorbed_power = config.mirror.absorption * circ_power_lower;
  const double r = config.mirror.radius;
  const double h = 2.0 * r / config.mirror.aspect_ratio;
  const double area = 2.0 * kPi * r * r + 2.0 * kPi * r * h;  // faces + side
  const double T = config.environment.temperature;
  t.temperature_rise =
      t.absorbed_power / (4.0 * kConst.sigma_SB * T * T * T * area * emissivity);
  return t;
}

CavityDerived derive_cavity(const SystemConfig& config, CavityLabel label) {
  const CavitySpec& spec = label == CavityLabel::lower ? config.lower : config.upper;
  CavityDerived d;
  d.label = label;
  d.effective_levitated_roc = effective_roc(config.mirror, label);
  GPair g = resonator_g(spec.length, spec.fixed_mirror_roc, d.effective_levitated_roc);
  d.g_fixed = g.g_fixed;
  d.g_levitated = g.g_levitated;
  ModeGeometry mode = mode_geometry(spec.length, g, config.laser.wavelength);
  d.waist_radius = mode.waist_radius;
  d.spot_radius_levitated = mode.spot_radius_levitated;
  d.spot_radius_fixed = mode.spot_radius_fixed;
  d.spot_radius_used = spec.spot_radius.value_or(mode.spot_radius_levitated);
  d.linewidth_fwhm = cavity_linewidth(spec.length, spec.finesse);
  d.pole_freq = d.linewidth_fwhm / (4.0 * kPi);
  d.circulating_power =
      circulating_power(spec.input_power, spec.finesse, spec.detuning_norm);
  d.radiation_force = radiation_force(d.circulating_power);
  return d;
}

DerivedPair derive_pair(const SystemConfig& config) {
  return DerivedPair{derive_cavity(config, CavityLabel::lower),
                     derive_cavity(config, CavityLabel::upper)};
}

}  // namespace optlev
