#ifndef OPTLEV_CAVITY_HPP
#define OPTLEV_CAVITY_HPP

// Per-cavity optics: resonator geometry and Gaussian mode, stored power and
// radiation force, linewidth, multilayer reflectivity, and the aperture /
// intensity / thermal sanity checks that feed the feasibility gates.

#include <stdexcept>
#include <string>

#include "optlev/config.hpp"

namespace optlev {

// Thrown when a requested resonator has g1*g2 outside the open interval
// (0, 1); carries the offending product.
class UnstableResonator : public std::runtime_error {
 public:
  UnstableResonator(const std::string& msg, double product)
      : std::runtime_error(msg), g_product_(product) {}
  double g_product() const { return g_product_; }

 private:
  double g_product_ = 0.0;
};

// Stability parameters g_i = 1 - L/R_i of the two mirrors forming one cavity.
struct GPair {
  double g_fixed = 0.0;      // fixed (input) mirror
  double g_levitated = 0.0;  // levitated mirror
  double product() const { return g_fixed * g_levitated; }
};

// Gaussian eigenmode of a two-mirror resonator.
struct ModeGeometry {
  double waist_radius = 0.0;         // [m]
  double spot_radius_levitated = 0.0;  // beam radius on the levitated mirror [m]
  double spot_radius_fixed = 0.0;      // beam radius on the fixed mirror [m]
  double waist_position = 0.0;  // signed distance from the levitated mirror toward
                                // the fixed mirror [m]; negative = outside the cavity
};

// Everything derived from one CavitySpec. spot_radius_* are the pure
// geometry values; spot_radius_used applies the config override when present
// and is what downstream consumers (thermal-noise spot, peak intensity,
// clipping) should use.
struct CavityDerived {
  CavityLabel label = CavityLabel::lower;
  double g_fixed = 0.0;
  double g_levitated = 0.0;
  double waist_radius = 0.0;            // [m]
  double spot_radius_levitated = 0.0;   // [m], geometry-derived
  double spot_radius_fixed = 0.0;       // [m], geometry-derived
  double spot_radius_used = 0.0;        // [m], override-aware
  double linewidth_fwhm = 0.0;          // cavity linewidth kappa [rad/s]
  double pole_freq = 0.0;               // kappa / (4 pi) [Hz]
  double circulating_power = 0.0;       // [W]
  double radiation_force = 0.0;         // 2 P_circ / c [N]
  double effective_levitated_roc = 0.0; // signed ROC seen by this cavity [m]
};

struct DerivedPair {
  CavityDerived lower;
  CavityDerived upper;
  const CavityDerived& of(CavityLabel label) const {
    return label == CavityLabel::lower ? lower : upper;
  }
};

// Signed radius of curvature the given cavity sees on the levitated mirror.
// mirror.roc stores the HR face's curvature as a positive number; that face
// points down and appears convex to the lower cavity: -R. The upper cavity
// looks through the substrate and sees the same face as a concave mirror
// with ROC R / n_substrate. Only hr_side = lower is supported.
double effective_roc(const MirrorSpec& mirror, CavityLabel seen_from);

// g_i = 1 - L/R_i for (fixed mirror, levitated mirror). levitated_roc is the
// signed effective ROC from effective_roc().
GPair resonator_g(double length, double fixed_roc, double levitated_roc);

// Gaussian mode of the resonator; throws UnstableResonator unless
// 0 < g1*g2 < 1 (open interval: confocal/planar boundaries are rejected).
ModeGeometry mode_geometry(double length, const GPair& g, double wavelength);

// Power-reflectivity of a lossless dielectric stack at normal incidence,
// light incident from a medium of index ambient_index, via the
// characteristic-matrix method. Layers are ordered from the incident medium
// toward the substrate.
double stack_reflectivity(const CoatingStack& stack, double wavelength,
                          double ambient_index = 1.0);

// Intracavity power P_in * (F/pi) / (1 + d^2) for detuning d normalized to
// the half linewidth. [W]
double circulating_power(double input_power, double finesse, double detuning_norm);

// Normal-incidence radiation force 2 P_circ / c. [N]
double radiation_force(double circ_power);

// Cavity linewidth (FWHM) kappa = pi c / (L F) [rad/s].
double cavity_linewidth(double length, double finesse);

struct ClippingResult {
  double loss = 0.0;        // fractional power lost past the mirror edge
  double bound = 0.0;       // round-trip loss budget 2 pi / F
  bool within_budget = false;
};

// Fractional Gaussian power falling outside a mirror of radius
// mirror_radius for beam radius w: exp(-2 r^2 / w^2).
ClippingResult clipping_loss(double mirror_radius, double spot_radius,
                             double finesse);

// On-axis intensity of a Gaussian beam, 2 P / (pi w^2). [W/m^2]
double peak_intensity(double circ_power, double spot_radius);

// Default coating damage threshold, 2 MW/mm^2 expressed in W/m^2.
inline constexpr double kDamageThreshold = 2e12;

struct ThermalLoad {
  double absorbed_power = 0.0;    // [W]
  double temperature_rise = 0.0;  // [K], linearized radiative balance
};

// Absorbed power (coating absorption x lower-cavity circulating power) and
// the steady-state temperature rise for a radiatively cooled cylinder:
// dT = P_abs / (4 sigma T^3 A epsilon) with A = two faces + side, eps = 1.
ThermalLoad thermal_load(const SystemConfig& config, double circ_power_lower,
                         double emissivity = 1.0);

// Full per-cavity derivation (geometry, mode, linewidth, power, force).
CavityDerived derive_cavity(const SystemConfig& config, CavityLabel label);
DerivedPair derive_pair(const SystemConfig& config);

}  // namespace optlev

#endif  // OPTLEV_CAVITY_HPP
