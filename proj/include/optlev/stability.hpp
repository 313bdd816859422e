#ifndef OPTLEV_STABILITY_HPP
#define OPTLEV_STABILITY_HPP

// Mechanical stability of the levitated mirror: the frequency-dependent
// complex stiffness for the three rigid-body degrees of freedom (vertical,
// horizontal, rotational), the static force balance, trapping ranges, and
// the displacement susceptibility used by the noise budget.

#include <complex>
#include <vector>

#include "optlev/cavity.hpp"
#include "optlev/config.hpp"

namespace optlev {

// How the Dall'Osso-style lever-arm factor G_I = g1*g2 entering the
// horizontal damping term is evaluated: with signed effective ROCs (default)
// or with the raw positive ROC values as printed in the source formula.
enum class RocConvention { signed_roc, paper_literal };

// One diagonal entry of the stiffness matrix at a single frequency.
struct ComplexStiffness {
  double real_part = 0.0;  // [N/m] (or [N m/rad] for the rotational entry)
  double imag_part = 0.0;  // same units; 0 at eval_freq = 0
  double eval_freq = 0.0;  // [Hz]
};

// Vertical (axial) optical spring of one cavity.
struct VerticalSpring {
  ComplexStiffness stiffness;
  double spring_constant = 0.0;  // [N/m], frequency-independent real part
  double damping_rate = 0.0;     // [1/s], optical (anti-)damping
  bool adiabatic_valid = false;  // eval frequency below linewidth/10
};

// Diagonal stiffness matrix (horizontal, vertical, rotational) at one
// frequency. Off-diagonal couplings vanish for this geometry.
struct StiffnessMatrix {
  ComplexStiffness horizontal;
  ComplexStiffness vertical;
  ComplexStiffness rotational;
};

enum class TrapBound { detuning, geometric, mode_match };

// Displacement ranges over which the linearized trap model holds. [m]
struct TrappingRanges {
  double axial_bound = 0.0;        // vertical: min over cavities of lambda |d| / F
  double lateral_detuning = 0.0;   // sqrt(2 a lambda |d| / F), min over cavities
  double lateral_geometric = 0.0;  // min center-of-curvature lever arm
  double lateral_mode_match = 0.0; // waist-offset/tilt mode-matching bound
  double lateral_bound = 0.0;      // min of the three lateral bounds
  TrapBound lateral_binding = TrapBound::detuning;
};

struct ForceBalance {
  double weight = 0.0;       // m g [N]
  double lower_force = 0.0;  // upward radiation force [N]
  double upper_force = 0.0;  // downward radiation force [N]
  double residual = 0.0;     // (F_lower - F_upper - m g) / (m g)
};

// Vertical optical spring of one cavity:
//   k   = 16 F d P_circ / (lambda c (1 + d^2))        [N/m]
//   gam = -(k/m) * 4 / (kappa (1 + d^2))              [1/s]
// imag part at angular frequency w is m * w * gam. A positive normalized
// detuning gives a positive (restoring) spring.
VerticalSpring vertical_optical_spring(const CavitySpec& spec,
                                       const CavityDerived& derived, double mass,
                                       double wavelength, double omega);

// Horizontal (pendulum-like) stiffness of one cavity:
//   K = +/- (F_rad / a) * [1 - i w pi L / (F c (1 - G))]
// with the minus sign for the lower cavity and plus for the upper.
// Throws std::domain_error when 1 - G vanishes (degenerate geometry).
ComplexStiffness horizontal_spring(const SystemConfig& config,
                                   const CavityDerived& derived, double omega,
                                   RocConvention convention = RocConvention::signed_roc);

// Gravitational restoring torque coefficient m g R for rotation about a
// horizontal axis. [N m / rad]
double gravity_rotational_stiffness(double mass, double roc);

// Sum of the two cavities' contributions for each diagonal entry.
StiffnessMatrix stiffness_matrix(const SystemConfig& config,
                                 const DerivedPair& derived, double omega,
                                 RocConvention convention = RocConvention::signed_roc);

// Vertical mechanical response x/F = 1 / (-m w^2 + K_z(w)).
// Throws std::domain_error at an exact (undamped) pole, naming the
// resonance frequency.
std::complex<double> susceptibility(const SystemConfig& config,
                                    const DerivedPair& derived, double omega,
                                    RocConvention convention = RocConvention::signed_roc);

ForceBalance force_balance(const SystemConfig& config, const DerivedPair& derived);

TrappingRanges trapping_ranges(const SystemConfig& config, const DerivedPair& derived);

struct StabilityBand {
  double f_min = 1.0;    // [Hz]
  double f_max = 1e5;    // [Hz]
  int points = 121;      // log-spaced evaluation points
};

struct StabilityReport {
  // Net per-DOF quantities (frequency-independent parts).
  double vertical_spring = 0.0;       // [N/m]
  double vertical_damping = 0.0;      // [1/s]
  double horizontal_spring = 0.0;     // [N/m]
  double horizontal_damping_coef = 0.0;  // Im K_x / w [N s / m]
  double rotational_stiffness = 0.0;  // [N m / rad]

  bool vertical_ok = false;     // real and imaginary parts positive over band
  bool horizontal_real_ok = false;
  bool horizontal_damping_positive = false;  // surfaced, not gated by default
  bool rotational_ok = false;
  bool adiabatic_valid = false;  // band within optical-spring validity
  bool passes = false;           // gate (excludes horizontal damping unless strict)

  bool has_resonance = false;
  double f_res = 0.0;  // vertical spring resonance [Hz], where Re(-m w^2 + K_z) = 0
};

// Evaluates the stiffness matrix across the band and applies the stability
// gate: vertical spring and damping positive, horizontal spring positive,
// rotational stiffness positive. The horizontal damping sign is reported;
// it only gates when strict_horizontal_damping is set.
StabilityReport stability_report(const SystemConfig& config,
                                 const DerivedPair& derived,
                                 const StabilityBand& band = {},
                                 RocConvention convention = RocConvention::signed_roc,
                                 bool strict_horizontal_damping = false);

}  // namespace optlev

#endif  // OPTLEV_STABILITY_HPP
