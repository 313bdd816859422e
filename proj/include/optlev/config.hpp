#ifndef OPTLEV_CONFIG_HPP
#define OPTLEV_CONFIG_HPP

// System description for a two-cavity levitated-mirror design: the levitated
// mirror, the probe laser, the lower and upper Fabry-Perot cavities that
// sandwich the mirror, and the thermal/seismic environment.
//
// Configs are plain sectioned key-value text files; all values are SI-unit
// decimal numbers (the single exception is hr_side, a lower/upper token).

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace optlev {

// Isotropic elastic solid with a mechanical loss angle.
struct MaterialProps {
  double young_modulus = 0.0;     // [Pa]
  double poisson_ratio = 0.0;     // dimensionless, in [0, 0.5)
  double loss_angle = 0.0;        // dimensionless, >= 0
  double refractive_index = 1.0;  // dimensionless, >= 1
  double density = 0.0;           // [kg/m^3]

  bool operator==(const MaterialProps&) const = default;
};

// One dielectric film of the mirror coating.
struct CoatingLayer {
  MaterialProps material;
  double thickness = 0.0;  // physical thickness [m]

  bool operator==(const CoatingLayer&) const = default;
};

// Full coating description: layers ordered from the incident medium toward
// the substrate, plus the substrate itself.
struct CoatingStack {
  std::vector<CoatingLayer> layers;
  MaterialProps substrate;

  bool operator==(const CoatingStack&) const = default;
};

enum class HrSide { lower, upper };

// The levitated mirror: a small cylinder, coated on one face, with a convex
// high-reflective side facing the lower cavity.
struct MirrorSpec {
  double radius = 0.0;             // cylinder radius [m]
  double aspect_ratio = 0.0;       // diameter / thickness, dimensionless
  double roc = 0.0;                // HR-face radius of curvature [m]; > 0 means convex downward
  CoatingStack coating;
  HrSide hr_side = HrSide::lower;  // which face carries the HR coating
  double absorption = 0.34e-6;     // coating power absorption, dimensionless
  double internal_mode_freq = 3.1e6;  // first internal mechanical mode [Hz]

  bool operator==(const MirrorSpec&) const = default;
};

struct LaserSpec {
  double wavelength = 0.0;      // [m]
  double freq_noise_asd = 0.0;  // laser frequency noise [Hz/sqrt(Hz)], flat
  std::optional<double> rin_asd;  // relative intensity noise [1/sqrt(Hz)];
                                  // absent = assumed shot-noise limited

  bool operator==(const LaserSpec&) const = default;
};

enum class CavityLabel { lower, upper };

struct CavitySpec {
  CavityLabel label = CavityLabel::lower;
  double length = 0.0;            // [m]
  double fixed_mirror_roc = 0.0;  // [m], concave toward the cavity (> 0)
  double coc_distance = 0.0;      // lever arm between centers of curvature [m]
  double finesse = 0.0;           // dimensionless
  double input_power = 0.0;       // [W]
  double detuning_norm = 0.0;     // detuning normalized to the half linewidth, |d| < 1
  std::optional<double> spot_radius;  // beam radius on the levitated mirror [m];
                                      // absent = use the resonator-geometry value

  bool operator==(const CavitySpec&) const = default;
};

struct Environment {
  double temperature = 0.0;            // [K]
  double pressure = 0.0;               // residual gas pressure [Pa]
  double gas_molecule_mass = 4.81e-26; // mean molecular mass [kg]
  double gas_shape_constant = 1.0;     // order-unity shape constant in the gas damping rate
  double seismic_coefficient = 1e-7;   // ground motion ASD numerator [m Hz^(3/2)]
  double suspension_resonance = 1.0;   // isolation stack resonance [Hz]

  bool operator==(const Environment&) const = default;
};

struct SystemConfig {
  MirrorSpec mirror;
  LaserSpec laser;
  CavitySpec lower;
  CavitySpec upper;
  Environment environment;

  bool operator==(const SystemConfig&) const = default;
};

// A single validation failure; validation reports data, it does not throw.
struct Violation {
  std::string code;     // stable machine-readable token, e.g. "mirror.roc.convex"
  std::string message;  // human-readable explanation
};

// Thrown by parse_config on malformed input (syntax, unknown/missing keys,
// bad numbers). Carries a 1-based line and column where that is meaningful.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, int line, int column)
      : std::runtime_error(std::move(msg)), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_ = 0;
  int column_ = 0;
};

// Parses the sectioned key-value format. '#' starts a comment. Unknown
// sections or keys, duplicate keys, non-numeric values (including unit
// suffixes) and missing required keys are errors.
SystemConfig parse_config(const std::string& text);

// Emits a document that parse_config maps back to an identical SystemConfig.
std::string serialize_config(const SystemConfig& config);

// Checks every structural invariant; returns one entry per violation
// (empty = valid). Never throws.
std::vector<Violation> validate(const SystemConfig& config);

// Mirror mass from cylinder geometry: m = rho * pi * r^2 * h with thickness
// h = 2r / aspect_ratio. [kg]
double mirror_mass(const MirrorSpec& mirror);

// The bundled reference design (the two-cavity 0.2 mg configuration).
const std::string& bundled_table1();

// Builds the alternating high/low-index stack used by the reference design:
// n_high layers of the high-index film interleaved with n_low low-index
// films, starting and ending with the high-index film when counts allow.
CoatingStack make_alternating_stack(const MaterialProps& high, double high_thickness,
                                    int high_layers, const MaterialProps& low,
                                    double low_thickness, int low_layers,
                                    const MaterialProps& substrate);

}  // namespace optlev

#endif  // OPTLEV_CONFIG_HPP
