#include "optlev/noise.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "optlev/constants.hpp"

namespace optlev {

namespace {

constexpr double kPi = 3.14159265358979323846;

FrequencyGrid make_grid(double f_min, double f_max, int n, GridSpacing spacing) {
  if (!(f_min > 0.0) || !(f_max > f_min) || n < 2) {
    throw std::invalid_argument(
        "frequency grid requires 0 < f_min < f_max and at least 2 points");
  }
  FrequencyGrid grid;
  grid.spacing = spacing;
  grid.points.resize(n);
  if (spacing == GridSpacing::logarithmic) {
    double lo = std::log(f_min), hi = std::log(f_max);
    for (int i = 0; i < n; ++i) {
      grid.points[i] = std::exp(lo + (hi - lo) * i / (n - 1));
    }
    grid.points.front() = f_min;
    grid.points.back() = f_max;
  } else {
    for (int i = 0; i < n; ++i) {
      grid.points[i] = f_min + (f_max - f_min) * i / (n - 1);
    }
  }
  return grid;
}

}  // namespace

FrequencyGrid log_grid(double f_min, double f_max, int n) {
  return make_grid(f_min, f_max, n, GridSpacing::logarithmic);
}

FrequencyGrid linear_grid(double f_min, double f_max, int n) {
  return make_grid(f_min, f_max, n, GridSpacing::linear);
}

const char* noise_source_name(NoiseSource source) {
  switch (source) {
    case NoiseSource::sql: return "sql";
    case NoiseSource::shot: return "shot";
    case NoiseSource::radiation_pressure: return "radiation_pressure";
    case NoiseSource::quantum_total: return "quantum_total";
    case NoiseSource::brownian_substrate: return "brownian_substrate";
    case NoiseSource::brownian_coating: return "brownian_coating";
    case NoiseSource::brownian_total: return "brownian_total";
    case NoiseSource::gas_thermal: return "gas_thermal";
    case NoiseSource::laser_frequency: return "laser_frequency";
    case NoiseSource::laser_intensity: return "laser_intensity";
    case NoiseSource::seismic: return "seismic";
    case NoiseSource::classical_total: return "classical_total";
    case NoiseSource::grand_total: return "grand_total";
  }
  throw std::invalid_argument("unknown noise source");
}

std::complex<double> NoiseModel::chi(double omega) const {
  return 1.0 / std::complex<double>(-mass * omega * omega + k_net,
                                    mass * omega * gamma_net);
}

double NoiseModel::sql(double f) const { return sql_psd(mass, f); }

double NoiseModel::shot(double f) const {
  double omega = 2.0 * kPi * f;
  double rolloff = 1.0 + (2.0 * omega / kappa_lower) * (2.0 * omega / kappa_lower);
  return kConst.hbar * kConst.hbar / s_force * rolloff;
}

double NoiseModel::radiation_pressure(double f) const {
  double omega = 2.0 * kPi * f;
  return s_force * std::norm(chi(omega));
}

double NoiseModel::quantum_total(double f) const {
  return shot(f) + radiation_pressure(f);
}

double NoiseModel::brownian_substrate(double f) const {
  double omega = 2.0 * kPi * f;
  return 4.0 * kConst.k_B * temperature / omega * substrate_coef;
}

double NoiseModel::brownian_coating(double f) const {
  double omega = 2.0 * kPi * f;
  return 4.0 * kConst.k_B * temperature / omega * coating_coef;
}

double NoiseModel::brownian_total(double f) const {
  return brownian_substrate(f) + brownian_coating(f);
}

double NoiseModel::gas_thermal(double f) const {
  double omega = 2.0 * kPi * f;
  double gamma_ang = 2.0 * kPi * gamma_gas_hz;
  return 4.0 * kConst.k_B * temperature * mass * gamma_ang * std::norm(chi(omega));
}

double NoiseModel::laser_frequency(double f) const {
  (void)f;
  return freq_noise_asd * freq_noise_asd;
}

double NoiseModel::laser_intensity(double f) const {
  if (!has_rin) return 0.0;
  double omega = 2.0 * kPi * f;
  return intensity_force_asd * intensity_force_asd * std::norm(chi(omega));
}

double NoiseModel::seismic(double f) const {
  double asd = seismic_coef / (f * f);
  if (f > suspension_f0) {
    double t = suspension_f0 / f;
    asd *= t * t;
  }
  return asd * asd;
}

double NoiseModel::classical_total(double f) const {
  return brownian_total(f) + gas_thermal(f) + laser_frequency(f) +
         laser_intensity(f) + seismic(f);
}

double NoiseModel::grand_total(double f) const {
  return quantum_total(f) + classical_total(f);
}

double NoiseModel::psd(NoiseSource source, double f) const {
  switch (source) {
    case NoiseSource::sql: return sql(f);
    case NoiseSource::shot: return shot(f);
    case NoiseSource::radiation_pressure: return radiation_pressure(f);
    case NoiseSource::quantum_total: return quantum_total(f);
    case NoiseSource::brownian_substrate: return brownian_substrate(f);
    case NoiseSource::brownian_coating: return brownian_coating(f);
    case NoiseSource::brownian_total: return brownian_total(f);
    case NoiseSource::gas_thermal: return gas_thermal(f);
    case NoiseSource::laser_frequency: return laser_frequency(f);
    case NoiseSource::laser_intensity: return laser_intensity(f);
    case NoiseSource::seismic: return seismic(f);
    case NoiseSource::classical_total: return classical_total(f);
    case NoiseSource::grand_total: return grand_total(f);
  }
  throw std::invalid_argument("unknown noise source");
}

NoiseModel make_noise_model(const SystemConfig& config, const DerivedPair& derived,
                            const BudgetOptions& options) {
  NoiseModel m;
  m.mass = mirror_mass(config.mirror);
  m.temperature = config.environment.temperature;

  VerticalSpring lower = vertical_optical_spring(config.lower, derived.lower, m.mass,
                                                 config.laser.wavelength, 0.0);
  VerticalSpring upper = vertical_optical_spring(config.upper, derived.upper, m.mass,
                                                 config.laser.wavelength, 0.0);
  m.k_net = lower.spring_constant + upper.spring_constant;
  m.gamma_net = lower.damping_rate + upper.damping_rate;

  double omega_l = 2.0 * kPi * kConst.c / config.laser.wavelength;
  m.s_force = 16.0 * kConst.hbar * omega_l * derived.lower.circulating_power *
              config.lower.finesse / (kPi * kConst.c * kConst.c);
  m.kappa_lower = derived.lower.linewidth_fwhm;

  // Brownian coefficients against the lower-cavity readout spot.
  const MaterialProps& sub = config.mirror.coating.substrate;
  double w = derived.lower.spot_radius_used;
  m.substrate_coef = sub.loss_angle * (1.0 - sub.poisson_ratio * sub.poisson_ratio) /
                     (std::sqrt(kPi) * w * sub.young_modulus);

  // Group coating layers by material (first-seen order), d = total group
  // thickness.
  std::vector<std::pair<const MaterialProps*, double>> groups;
  for (const CoatingLayer& layer : config.mirror.coating.layers) {
    bool found = false;
    for (auto& group : groups) {
      if (*group.first == layer.material) {
        group.second += layer.thickness;
        found = true;
        break;
      }
    }
    if (!found) groups.emplace_back(&layer.material, layer.thickness);
  }
  double coa = 0.0;
  for (const auto& [mat, d] : groups) {
    double yc = mat->young_modulus, nc = mat->poisson_ratio;
    double ys = sub.young_modulus, ns = sub.poisson_ratio;
    double one_minus_2nc = 1.0 - 2.0 * nc;
    if (options.bracket == CoatingBracket::squared) {
      one_minus_2nc *= one_minus_2nc;
    }
    double num = yc * yc * (1.0 + ns) * (1.0 + ns) * (1.0 - 2.0 * ns) * (1.0 - 2.0 * ns) +
                 ys * ys * (1.0 + nc) * (1.0 + nc) * one_minus_2nc;
    double den = ys * ys * yc * (1.0 - nc * nc);
    coa += d * mat->loss_angle / (kPi * w * w) * (num / den);
  }
  m.coating_coef = coa;

  m.gamma_gas_hz = gas_damping_rate(config.environment, config.mirror);
  m.freq_noise_asd = config.lower.length * config.laser.freq_noise_asd *
                     config.laser.wavelength / kConst.c;
  m.required_rin = required_rin(config.laser.wavelength, config.lower.input_power);
  m.has_rin = config.laser.rin_asd.has_value();
  if (m.has_rin) {
    m.intensity_force_asd =
        *config.laser.rin_asd * 2.0 * derived.lower.circulating_power / kConst.c;
  }
  m.seismic_coef = config.environment.seismic_coefficient;
  m.suspension_f0 = config.environment.suspension_resonance;
  m.internal_mode_freq = config.mirror.internal_mode_freq;
  return m;
}

double sql_psd(double mass, double f) {
  double omega = 2.0 * kPi * f;
  return 2.0 * kConst.hbar / (mass * omega * omega);
}

double f_sql_approx(double finesse_lower, double wavelength) {
  return std::sqrt(16.0 * kConst.g_acc * finesse_lower / wavelength) / (2.0 * kPi);
}

double intersect_frequency(const std::function<double(double)>& lhs,
                           const std::function<double(double)>& rhs,
                           double f_lo, double f_hi) {
  if (!(f_lo > 0.0) || !(f_hi > f_lo)) {
    throw std::invalid_argument("intersection bracket requires 0 < f_lo < f_hi");
  }
  if (!(lhs(f_lo) > rhs(f_lo)) || !(lhs(f_hi) < rhs(f_hi))) {
    throw std::domain_error("curves do not intersect within the frequency band");
  }
  double lo = f_lo, hi = f_hi;
  for (int i = 0; i < 200; ++i) {
    double mid = std::sqrt(lo * hi);
    if (lhs(mid) > rhs(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::sqrt(lo * hi);
}

double f_sql_full(const NoiseModel& model, double f_lo, double f_hi) {
  return intersect_frequency([&](double f) { return model.radiation_pressure(f); },
                             [&](double f) { return model.shot(f); }, f_lo, f_hi);
}

double f_sql_ideal(double s_force, double mass) {
  return std::sqrt(s_force / (mass * kConst.hbar)) / (2.0 * kPi);
}

double gas_damping_rate(const Environment& env, const MirrorSpec& mirror) {
  double face_area = kPi * mirror.radius * mirror.radius;
  double mass = mirror_mass(mirror);
  return face_area * env.pressure / (env.gas_shape_constant * mass) *
         std::sqrt(env.gas_molecule_mass / (kConst.k_B * env.temperature));
}

double required_rin(double wavelength, double input_power) {
  double omega_l = 2.0 * kPi * kConst.c / wavelength;
  return std::sqrt(2.0 * kConst.hbar * omega_l / input_power);
}

const NoiseSpectrum& BudgetResult::of(NoiseSource source) const {
  return spectra.at(static_cast<size_t>(source));
}

namespace {

BudgetResult assemble_budget(const SystemConfig& config, const FrequencyGrid* grid,
                             const BudgetOptions& options) {
  DerivedPair derived = derive_pair(config);
  NoiseModel model = make_noise_model(config, derived, options);

  BudgetResult result;
  result.f_sql_approx = f_sql_approx(config.lower.finesse, config.laser.wavelength);
  result.f_sql_full = f_sql_full(model);
  double fs = result.f_sql_full;
  result.sql_asd_at_fsql = std::sqrt(model.sql(fs));
  result.margin_at_fsql = model.sql(fs) / model.classical_total(fs);
  result.coa_ratio = model.sql(fs) / model.brownian_coating(fs);
  result.required_rin = model.required_rin;
  result.brownian_valid_max_hz = model.internal_mode_freq / 3.0;

  try {
    result.brownian_sql_crossing =
        intersect_frequency([&](double f) { return model.sql(f); },
                            [&](double f) { return model.brownian_total(f); }, 1.0,
                            1e9);
  } catch (const std::domain_error&) {
    result.brownian_sql_crossing = std::numeric_limits<double>::quiet_NaN();
  }

  StabilityReport stab =
      stability_report(config, derived, {}, options.roc_convention, false);
  result.stability_warning = !stab.passes;

  if (grid != nullptr) {
    result.grid = *grid;
    result.spectra.reserve(kNoiseSourceCount);
    for (int s = 0; s < kNoiseSourceCount; ++s) {
      NoiseSpectrum spectrum;
      spectrum.source = static_cast<NoiseSource>(s);
      spectrum.grid = *grid;
      spectrum.psd.reserve(grid->points.size());
      for (double f : grid->points) {
        spectrum.psd.push_back(model.psd(spectrum.source, f));
      }
      result.spectra.push_back(std::move(spectrum));
    }
  }
  return result;
}

}  // namespace

BudgetResult total_budget(const SystemConfig& config, const FrequencyGrid& grid,
                          const BudgetOptions& options) {
  return assemble_budget(config, &grid, options);
}

BudgetResult budget_scalars(const SystemConfig& config, const BudgetOptions& options) {
  return assemble_budget(config, nullptr, options);
}

}  // namespace optlev
