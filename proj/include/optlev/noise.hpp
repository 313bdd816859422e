#ifndef OPTLEV_NOISE_HPP
#define OPTLEV_NOISE_HPP

// Displacement-noise budget: the SQL, quantum (shot + radiation-pressure)
// noise of the lower-cavity readout, Brownian (substrate + coating) noise,
// residual-gas thermal noise, laser frequency/intensity noise, seismic
// noise, the SQL-reaching frequency, and the margin ratios.

#include <complex>
#include <functional>
#include <vector>

#include "optlev/cavity.hpp"
#include "optlev/config.hpp"
#include "optlev/stability.hpp"

namespace optlev {

enum class GridSpacing { logarithmic, linear };

struct FrequencyGrid {
  std::vector<double> points;  // [Hz], strictly increasing, all positive
  GridSpacing spacing = GridSpacing::logarithmic;
};

// Throw std::invalid_argument on a degenerate band.
FrequencyGrid log_grid(double f_min, double f_max, int n);
FrequencyGrid linear_grid(double f_min, double f_max, int n);

// Declaration order fixes the CSV column order.
enum class NoiseSource {
  sql,
  shot,
  radiation_pressure,
  quantum_total,
  brownian_substrate,
  brownian_coating,
  brownian_total,
  gas_thermal,
  laser_frequency,
  laser_intensity,
  seismic,
  classical_total,
  grand_total,
};
inline constexpr int kNoiseSourceCount = 13;
const char* noise_source_name(NoiseSource source);

struct NoiseSpectrum {
  NoiseSource source = NoiseSource::sql;
  FrequencyGrid grid;
  std::vector<double> psd;  // [m^2/Hz], single-sided
};

// Which exponent the (1 - 2 nu_c) factor of the coating bracket carries.
// The squared variant is the default; the printed variant reproduces the
// source formula verbatim. See README for the numerical consequences.
enum class CoatingBracket { squared, printed };

struct BudgetOptions {
  CoatingBracket bracket = CoatingBracket::squared;
  RocConvention roc_convention = RocConvention::signed_roc;
};

// All closed-form PSD evaluators for one configuration, built once and
// shared by grid assembly and the scalar queries (f_sql, margins,
// crossings). Every psd method returns m^2/Hz at frequency f in Hz.
struct NoiseModel {
  double mass = 0.0;             // [kg]
  double temperature = 0.0;      // [K]
  double k_net = 0.0;            // net vertical spring [N/m]
  double gamma_net = 0.0;        // net vertical damping [1/s]
  double s_force = 0.0;          // quantum force PSD S_F [N^2/Hz]
  double kappa_lower = 0.0;      // lower-cavity linewidth [rad/s]
  double substrate_coef = 0.0;   // Brownian PSD = (4 k_B T / omega) * coef
  double coating_coef = 0.0;
  double gamma_gas_hz = 0.0;     // residual-gas damping, Hz figure
  double freq_noise_asd = 0.0;   // flat displacement ASD [m/sqrt(Hz)]
  double intensity_force_asd = 0.0;  // [N/sqrt(Hz)], 0 without rin_asd
  bool has_rin = false;
  double required_rin = 0.0;     // shot-equivalent RIN [1/sqrt(Hz)]
  double seismic_coef = 0.0;     // [m Hz^(3/2)]
  double suspension_f0 = 0.0;    // [Hz]
  double internal_mode_freq = 0.0;  // [Hz]

  std::complex<double> chi(double omega) const;  // 1/(-m w^2 + K_z(w))

  double sql(double f) const;
  double shot(double f) const;
  double radiation_pressure(double f) const;
  double quantum_total(double f) const;
  double brownian_substrate(double f) const;
  double brownian_coating(double f) const;
  double brownian_total(double f) const;
  double gas_thermal(double f) const;
  double laser_frequency(double f) const;
  double laser_intensity(double f) const;
  double seismic(double f) const;
  double classical_total(double f) const;
  double grand_total(double f) const;
  double psd(NoiseSource source, double f) const;
};

NoiseModel make_noise_model(const SystemConfig& config, const DerivedPair& derived,
                            const BudgetOptions& options = {});

// SQL displacement PSD G_SQL(f) = 2 hbar / (m (2 pi f)^2). [m^2/Hz]
double sql_psd(double mass, double f);

// Approximate SQL-reaching frequency, (1/2pi) sqrt(16 g F / lambda). [Hz]
double f_sql_approx(double finesse_lower, double wavelength);

// Frequency where lhs(f) = rhs(f), found by bisection in log f to ~1e-13
// relative. Requires lhs > rhs at f_lo and lhs < rhs at f_hi; throws
// std::domain_error otherwise (no intersection in band).
double intersect_frequency(const std::function<double(double)>& lhs,
                           const std::function<double(double)>& rhs,
                           double f_lo, double f_hi);

// Shot / radiation-pressure intersection of the full model. [Hz]
double f_sql_full(const NoiseModel& model, double f_lo = 1.0, double f_hi = 1e8);

// Below-pole free-mass closed form (1/2pi) sqrt(S_F / (m hbar)). [Hz]
double f_sql_ideal(double s_force, double mass);

// Residual-gas damping rate S P / (C m) sqrt(m_mol / (k_B T)), quoted in
// Hz; S = pi r^2 is the single-side face area. The thermal-noise PSD uses
// the angular rate 2 pi times this figure.
double gas_damping_rate(const Environment& env, const MirrorSpec& mirror);

// Shot-noise-equivalent relative intensity noise sqrt(2 hbar w_l / P_in).
double required_rin(double wavelength, double input_power);

struct BudgetResult {
  FrequencyGrid grid;
  std::vector<NoiseSpectrum> spectra;  // one per source, declaration order
  double f_sql_full = 0.0;       // [Hz]
  double f_sql_approx = 0.0;     // [Hz]
  double sql_asd_at_fsql = 0.0;  // [m/sqrt(Hz)]
  double margin_at_fsql = 0.0;   // G_SQL / classical_total at f_sql
  double coa_ratio = 0.0;        // G_SQL / coating Brownian at f_sql
  double brownian_sql_crossing = 0.0;  // [Hz], NaN when no crossing in band
  double required_rin = 0.0;     // [1/sqrt(Hz)]
  double brownian_valid_max_hz = 0.0;  // internal_mode_freq / 3
  bool stability_warning = false;      // stability gate failed (computed anyway)

  const NoiseSpectrum& of(NoiseSource source) const;
};

// Assembles every spectrum over the grid plus the scalar summary. The grid
// may be empty (spectra skipped, scalars still computed).
BudgetResult total_budget(const SystemConfig& config, const FrequencyGrid& grid,
                          const BudgetOptions& options = {});
BudgetResult budget_scalars(const SystemConfig& config,
                            const BudgetOptions& options = {});

}  // namespace optlev

#endif  // OPTLEV_NOISE_HPP
