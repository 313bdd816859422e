#ifndef OPTLEV_SEARCH_HPP
#define OPTLEV_SEARCH_HPP

// Feasibility verdict (every design condition normalized to a margin where
// >= 1 passes) and a derivative-free parameter-space search: Latin-hypercube
// seeding followed by compass pattern refinement, deterministic per seed.

#include <cstdint>
#include <string>
#include <vector>

#include "optlev/cavity.hpp"
#include "optlev/config.hpp"
#include "optlev/noise.hpp"
#include "optlev/stability.hpp"

namespace optlev {

struct Constraint {
  std::string id;
  std::string description;
  double value = 0.0;  // margin; >= 1 satisfied
  bool pass = false;
};

struct FeasibilityOptions {
  BudgetOptions budget;
  bool strict_horizontal_damping = false;  // gate the damping sign
  double balance_tolerance = 0.05;   // |residual| allowance
  double dz_floor = 10e-12;          // minimum axial trapping range [m]
  double max_temperature_rise = 20.0;  // [K]
};

// Full per-design evaluation shared by feasibility and the CLI reports.
struct DesignEval {
  double mass = 0.0;  // [kg]
  DerivedPair derived;
  ForceBalance balance;
  StabilityReport stability;
  TrappingRanges ranges;
  BudgetResult budget;  // scalar part only (no grid)
  ThermalLoad thermal;
  double peak_lower = 0.0;   // [W/m^2]
  double peak_upper = 0.0;   // [W/m^2]
  ClippingResult clip_lower;
  ClippingResult clip_upper;
};

struct FeasibilityReport {
  std::vector<Constraint> constraints;  // gated rows, fixed order
  Constraint horizontal_damping;  // surfaced; joins constraints under strict
  bool strict_horizontal_damping = false;
  bool overall = false;       // conjunction of the gated pass flags
  double f_sql = 0.0;         // [Hz]
  double sql_asd = 0.0;       // [m/sqrt(Hz)]
  double classical_margin = 0.0;  // G_SQL / classical total at f_sql
  double coa_ratio = 0.0;         // G_SQL / coating Brownian at f_sql
  double total_violation = 0.0;   // sum over gated rows of max(0, 1 - value)
};

// Throws std::invalid_argument when the config fails validation.
DesignEval evaluate_design(const SystemConfig& config,
                           const FeasibilityOptions& options = {});
FeasibilityReport feasibility(const SystemConfig& config,
                              const FeasibilityOptions& options = {});

// The 18 margin ids in report/trace order (horizontal_damping included).
const std::vector<std::string>& margin_ids();

// Rescales the lower input power so the radiation forces exactly support
// the weight: P_circ_L = (m g + F_U) c / 2.
SystemConfig solve_balance(const SystemConfig& config);

// Scalar config parameters addressable by the search space.
struct ParamAccessor {
  const char* path;  // e.g. "cavity.lower.input_power"
  double (*get)(const SystemConfig&);
  void (*set)(SystemConfig&, double);
};
const std::vector<ParamAccessor>& parameter_registry();
const ParamAccessor* find_parameter(const std::string& path);

struct ParamRange {
  std::string path;
  double lo = 0.0;
  double hi = 0.0;
};

struct SearchSpace {
  std::vector<ParamRange> params;
};

// Same file format as configs, with `<key>_min` / `<key>_max` pairs in the
// owning sections. Throws ParseError on malformed input.
SearchSpace parse_search_space(const std::string& text);

enum class Objective { max_classical_margin, max_coa_ratio, min_fsql };
Objective parse_objective(const std::string& token);
const char* objective_name(Objective objective);

struct OptimizeOptions {
  Objective objective = Objective::max_classical_margin;
  std::uint64_t seed = 7;
  int lhs_samples = 64;
  int max_evaluations = 1500;
  double initial_step = 0.25;  // fraction of each parameter range
  double min_step = 1e-3;
  bool apply_solve_balance = false;
  int threads = 0;  // 0 = hardware concurrency
  FeasibilityOptions feasibility;
};

struct TraceRow {
  int index = 0;                // canonical evaluation order
  std::vector<double> params;   // space.params order
  std::vector<double> margins;  // margin_ids() order; NaN when evaluation threw
  double objective = 0.0;  // objective when feasible, -total_violation otherwise
  bool feasible = false;
};

struct OptimizeResult {
  SystemConfig best;
  FeasibilityReport best_report;
  double best_objective = 0.0;
  bool best_feasible = false;
  std::vector<TraceRow> trace;
  std::vector<std::string> param_names;
};

// Deterministic given options.seed: Latin-hypercube seeding (plus the base
// point clamped into the box) and compass pattern refinement with step
// halving. Candidates are evaluated in parallel; the trace is merged in
// canonical order. An empty space degenerates to a single evaluation of the
// base config.
OptimizeResult optimize(const SystemConfig& base, const SearchSpace& space,
                        const OptimizeOptions& options = {});

}  // namespace optlev

#endif  // OPTLEV_SEARCH_HPP
