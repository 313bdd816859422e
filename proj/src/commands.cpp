#include "optlev/commands.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "optlev/cavity.hpp"
#include "optlev/config.hpp"
#include "optlev/constants.hpp"
#include "optlev/report.hpp"

namespace optlev {

namespace {

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return std::string(buf);
}

struct Prepared {
  std::string source;  // "<bundled>" or the file path
  std::string bytes;
  SystemConfig config;
  std::string digest;
  FeasibilityOptions fopts;
};

Prepared prepare(const CommonOptions& common) {
  Prepared p;
  if (common.config_path.empty()) {
    p.source = "<bundled>";
    p.bytes = bundled_table1();
  } else {
    p.source = common.config_path;
    p.bytes = read_text_file(common.config_path);
  }
  p.config = parse_config(p.bytes);
  p.digest = hex_digest(fnv1a64(p.bytes));
  if (common.solve_balance) {
    p.config = solve_balance(p.config);
  }
  p.fopts.budget.bracket = common.bracket;
  p.fopts.budget.roc_convention = common.roc_convention;
  p.fopts.strict_horizontal_damping = common.strict_horizontal_damping;
  return p;
}

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  return (std::filesystem::path(dir) / name).string();
}

void ensure_out_dir(const std::string& dir) {
  if (!dir.empty() && dir != ".") {
    std::filesystem::create_directories(dir);
  }
}

RunManifest make_manifest(const std::string& command, const Prepared& p,
                          std::vector<std::string> outputs) {
  RunManifest m;
  m.command = command;
  m.config_digest = p.digest;
  m.timestamp_utc = utc_timestamp();
  m.outputs = std::move(outputs);
  return m;
}

// Prints the violations one per line; returns true when any exist.
bool report_violations(const SystemConfig& config) {
  std::vector<Violation> violations = validate(config);
  if (violations.empty()) return false;
  std::fprintf(stdout, "validation failed (%zu violation%s):\n",
               violations.size(), violations.size() == 1 ? "" : "s");
  for (const Violation& v : violations) {
    std::fprintf(stdout, "%s: %s\n", v.code.c_str(), v.message.c_str());
  }
  return true;
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

const char* bound_name(TrapBound bound) {
  switch (bound) {
    case TrapBound::detuning: return "detuning";
    case TrapBound::geometric: return "geometric";
    case TrapBound::mode_match: return "mode-match";
  }
  return "?";
}

void emit(const std::string& text, const std::string& path) {
  std::fputs(text.c_str(), stdout);
  write_text_file(path, text);
}

}  // namespace

// ---------------------------------------------------------------------------
// validate

int cmd_validate(const CommonOptions& common) {
  Prepared p = prepare(common);
  if (report_violations(p.config)) return 1;
  std::fprintf(stdout, "ok: %s (digest %s)\n", p.source.c_str(),
               p.digest.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// budget

int cmd_budget(const CommonOptions& common, const BudgetArgs& args) {
  Prepared p = prepare(common);
  if (report_violations(p.config)) return 1;

  FrequencyGrid grid = args.linear
                           ? linear_grid(args.f_min, args.f_max, args.points)
                           : log_grid(args.f_min, args.f_max, args.points);
  BudgetResult budget = total_budget(p.config, grid, p.fopts.budget);
  DerivedPair derived = derive_pair(p.config);
  NoiseModel model = make_noise_model(p.config, derived, p.fopts.budget);

  std::string text = fmt("noise budget (%s)\n", p.source.c_str());
  text += fmt("  %-26s%s  (approx %s)\n", "f_sql",
              eng(budget.f_sql_full, "Hz").c_str(),
              eng(budget.f_sql_approx, "Hz").c_str());
  text += fmt("  %-26s%s\n", "sql asd at f_sql",
              sci(budget.sql_asd_at_fsql, "m/rtHz").c_str());
  text += fmt("  %-26s%.4f\n", "classical margin at f_sql",
              budget.margin_at_fsql);
  text += fmt("  %-26s%.4f\n", "coating ratio at f_sql", budget.coa_ratio);
  if (std::isfinite(budget.brownian_sql_crossing)) {
    text += fmt("  %-26s%s\n", "brownian/sql crossing",
                eng(budget.brownian_sql_crossing, "Hz").c_str());
  } else {
    text += fmt("  %-26s%s\n", "brownian/sql crossing", "none in band");
  }
  text += fmt("  %-26s%s\n", "required rin",
              sci(budget.required_rin, "/rtHz").c_str());
  text += fmt("  %-26s%s\n", "brownian model valid to",
              eng(budget.brownian_valid_max_hz, "Hz").c_str());
  text += "  asd at f_sql [m/rtHz]:\n";
  for (int i = 0; i < kNoiseSourceCount; ++i) {
    NoiseSource source = static_cast<NoiseSource>(i);
    text += fmt("    %-22s%s\n", noise_source_name(source),
                sci(std::sqrt(model.psd(source, budget.f_sql_full)), "").c_str());
  }
  if (budget.stability_warning) {
    text += "  warning: stability gate fails for this configuration\n";
  }

  ensure_out_dir(common.out_dir);
  write_spectra_csv(join_path(common.out_dir, args.csv_name), budget);
  emit(text, join_path(common.out_dir, "budget.txt"));
  write_manifest(join_path(common.out_dir, "manifest.json"),
                 make_manifest("budget", p, {args.csv_name, "budget.txt"}));
  return 0;
}

// ---------------------------------------------------------------------------
// stability

int cmd_stability(const CommonOptions& common) {
  Prepared p = prepare(common);
  if (report_violations(p.config)) return 1;

  DerivedPair derived = derive_pair(p.config);
  StabilityReport rep =
      stability_report(p.config, derived, StabilityBand{},
                       common.roc_convention, common.strict_horizontal_damping);
  ForceBalance balance = force_balance(p.config, derived);
  TrappingRanges ranges = trapping_ranges(p.config, derived);
  StiffnessMatrix dc =
      stiffness_matrix(p.config, derived, 0.0, common.roc_convention);

  std::string text = fmt("stability report (%s)\n", p.source.c_str());
  text += fmt("  force balance: weight %s, lower %s, upper %s, residual %.4e\n",
              eng(balance.weight, "N").c_str(),
              eng(balance.lower_force, "N").c_str(),
              eng(balance.upper_force, "N").c_str(), balance.residual);
  text += "  stiffness at dc:\n";
  text += fmt("    %-12s%s\n", "horizontal",
              sci(dc.horizontal.real_part, "N/m").c_str());
  text += fmt("    %-12s%s\n", "vertical",
              sci(dc.vertical.real_part, "N/m").c_str());
  text += fmt("    %-12s%s\n", "rotational",
              sci(dc.rotational.real_part, "N m/rad").c_str());
  if (rep.has_resonance) {
    double omega = 2.0 * 3.14159265358979323846 * rep.f_res;
    StiffnessMatrix at_res =
        stiffness_matrix(p.config, derived, omega, common.roc_convention);
    text += fmt("  stiffness at resonance (%s):\n", eng(rep.f_res, "Hz").c_str());
    text += fmt("    %-12s%s + i %s\n", "horizontal",
                sci(at_res.horizontal.real_part, "").c_str(),
                sci(at_res.horizontal.imag_part, "N/m").c_str());
    text += fmt("    %-12s%s + i %s\n", "vertical",
                sci(at_res.vertical.real_part, "").c_str(),
                sci(at_res.vertical.imag_part, "N/m").c_str());
    text += fmt("    %-12s%s\n", "rotational",
                sci(at_res.rotational.real_part, "N m/rad").c_str());
  } else {
    text += "  no vertical spring resonance (net spring not restoring)\n";
  }
  text += fmt("  net vertical damping    %s\n",
              sci(rep.vertical_damping, "1/s").c_str());
  text += fmt("  horizontal damping coef %s\n",
              sci(rep.horizontal_damping_coef, "N s/m").c_str());
  text += "  trapping ranges:\n";
  text += fmt("    %-12s%s\n", "axial", eng(ranges.axial_bound, "m").c_str());
  text += fmt("    %-12s%s  (binding: %s)\n", "lateral",
              eng(ranges.lateral_bound, "m").c_str(),
              bound_name(ranges.lateral_binding));
  text += fmt("    %-12s%s detuning, %s geometric, %s mode-match\n", "",
              eng(ranges.lateral_detuning, "m").c_str(),
              eng(ranges.lateral_geometric, "m").c_str(),
              eng(ranges.lateral_mode_match, "m").c_str());
  text += "  gates:\n";
  text += fmt("    %-28s%s\n", "vertical spring + damping",
              yesno(rep.vertical_ok));
  text += fmt("    %-28s%s\n", "horizontal spring",
              yesno(rep.horizontal_real_ok));
  text += fmt("    %-28s%s%s\n", "horizontal damping sign",
              yesno(rep.horizontal_damping_positive),
              common.strict_horizontal_damping ? " (gated)" : " (not gated)");
  text += fmt("    %-28s%s\n", "rotational", yesno(rep.rotational_ok));
  text += fmt("    %-28s%s\n", "adiabatic validity", yesno(rep.adiabatic_valid));
  text += fmt("  overall: %s\n", rep.passes ? "PASS" : "FAIL");

  ensure_out_dir(common.out_dir);
  emit(text, join_path(common.out_dir, "stability.txt"));
  write_manifest(join_path(common.out_dir, "manifest.json"),
                 make_manifest("stability", p, {"stability.txt"}));
  return rep.passes ? 0 : 1;
}

// ---------------------------------------------------------------------------
// feasibility

int cmd_feasibility(const CommonOptions& common) {
  Prepared p = prepare(common);
  if (report_violations(p.config)) return 1;

  FeasibilityReport rep = feasibility(p.config, p.fopts);

  std::string text = fmt("feasibility report (%s)\n", p.source.c_str());
  text += fmt("  %-22s%12s  %-4s  %s\n", "constraint", "margin", "pass",
              "description");
  for (const Constraint& c : rep.constraints) {
    text += fmt("  %-22s%12.5g  %-4s  %s\n", c.id.c_str(), c.value,
                yesno(c.pass), c.description.c_str());
  }
  if (!rep.strict_horizontal_damping) {
    text += fmt("  %-22s%12.5g  %-4s  %s (not gated)\n",
                rep.horizontal_damping.id.c_str(), rep.horizontal_damping.value,
                yesno(rep.horizontal_damping.pass),
                rep.horizontal_damping.description.c_str());
  }
  text += fmt("  f_sql %s, sql asd %s\n", eng(rep.f_sql, "Hz").c_str(),
              sci(rep.sql_asd, "m/rtHz").c_str());
  text += fmt("  classical margin %.4f, coating ratio %.4f\n",
              rep.classical_margin, rep.coa_ratio);
  text += fmt("  overall: %s\n", rep.overall ? "FEASIBLE" : "INFEASIBLE");

  ensure_out_dir(common.out_dir);
  emit(text, join_path(common.out_dir, "feasibility.txt"));
  write_manifest(join_path(common.out_dir, "manifest.json"),
                 make_manifest("feasibility", p, {"feasibility.txt"}));
  return rep.overall ? 0 : 1;
}

// ---------------------------------------------------------------------------
// optimize

int cmd_optimize(const CommonOptions& common, const OptimizeArgs& args) {
  Prepared p = prepare(common);
  if (report_violations(p.config)) return 1;

  SearchSpace space = parse_search_space(read_text_file(args.space_path));

  OptimizeOptions oopts;
  oopts.objective = parse_objective(args.objective);
  oopts.seed = common.seed;
  oopts.lhs_samples = args.lhs_samples;
  oopts.max_evaluations = args.max_evaluations;
  oopts.threads = args.threads;
  oopts.apply_solve_balance = common.solve_balance;
  oopts.feasibility = p.fopts;

  OptimizeResult result = optimize(p.config, space, oopts);

  std::string text = fmt("optimize (%s, space %s)\n", p.source.c_str(),
                         args.space_path.c_str());
  text += fmt("  %-18s%s\n", "objective", objective_name(oopts.objective));
  text += fmt("  %-18s%llu\n", "seed",
              static_cast<unsigned long long>(oopts.seed));
  text += fmt("  %-18s%zu\n", "evaluations", result.trace.size());
  text += fmt("  %-18s%.8e\n", "best objective", result.best_objective);
  text += fmt("  %-18s%s\n", "best feasible", yesno(result.best_feasible));
  text += "  best parameters:\n";
  for (std::size_t i = 0; i < result.param_names.size(); ++i) {
    const ParamAccessor* accessor = find_parameter(result.param_names[i]);
    text += fmt("    %-32s%.17g\n", result.param_names[i].c_str(),
                accessor->get(result.best));
  }
  text += fmt("  best: f_sql %s, classical margin %.4f, coating ratio %.4f\n",
              eng(result.best_report.f_sql, "Hz").c_str(),
              result.best_report.classical_margin, result.best_report.coa_ratio);

  ensure_out_dir(common.out_dir);
  write_trace_csv(join_path(common.out_dir, args.trace_name), result);
  write_text_file(join_path(common.out_dir, "best_config.txt"),
                  serialize_config(result.best));
  emit(text, join_path(common.out_dir, "optimize.txt"));
  write_manifest(
      join_path(common.out_dir, "manifest.json"),
      make_manifest("optimize", p,
                    {args.trace_name, "best_config.txt", "optimize.txt"}));
  return result.best_feasible ? 0 : 1;
}

// ---------------------------------------------------------------------------
// reproduce

namespace {

struct ReproRow {
  std::string id;
  std::string computed;
  std::string expected;
  bool pass = false;
};

std::string pct(double tol) { return fmt("+-%g%%", tol * 100.0); }

// |computed/expected - 1| <= tol
void add_rel(std::vector<ReproRow>& rows, const char* id, double computed,
             double expected, double tol, const char* unit) {
  bool ok = std::isfinite(computed) &&
            std::fabs(computed / expected - 1.0) <= tol;
  rows.push_back({id, sci(computed, unit),
                  sci(expected, unit) + " " + pct(tol), ok});
}

void add_below(std::vector<ReproRow>& rows, const char* id, double computed,
               double limit, const char* unit) {
  bool ok = std::isfinite(computed) && computed <= limit;
  rows.push_back({id, sci(computed, unit), "<= " + sci(limit, unit), ok});
}

void add_range(std::vector<ReproRow>& rows, const char* id, double computed,
               double lo, double hi, const char* unit) {
  bool ok = std::isfinite(computed) && computed >= lo && computed <= hi;
  rows.push_back({id, sci(computed, unit),
                  "in [" + sci(lo, "") + ", " + sci(hi, "") + "] " + unit, ok});
}

void add_flag(std::vector<ReproRow>& rows, const char* id, bool computed,
              const char* computed_text, const char* expected_text) {
  rows.push_back({id, computed_text, expected_text, computed});
}

// Worst relative deviation of the coating ratio from the 1/(s sqrt(t))
// scaling prediction over radius factors s and finesse factors t in
// {1/2, 2}, with spot sizes scaled with the radius and the upper power
// scaled to keep the force balance shape.
double scaling_max_deviation(const SystemConfig& base,
                             const BudgetOptions& options) {
  double base_ratio = budget_scalars(solve_balance(base), options).coa_ratio;
  double worst = 0.0;
  for (double s : {0.5, 2.0}) {
    for (double t : {0.5, 2.0}) {
      SystemConfig scaled = base;
      scaled.mirror.radius *= s;
      if (scaled.lower.spot_radius) {
        scaled.lower.spot_radius = *scaled.lower.spot_radius * s;
      }
      if (scaled.upper.spot_radius) {
        scaled.upper.spot_radius = *scaled.upper.spot_radius * s;
      }
      scaled.lower.finesse *= t;
      scaled.upper.finesse *= t;
      scaled.upper.input_power *= s * s * s / t;
      double ratio = budget_scalars(solve_balance(scaled), options).coa_ratio;
      double predicted = base_ratio / (s * std::sqrt(t));
      worst = std::max(worst, std::fabs(ratio / predicted - 1.0));
    }
  }
  return worst;
}

// Deterministic repeat check: assembles the spectra CSV and a small
// optimizer run twice in-process and compares the bytes.
bool repeat_identical(const SystemConfig& config) {
  FrequencyGrid grid = log_grid(10.0, 1e6, 101);
  std::string csv_a = spectra_csv(total_budget(config, grid));
  std::string csv_b = spectra_csv(total_budget(config, grid));
  if (csv_a != csv_b) return false;

  SearchSpace space;
  space.params.push_back({"cavity.lower.input_power",
                          config.lower.input_power * 0.8,
                          config.lower.input_power * 1.2});
  space.params.push_back({"cavity.upper.detuning_norm", 0.010, 0.026});
  OptimizeOptions oopts;
  oopts.lhs_samples = 8;
  oopts.max_evaluations = 32;
  std::string trace_a = trace_csv(optimize(config, space, oopts));
  std::string trace_b = trace_csv(optimize(config, space, oopts));
  return trace_a == trace_b;
}

}  // namespace

int cmd_reproduce(const CommonOptions& common) {
  if (!common.config_path.empty()) {
    std::fprintf(stderr,
                 "note: reproduce always evaluates the bundled reference "
                 "design; --config ignored\n");
  }
  CommonOptions defaults;
  defaults.out_dir = common.out_dir;
  Prepared p = prepare(defaults);

  DesignEval eval = evaluate_design(p.config, p.fopts);
  NoiseModel model = make_noise_model(p.config, eval.derived, p.fopts.budget);
  double fsql = eval.budget.f_sql_full;

  std::vector<ReproRow> rows;

  add_rel(rows, "c1.mass", eval.mass, 2.0e-7, 0.02, "kg");
  add_rel(rows, "c1.circulating_lower", eval.derived.lower.circulating_power,
          420.0, 0.03, "W");
  add_rel(rows, "c1.circulating_upper", eval.derived.upper.circulating_power,
          130.0, 0.03, "W");
  add_below(rows, "c1.balance_residual", std::fabs(eval.balance.residual),
            0.05, "");

  add_rel(rows, "c2.fsql_approx", eval.budget.f_sql_approx, 19.3e3, 0.01, "Hz");
  add_rel(rows, "c2.fsql_full", fsql, 23.0e3, 0.10, "Hz");
  add_rel(rows, "c2.sql_asd", eval.budget.sql_asd_at_fsql, 2.2e-19, 0.05,
          "m/rtHz");

  add_below(rows, "c3.shot_eq_rp",
            std::fabs(model.shot(fsql) / model.radiation_pressure(fsql) - 1.0),
            1e-6, "");
  add_below(rows, "c3.quantum_touches_sql",
            std::fabs(model.quantum_total(fsql) / model.sql(fsql) - 1.0), 1e-2,
            "");

  add_rel(rows, "c4.brownian_asd", std::sqrt(model.brownian_total(fsql)),
          1.2e-19, 0.10, "m/rtHz");
  add_flag(rows, "c4.brownian_below_sql",
           model.brownian_total(fsql) < model.sql(fsql), "below", "below sql");
  add_range(rows, "c4.sql_crossing", eval.budget.brownian_sql_crossing, 9.0e4,
            1.1e5, "Hz");

  add_flag(rows, "c5.vertical_spring", eval.stability.vertical_spring > 0.0,
           sci(eval.stability.vertical_spring, "N/m").c_str(), "> 0");
  add_range(rows, "c5.resonance", eval.stability.f_res, 170.0, 680.0, "Hz");

  add_flag(rows, "c6.horizontal_sign", eval.stability.horizontal_spring > 0.0,
           sci(eval.stability.horizontal_spring, "N/m").c_str(), "> 0");
  add_rel(rows, "c6.horizontal_spring", eval.stability.horizontal_spring,
          1.1e-4, 0.10, "N/m");

  add_rel(rows, "c7.axial_range", eval.ranges.axial_bound, 50e-12, 0.20, "m");
  add_rel(rows, "c7.lateral_range", eval.ranges.lateral_bound, 0.6e-6, 0.25,
          "m");
  add_flag(rows, "c7.lateral_binding",
           eval.ranges.lateral_binding == TrapBound::detuning,
           bound_name(eval.ranges.lateral_binding), "detuning");

  add_rel(rows, "c8.gas_damping", model.gamma_gas_hz, 7e-8, 0.30, "Hz");
  add_below(rows, "c8.gas_asd", std::sqrt(model.gas_thermal(fsql)), 1e-21,
            "m/rtHz");
  add_flag(rows, "c8.freq_below_brownian",
           model.laser_frequency(fsql) < model.brownian_total(fsql),
           sci(std::sqrt(model.laser_frequency(fsql)), "m/rtHz").c_str(),
           "below brownian");
  add_below(rows, "c8.seismic_asd", std::sqrt(model.seismic(fsql)), 1e-23,
            "m/rtHz");
  add_rel(rows, "c8.peak_lower", eval.peak_lower / 1e9, 14.0, 0.10, "kW/mm^2");
  add_rel(rows, "c8.peak_upper", eval.peak_upper / 1e9, 2.3, 0.10, "kW/mm^2");
  add_below(rows, "c8.damage_margin",
            std::max(eval.peak_lower, eval.peak_upper), kDamageThreshold,
            "W/m^2");
  add_below(rows, "c8.absorbed_power", eval.thermal.absorbed_power, 0.15e-3,
            "W");
  add_below(rows, "c8.temperature_rise", eval.thermal.temperature_rise, 20.0,
            "K");

  add_below(rows, "c9.scaling_deviation",
            scaling_max_deviation(p.config, p.fopts.budget), 0.05, "");

  double f_closed = f_sql_ideal(model.s_force, model.mass);
  auto rp_free = [&model](double f) {
    double w = 2.0 * 3.14159265358979323846 * f;
    double chi = 1.0 / (model.mass * w * w);
    return model.s_force * chi * chi;
  };
  auto shot_flat = [&model](double) {
    return kConst.hbar * kConst.hbar / model.s_force;
  };
  double f_num = intersect_frequency(rp_free, shot_flat, 1.0, 1e8);
  add_below(rows, "c10.ideal_intersection", std::fabs(f_num / f_closed - 1.0),
            1e-6, "");
  {
    double omega = 2.0 * 3.14159265358979323846 * eval.stability.f_res * 100.0;
    std::complex<double> chi =
        susceptibility(p.config, eval.derived, omega, p.fopts.budget.roc_convention);
    double dev = std::abs(chi * (-model.mass * omega * omega) - 1.0);
    add_below(rows, "c10.free_mass_asymptote", dev, 1e-2, "");
  }

  add_flag(rows, "c11.repeat_identical", repeat_identical(p.config),
           "identical", "identical");

  int passed = 0;
  std::string text = "reproduce: bundled reference design\n";
  text += fmt("  %-24s%-22s%-32s%s\n", "row", "computed", "expected", "pass");
  for (const ReproRow& row : rows) {
    text += fmt("  %-24s%-22s%-32s%s\n", row.id.c_str(), row.computed.c_str(),
                row.expected.c_str(), yesno(row.pass));
    if (row.pass) ++passed;
  }
  text += fmt("  %d/%zu rows pass\n", passed, rows.size());

  ensure_out_dir(common.out_dir);
  emit(text, join_path(common.out_dir, "reproduce.txt"));
  write_manifest(join_path(common.out_dir, "manifest.json"),
                 make_manifest("reproduce", p, {"reproduce.txt"}));
  return passed == static_cast<int>(rows.size()) ? 0 : 1;
}

}  // namespace optlev
