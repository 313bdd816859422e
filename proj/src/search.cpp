#include "optlev/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "optlev/constants.hpp"

namespace optlev {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMarginCap = 1e12;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double capped(double value) { return std::min(value, kMarginCap); }

// Ratio margin limit / |actual| with a cap when the denominator vanishes.
double ratio_margin(double limit, double actual) {
  if (actual == 0.0) return kMarginCap;
  return capped(limit / std::abs(actual));
}

}  // namespace

const std::vector<std::string>& margin_ids() {
  static const std::vector<std::string> ids = {
      "vertical_spring",     "vertical_damping",  "horizontal_spring",
      "horizontal_damping",  "roc_convex",        "force_balance",
      "clipping_lower",      "clipping_upper",    "g_product_lower",
      "g_product_upper",     "classical_below_sql", "coating_below_sql",
      "intensity_lower",     "intensity_upper",   "temperature_rise",
      "fsql_internal_mode",  "fsql_cavity_pole",  "trap_dz_floor",
  };
  return ids;
}

DesignEval evaluate_design(const SystemConfig& config,
                           const FeasibilityOptions& options) {
  std::vector<Violation> violations = validate(config);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "config fails validation: " << violations.front().code << ": "
        << violations.front().message;
    if (violations.size() > 1) {
      msg << " (+" << violations.size() - 1 << " more)";
    }
    throw std::invalid_argument(msg.str());
  }

  DesignEval e;
  e.mass = mirror_mass(config.mirror);
  e.derived = derive_pair(config);
  e.balance = force_balance(config, e.derived);
  e.stability = stability_report(config, e.derived, {},
                                 options.budget.roc_convention,
                                 options.strict_horizontal_damping);
  e.ranges = trapping_ranges(config, e.derived);
  e.budget = budget_scalars(config, options.budget);
  e.thermal = thermal_load(config, e.derived.lower.circulating_power);
  e.peak_lower = peak_intensity(e.derived.lower.circulating_power,
                                e.derived.lower.spot_radius_used);
  e.peak_upper = peak_intensity(e.derived.upper.circulating_power,
                                e.derived.upper.spot_radius_used);
  e.clip_lower = clipping_loss(config.mirror.radius,
                               e.derived.lower.spot_radius_used,
                               config.lower.finesse);
  e.clip_upper = clipping_loss(config.mirror.radius,
                               e.derived.upper.spot_radius_used,
                               config.upper.finesse);
  return e;
}

FeasibilityReport feasibility(const SystemConfig& config,
                              const FeasibilityOptions& options) {
  DesignEval e = evaluate_design(config, options);
  double omega_ref = 2.0 * kPi * 100.0;

  VerticalSpring vl = vertical_optical_spring(config.lower, e.derived.lower, e.mass,
                                              config.laser.wavelength, omega_ref);
  VerticalSpring vu = vertical_optical_spring(config.upper, e.derived.upper, e.mass,
                                              config.laser.wavelength, omega_ref);
  ComplexStiffness hl = horizontal_spring(config, e.derived.lower, omega_ref,
                                          options.budget.roc_convention);
  ComplexStiffness hu = horizontal_spring(config, e.derived.upper, omega_ref,
                                          options.budget.roc_convention);

  // Sign conditions as margins: 1 + net/scale is >= 1 exactly when the net
  // value is nonnegative; scale is the sum of the component magnitudes.
  auto sign_margin = [](double net, double scale) {
    if (scale == 0.0) return 0.0;  // no spring at all
    return capped(1.0 + net / scale);
  };

  std::vector<Constraint> rows;
  auto add = [&rows](const char* id, const char* description, double value) {
    Constraint c;
    c.id = id;
    c.description = description;
    c.value = value;
    c.pass = value >= 1.0;
    rows.push_back(std::move(c));
  };

  add("vertical_spring", "net vertical optical spring is restoring",
      sign_margin(vl.spring_constant + vu.spring_constant,
                  std::abs(vl.spring_constant) + std::abs(vu.spring_constant)));
  add("vertical_damping", "net vertical optical damping is positive",
      sign_margin(vl.damping_rate + vu.damping_rate,
                  std::abs(vl.damping_rate) + std::abs(vu.damping_rate)));
  add("horizontal_spring", "net horizontal spring is restoring",
      sign_margin(hl.real_part + hu.real_part,
                  std::abs(hl.real_part) + std::abs(hu.real_part)));
  add("horizontal_damping", "net horizontal damping is positive",
      sign_margin(hl.imag_part + hu.imag_part,
                  std::abs(hl.imag_part) + std::abs(hu.imag_part)));
  add("roc_convex", "levitated mirror is convex downward",
      config.mirror.roc > 0.0 ? 2.0 : 0.0);
  add("force_balance", "radiation forces support the weight within tolerance",
      ratio_margin(options.balance_tolerance, e.balance.residual));
  add("clipping_lower", "lower clipping loss within the finesse budget",
      ratio_margin(e.clip_lower.bound, e.clip_lower.loss));
  add("clipping_upper", "upper clipping loss within the finesse budget",
      ratio_margin(e.clip_upper.bound, e.clip_upper.loss));
  double g_lo = e.derived.lower.g_fixed * e.derived.lower.g_levitated;
  double g_up = e.derived.upper.g_fixed * e.derived.upper.g_levitated;
  add("g_product_lower", "lower resonator g-product inside (0, 1)",
      capped(1.0 + std::min(g_lo, 1.0 - g_lo)));
  add("g_product_upper", "upper resonator g-product inside (0, 1)",
      capped(1.0 + std::min(g_up, 1.0 - g_up)));
  add("classical_below_sql", "classical noise total below the SQL at f_sql",
      capped(e.budget.margin_at_fsql));
  add("coating_below_sql", "coating Brownian noise below the SQL at f_sql",
      capped(e.budget.coa_ratio));
  add("intensity_lower", "lower peak intensity below the damage threshold",
      ratio_margin(kDamageThreshold, e.peak_lower));
  add("intensity_upper", "upper peak intensity below the damage threshold",
      ratio_margin(kDamageThreshold, e.peak_upper));
  add("temperature_rise", "radiative temperature rise within the limit",
      ratio_margin(options.max_temperature_rise, e.thermal.temperature_rise));
  add("fsql_internal_mode", "f_sql a decade below the internal mirror mode",
      ratio_margin(config.mirror.internal_mode_freq / 10.0, e.budget.f_sql_full));
  double min_pole = std::min(e.derived.lower.pole_freq, e.derived.upper.pole_freq);
  add("fsql_cavity_pole", "f_sql a decade below the cavity pole",
      ratio_margin(min_pole / 10.0, e.budget.f_sql_full));
  add("trap_dz_floor", "axial trapping range above the floor",
      ratio_margin(e.ranges.axial_bound, options.dz_floor));

  FeasibilityReport report;
  report.strict_horizontal_damping = options.strict_horizontal_damping;
  report.f_sql = e.budget.f_sql_full;
  report.sql_asd = e.budget.sql_asd_at_fsql;
  report.classical_margin = e.budget.margin_at_fsql;
  report.coa_ratio = e.budget.coa_ratio;

  for (Constraint& row : rows) {
    if (row.id == "horizontal_damping") {
      report.horizontal_damping = row;
      if (!options.strict_horizontal_damping) continue;
    }
    report.constraints.push_back(row);
  }
  report.overall = true;
  for (const Constraint& c : report.constraints) {
    report.overall = report.overall && c.pass;
    report.total_violation += std::max(0.0, 1.0 - c.value);
  }
  return report;
}

SystemConfig solve_balance(const SystemConfig& config) {
  SystemConfig out = config;
  double mass = mirror_mass(config.mirror);
  double upper_circ = circulating_power(config.upper.input_power,
                                        config.upper.finesse,
                                        config.upper.detuning_norm);
  double upper_force = radiation_force(upper_circ);
  double target_circ = (mass * kConst.g_acc + upper_force) * kConst.c / 2.0;
  double d = config.lower.detuning_norm;
  out.lower.input_power =
      target_circ * kPi * (1.0 + d * d) / config.lower.finesse;
  return out;
}

// ---------------------------------------------------------------------------
// Parameter registry

const std::vector<ParamAccessor>& parameter_registry() {
  static const std::vector<ParamAccessor> registry = {
      {"mirror.radius", [](const SystemConfig& c) { return c.mirror.radius; },
       [](SystemConfig& c, double v) { c.mirror.radius = v; }},
      {"mirror.aspect_ratio",
       [](const SystemConfig& c) { return c.mirror.aspect_ratio; },
       [](SystemConfig& c, double v) { c.mirror.aspect_ratio = v; }},
      {"mirror.roc", [](const SystemConfig& c) { return c.mirror.roc; },
       [](SystemConfig& c, double v) { c.mirror.roc = v; }},
      {"mirror.absorption",
       [](const SystemConfig& c) { return c.mirror.absorption; },
       [](SystemConfig& c, double v) { c.mirror.absorption = v; }},
      {"laser.wavelength",
       [](const SystemConfig& c) { return c.laser.wavelength; },
       [](SystemConfig& c, double v) { c.laser.wavelength = v; }},
      {"laser.freq_noise_asd",
       [](const SystemConfig& c) { return c.laser.freq_noise_asd; },
       [](SystemConfig& c, double v) { c.laser.freq_noise_asd = v; }},
      {"cavity.lower.length",
       [](const SystemConfig& c) { return c.lower.length; },
       [](SystemConfig& c, double v) { c.lower.length = v; }},
      {"cavity.lower.fixed_mirror_roc",
       [](const SystemConfig& c) { return c.lower.fixed_mirror_roc; },
       [](SystemConfig& c, double v) { c.lower.fixed_mirror_roc = v; }},
      {"cavity.lower.coc_distance",
       [](const SystemConfig& c) { return c.lower.coc_distance; },
       [](SystemConfig& c, double v) { c.lower.coc_distance = v; }},
      {"cavity.lower.finesse",
       [](const SystemConfig& c) { return c.lower.finesse; },
       [](SystemConfig& c, double v) { c.lower.finesse = v; }},
      {"cavity.lower.input_power",
       [](const SystemConfig& c) { return c.lower.input_power; },
       [](SystemConfig& c, double v) { c.lower.input_power = v; }},
      {"cavity.lower.detuning_norm",
       [](const SystemConfig& c) { return c.lower.detuning_norm; },
       [](SystemConfig& c, double v) { c.lower.detuning_norm = v; }},
      {"cavity.upper.length",
       [](const SystemConfig& c) { return c.upper.length; },
       [](SystemConfig& c, double v) { c.upper.length = v; }},
      {"cavity.upper.fixed_mirror_roc",
       [](const SystemConfig& c) { return c.upper.fixed_mirror_roc; },
       [](SystemConfig& c, double v) { c.upper.fixed_mirror_roc = v; }},
      {"cavity.upper.coc_distance",
       [](const SystemConfig& c) { return c.upper.coc_distance; },
       [](SystemConfig& c, double v) { c.upper.coc_distance = v; }},
      {"cavity.upper.finesse",
       [](const SystemConfig& c) { return c.upper.finesse; },
       [](SystemConfig& c, double v) { c.upper.finesse = v; }},
      {"cavity.upper.input_power",
       [](const SystemConfig& c) { return c.upper.input_power; },
       [](SystemConfig& c, double v) { c.upper.input_power = v; }},
      {"cavity.upper.detuning_norm",
       [](const SystemConfig& c) { return c.upper.detuning_norm; },
       [](SystemConfig& c, double v) { c.upper.detuning_norm = v; }},
      {"environment.temperature",
       [](const SystemConfig& c) { return c.environment.temperature; },
       [](SystemConfig& c, double v) { c.environment.temperature = v; }},
      {"environment.pressure",
       [](const SystemConfig& c) { return c.environment.pressure; },
       [](SystemConfig& c, double v) { c.environment.pressure = v; }},
  };
  return registry;
}

const ParamAccessor* find_parameter(const std::string& path) {
  for (const ParamAccessor& p : parameter_registry()) {
    if (path == p.path) return &p;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Search-space file

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_space_number(const std::string& text, int line) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  while (end != nullptr && (*end == ' ' || *end == '\t')) ++end;
  if (end == begin || *end != '\0' || !std::isfinite(v)) {
    throw ParseError("malformed number '" + text + "'", line, 1);
  }
  return v;
}

}  // namespace

SearchSpace parse_search_space(const std::string& text) {
  struct Bound {
    double value = 0.0;
    bool set = false;
    int line = 0;
  };
  struct Entry {
    Bound lo, hi;
    int order = 0;
  };
  std::map<std::string, Entry> entries;
  int order = 0;

  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') {
        throw ParseError("unterminated section header", lineno, 1);
      }
      section = trim(body.substr(1, body.size() - 2));
      continue;
    }
    size_t eq = body.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected 'key = value'", lineno, 1);
    }
    std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (section.empty()) {
      throw ParseError("key '" + key + "' outside any section", lineno, 1);
    }

    bool is_min = key.size() > 4 && key.rfind("_min") == key.size() - 4;
    bool is_max = key.size() > 4 && key.rfind("_max") == key.size() - 4;
    if (!is_min && !is_max) {
      throw ParseError("search-space key '" + key +
                           "' must end in _min or _max",
                       lineno, 1);
    }
    std::string path = section + "." + key.substr(0, key.size() - 4);
    if (find_parameter(path) == nullptr) {
      throw ParseError("'" + path + "' is not a searchable parameter", lineno, 1);
    }
    Entry& entry = entries[path];
    if (entry.lo.set == false && entry.hi.set == false) entry.order = order++;
    Bound& bound = is_min ? entry.lo : entry.hi;
    if (bound.set) {
      throw ParseError("duplicate bound for '" + path + "'", lineno, 1);
    }
    bound.value = parse_space_number(value, lineno);
    bound.set = true;
    bound.line = lineno;
  }

  std::vector<std::pair<std::string, Entry>> ordered(entries.begin(), entries.end());
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.second.order < b.second.order; });

  SearchSpace space;
  for (const auto& [path, entry] : ordered) {
    if (!entry.lo.set || !entry.hi.set) {
      throw ParseError("'" + path + "' needs both _min and _max bounds",
                       entry.lo.set ? entry.lo.line : entry.hi.line, 1);
    }
    if (!(entry.lo.value <= entry.hi.value)) {
      throw ParseError("'" + path + "' has min > max", entry.lo.line, 1);
    }
    space.params.push_back(ParamRange{path, entry.lo.value, entry.hi.value});
  }
  return space;
}

Objective parse_objective(const std::string& token) {
  if (token == "max_classical_margin") return Objective::max_classical_margin;
  if (token == "max_coa_ratio") return Objective::max_coa_ratio;
  if (token == "min_fsql") return Objective::min_fsql;
  throw std::invalid_argument(
      "unknown objective '" + token +
      "' (expected max_classical_margin, max_coa_ratio, or min_fsql)");
}

const char* objective_name(Objective objective) {
  switch (objective) {
    case Objective::max_classical_margin: return "max_classical_margin";
    case Objective::max_coa_ratio: return "max_coa_ratio";
    case Objective::min_fsql: return "min_fsql";
  }
  throw std::invalid_argument("unknown objective");
}

// ---------------------------------------------------------------------------
// Optimizer

namespace {

// Uniform double in [0, 1) from explicit bit manipulation; the standard
// distributions are implementation-defined, this keeps traces portable.
double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct EvalOutcome {
  int tier = 0;  // 2 feasible, 1 evaluated but infeasible, 0 evaluation threw
  double value = -std::numeric_limits<double>::infinity();
  std::vector<double> margins;
  bool feasible = false;
  FeasibilityReport report;
  SystemConfig config;
};

bool better(const EvalOutcome& a, const EvalOutcome& b) {
  if (a.tier != b.tier) return a.tier > b.tier;
  return a.value > b.value;
}

std::vector<double> collect_margins(const FeasibilityReport& report) {
  std::vector<double> margins;
  margins.reserve(margin_ids().size());
  size_t next = 0;
  for (const std::string& id : margin_ids()) {
    if (id == "horizontal_damping" && !report.strict_horizontal_damping) {
      margins.push_back(report.horizontal_damping.value);
      continue;
    }
    margins.push_back(report.constraints.at(next++).value);
  }
  return margins;
}

double objective_value(const FeasibilityReport& report, Objective objective) {
  switch (objective) {
    case Objective::max_classical_margin: return report.classical_margin;
    case Objective::max_coa_ratio: return report.coa_ratio;
    case Objective::min_fsql: return -report.f_sql;
  }
  return 0.0;
}

EvalOutcome evaluate_candidate(const SystemConfig& base, const SearchSpace& space,
                               const std::vector<double>& params,
                               const OptimizeOptions& options) {
  EvalOutcome outcome;
  outcome.config = base;
  for (size_t i = 0; i < space.params.size(); ++i) {
    find_parameter(space.params[i].path)->set(outcome.config, params[i]);
  }
  if (options.apply_solve_balance) {
    outcome.config = solve_balance(outcome.config);
  }
  try {
    outcome.report = feasibility(outcome.config, options.feasibility);
    outcome.margins = collect_margins(outcome.report);
    outcome.feasible = outcome.report.overall;
    outcome.tier = outcome.feasible ? 2 : 1;
    outcome.value = outcome.feasible
                        ? objective_value(outcome.report, options.objective)
                        : -outcome.report.total_violation;
  } catch (const std::exception&) {
    outcome.tier = 0;
    outcome.margins.assign(margin_ids().size(), kNaN);
  }
  return outcome;
}

void evaluate_batch(const SystemConfig& base, const SearchSpace& space,
                    const std::vector<std::vector<double>>& points,
                    const OptimizeOptions& options,
                    std::vector<EvalOutcome>& out) {
  out.clear();
  out.resize(points.size());
  unsigned threads = options.threads > 0
                         ? static_cast<unsigned>(options.threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(points.size()));
  if (threads <= 1) {
    for (size_t i = 0; i < points.size(); ++i) {
      out[i] = evaluate_candidate(base, space, points[i], options);
    }
    return;
  }
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next.fetch_add(1); i < points.size(); i = next.fetch_add(1)) {
      out[i] = evaluate_candidate(base, space, points[i], options);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
}

}  // namespace

OptimizeResult optimize(const SystemConfig& base, const SearchSpace& space,
                        const OptimizeOptions& options) {
  const size_t dims = space.params.size();
  for (const ParamRange& p : space.params) {
    if (find_parameter(p.path) == nullptr) {
      throw std::invalid_argument("unknown search parameter '" + p.path + "'");
    }
    if (!(p.lo <= p.hi)) {
      throw std::invalid_argument("empty interval for '" + p.path + "'");
    }
  }
  if (options.lhs_samples < 1 || options.max_evaluations < 1) {
    throw std::invalid_argument("optimizer needs at least one sample");
  }

  OptimizeResult result;
  for (const ParamRange& p : space.params) result.param_names.push_back(p.path);

  auto clamp_point = [&](std::vector<double> point) {
    for (size_t i = 0; i < dims; ++i) {
      point[i] = std::clamp(point[i], space.params[i].lo, space.params[i].hi);
    }
    return point;
  };

  // Stage 1: the base point plus a Latin-hypercube sample of the box.
  std::vector<std::vector<double>> points;
  {
    std::vector<double> base_point(dims);
    for (size_t i = 0; i < dims; ++i) {
      base_point[i] = find_parameter(space.params[i].path)->get(base);
    }
    points.push_back(clamp_point(base_point));
  }
  std::mt19937_64 rng(options.seed);
  if (dims > 0) {
    int n = std::min(options.lhs_samples, options.max_evaluations);
    std::vector<std::vector<double>> lhs(n, std::vector<double>(dims));
    for (size_t j = 0; j < dims; ++j) {
      std::vector<int> strata(n);
      for (int i = 0; i < n; ++i) strata[i] = i;
      for (int i = n - 1; i > 0; --i) {
        int k = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
        std::swap(strata[i], strata[k]);
      }
      const ParamRange& p = space.params[j];
      for (int i = 0; i < n; ++i) {
        double u = (strata[i] + unit_double(rng)) / n;
        lhs[i][j] = p.lo + (p.hi - p.lo) * u;
      }
    }
    points.insert(points.end(), lhs.begin(), lhs.end());
  }

  std::vector<EvalOutcome> outcomes;
  EvalOutcome best;
  std::vector<double> best_point;
  int evals = 0;

  auto absorb = [&](const std::vector<std::vector<double>>& batch_points,
                    std::vector<EvalOutcome>& batch) {
    bool improved = false;
    for (size_t i = 0; i < batch.size(); ++i) {
      TraceRow row;
      row.index = evals++;
      row.params = batch_points[i];
      row.margins = batch[i].margins;
      row.feasible = batch[i].feasible;
      row.objective = batch[i].tier == 0 ? kNaN : batch[i].value;
      result.trace.push_back(std::move(row));
      if (best_point.empty() || better(batch[i], best)) {
        best = std::move(batch[i]);
        best_point = batch_points[i];
        improved = true;
      }
    }
    return improved;
  };

  evaluate_batch(base, space, points, options, outcomes);
  absorb(points, outcomes);

  // Stage 2: compass pattern refinement around the incumbent.
  double step = options.initial_step;
  while (dims > 0 && step >= options.min_step &&
         evals < options.max_evaluations) {
    std::vector<std::vector<double>> batch;
    for (size_t i = 0; i < dims; ++i) {
      double width = space.params[i].hi - space.params[i].lo;
      for (double sign : {1.0, -1.0}) {
        std::vector<double> candidate = best_point;
        candidate[i] += sign * step * width;
        candidate = clamp_point(candidate);
        if (candidate != best_point) batch.push_back(std::move(candidate));
      }
    }
    if (static_cast<int>(batch.size()) > options.max_evaluations - evals) {
      batch.resize(options.max_evaluations - evals);
    }
    if (batch.empty()) break;
    evaluate_batch(base, space, batch, options, outcomes);
    bool improved = absorb(batch, outcomes);
    if (!improved) step *= 0.5;
  }

  if (best.tier == 0) {
    // Even the base point failed to evaluate; return it flagged.
    result.best = base;
    result.best_feasible = false;
    result.best_objective = kNaN;
    return result;
  }
  result.best = best.config;
  result.best_report = best.report;
  result.best_feasible = best.feasible;
  result.best_objective = best.value;
  return result;
}

}  // namespace optlev
