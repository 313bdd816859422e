#ifndef OPTLEV_COMMANDS_HPP
#define OPTLEV_COMMANDS_HPP

// Subcommand implementations behind the CLI front end. Each returns the
// process exit code: 0 success, 1 domain failure (validation violations,
// stability/feasibility gate failure, reproduction mismatch, infeasible
// optimum), while usage, I/O, parse, and computation errors propagate as
// exceptions for the front end to map to exit code 2.

#include <cstdint>
#include <string>

#include "optlev/noise.hpp"
#include "optlev/search.hpp"
#include "optlev/stability.hpp"

namespace optlev {

struct CommonOptions {
  std::string config_path;  // empty = bundled reference design
  std::string out_dir = ".";
  std::uint64_t seed = 7;
  bool solve_balance = false;
  bool strict_horizontal_damping = false;
  RocConvention roc_convention = RocConvention::signed_roc;
  CoatingBracket bracket = CoatingBracket::squared;
};

struct BudgetArgs {
  double f_min = 10.0;
  double f_max = 1e6;
  int points = 1000;
  bool linear = false;
  std::string csv_name = "spectra.csv";
};

struct OptimizeArgs {
  std::string space_path;  // required
  std::string objective = "max_classical_margin";
  int lhs_samples = 64;
  int max_evaluations = 1500;
  int threads = 0;
  std::string trace_name = "trace.csv";
};

int cmd_validate(const CommonOptions& common);
int cmd_budget(const CommonOptions& common, const BudgetArgs& args);
int cmd_stability(const CommonOptions& common);
int cmd_feasibility(const CommonOptions& common);
int cmd_optimize(const CommonOptions& common, const OptimizeArgs& args);

// Evaluates the bundled reference design with default options and prints a
// computed / expected / pass table of the published design figures. Exits 0
// only when every row passes.
int cmd_reproduce(const CommonOptions& common);

}  // namespace optlev

#endif  // OPTLEV_COMMANDS_HPP
