#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "optlev/commands.hpp"
#include "optlev/config.hpp"

namespace {

int dispatch(const CLI::App& app, const optlev::CommonOptions& common,
             const optlev::BudgetArgs& budget_args,
             const optlev::OptimizeArgs& optimize_args) {
  if (app.got_subcommand("validate")) return optlev::cmd_validate(common);
  if (app.got_subcommand("budget")) return optlev::cmd_budget(common, budget_args);
  if (app.got_subcommand("stability")) return optlev::cmd_stability(common);
  if (app.got_subcommand("feasibility")) return optlev::cmd_feasibility(common);
  if (app.got_subcommand("optimize")) return optlev::cmd_optimize(common, optimize_args);
  if (app.got_subcommand("reproduce")) return optlev::cmd_reproduce(common);
  std::fprintf(stderr, "error: no subcommand\n");
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"design analysis for a sandwich-cavity levitated mirror"};
  app.require_subcommand(1);
  // let the global options (--config, --out, ...) appear after the subcommand
  app.fallthrough();

  optlev::CommonOptions common;
  std::string roc_convention = "signed";
  std::string coating_bracket = "squared";

  app.add_option("--config", common.config_path,
                 "config file (default: the bundled reference design)");
  app.add_option("--out", common.out_dir, "output directory")
      ->default_str(".");
  app.add_option("--seed", common.seed, "optimizer seed")->default_str("7");
  app.add_flag("--solve-balance", common.solve_balance,
               "rescale the lower input power to balance gravity first");
  app.add_option("--roc-convention", roc_convention,
                 "horizontal damping g-product convention")
      ->check(CLI::IsMember({"signed", "paper-literal"}))
      ->default_str("signed");
  app.add_flag("--strict-horizontal-damping", common.strict_horizontal_damping,
               "gate on the horizontal damping sign");
  app.add_option("--coating-bracket", coating_bracket,
                 "coating Brownian bracket variant")
      ->check(CLI::IsMember({"squared", "printed"}))
      ->default_str("squared");

  app.add_subcommand("validate", "parse and validate a config");

  optlev::BudgetArgs budget_args;
  CLI::App* budget = app.add_subcommand(
      "budget", "noise budget spectra, summary, and margins");
  budget->add_option("--fmin", budget_args.f_min, "band start [Hz]")
      ->default_str("10");
  budget->add_option("--fmax", budget_args.f_max, "band end [Hz]")
      ->default_str("1e6");
  budget->add_option("--points", budget_args.points, "grid points")
      ->default_str("1000");
  budget->add_flag("--linear", budget_args.linear,
                   "linear grid instead of logarithmic");
  budget->add_option("--csv", budget_args.csv_name, "spectra CSV file name")
      ->default_str("spectra.csv");

  app.add_subcommand("stability",
                     "stiffness matrix, trapping ranges, stability gates");
  app.add_subcommand("feasibility", "normalized margin table and verdict");

  optlev::OptimizeArgs optimize_args;
  CLI::App* opt = app.add_subcommand(
      "optimize", "search a parameter box for the best feasible design");
  opt->add_option("--space", optimize_args.space_path,
                  "search-space file (required)")
      ->required();
  opt->add_option("--objective", optimize_args.objective,
                  "max_classical_margin | max_coa_ratio | min_fsql")
      ->default_str("max_classical_margin");
  opt->add_option("--lhs", optimize_args.lhs_samples,
                  "Latin-hypercube samples")
      ->default_str("64");
  opt->add_option("--max-evals", optimize_args.max_evaluations,
                  "evaluation budget")
      ->default_str("1500");
  opt->add_option("--threads", optimize_args.threads,
                  "worker threads (0 = hardware)")
      ->default_str("0");
  opt->add_option("--trace", optimize_args.trace_name, "trace CSV file name")
      ->default_str("trace.csv");

  app.add_subcommand("reproduce",
                     "check the bundled design against its published figures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help and friends
    }
    app.exit(e);
    return 2;
  }

  common.roc_convention = roc_convention == "paper-literal"
                              ? optlev::RocConvention::paper_literal
                              : optlev::RocConvention::signed_roc;
  common.bracket = coating_bracket == "printed"
                       ? optlev::CoatingBracket::printed
                       : optlev::CoatingBracket::squared;

  try {
    return dispatch(app, common, budget_args, optimize_args);
  } catch (const optlev::ParseError& e) {
    std::fprintf(stderr, "parse error (line %d, column %d): %s\n", e.line(),
                 e.column(), e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
