#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>

#include "nullflow/io/config.hpp"
#include "nullflow/io/report.hpp"
#include "nullflow/io/run.hpp"

namespace {

nullflow::RunConfig load(const std::string& path, bool strict) {
  auto parsed = nullflow::parse_config(nullflow::read_text_file(path), strict);
  for (const auto& key : parsed.ignored_keys) std::cerr << "warning: ignoring unknown key " << key << '\n';
  return parsed.config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degenerate Ricci-type flow on screen leaves with gradient-estimate checks"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  bool strict = false;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario and write trajectory, report and plots");
  run_cmd->add_option("config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
  auto* out_opt = run_cmd->add_option("--out", out_dir, "Output directory (overrides the config)");
  auto* seed_opt = run_cmd->add_option("--seed", seed, "Random seed (overrides the config)");
  run_cmd->add_flag("--strict", strict, "Reject unknown configuration keys");

  std::string csv_path, theorem_id, params_path;
  auto* verify_cmd = app.add_subcommand("verify", "Check one theorem on a trajectory CSV and print the report");
  verify_cmd->add_option("trajectory", csv_path, "trajectory.csv from a previous run")
      ->required()
      ->check(CLI::ExistingFile);
  verify_cmd->add_option("--theorem", theorem_id, "Theorem id")->required();
  verify_cmd->add_option("--params", params_path, "Run configuration used for the grid and estimate parameters")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd) {
      auto config = load(config_path, strict);
      if (*out_opt) config.output = out_dir;
      if (*seed_opt) config.seed = seed;
      const auto summary = nullflow::run(config);
      std::cout << "termination: " << nullflow::to_string(summary.termination);
      if (summary.singular_time) std::cout << " at t = " << *summary.singular_time;
      std::cout << " after " << summary.steps << " steps\n";
      for (const auto& t : summary.theorems) {
        std::cout << nullflow::to_string(t.theorem) << ": " << nullflow::to_string(t.status);
        if (std::isfinite(t.min_margin)) std::cout << " (min margin " << t.min_margin << ")";
        std::cout << '\n';
      }
      std::cout << "artifacts in " << config.output << '\n';
      return summary.exit_code;
    }
    const auto config = load(params_path, false);
    const auto report = nullflow::verify_csv(csv_path, nullflow::parse_theorem(theorem_id), config);
    std::cout << nullflow::render_report(report);
    return nullflow::exit_code({report});
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
