// Command-line front end: `run` executes one configured optimization and
// writes the result files, `report` compares a finished run against the
// published reference values, `validate` runs the benchmark acceptance
// checks.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "momdwa/config.hpp"
#include "momdwa/run.hpp"
#include "momdwa/validation.hpp"

namespace {

int run_command(const std::string& config_path, const std::optional<std::string>& problem,
                const std::optional<int>& objectives,
                const std::optional<std::uint64_t>& seed,
                const std::optional<std::string>& out_dir) {
  momdwa::RunConfig config = momdwa::load_config(config_path);
  if (problem) config.problem = momdwa::problem_from_string(*problem);
  if (objectives) config.objectives = *objectives;
  if (seed) config.seed = *seed;
  if (out_dir) config.output_dir = *out_dir;

  const momdwa::RunSummary summary = momdwa::run(config);

  std::cout << "problem " << momdwa::to_string(*summary.config.problem) << ", seed "
            << *summary.config.seed << ", " << summary.config.optimizer.max_generations
            << " generations\n";
  std::cout << "repository size " << summary.repository_size << ", screened "
            << summary.report.screened_count << "\n";
  const auto names = momdwa::objective_names(summary.config);
  std::cout << "selected:";
  for (std::size_t k = 0; k < names.size(); ++k)
    std::cout << " " << names[k] << " = "
              << momdwa::format_value(summary.selected.objectives[k]);
  std::cout << ", fidelity = " << momdwa::format_value(summary.selected.fidelity) << "\n";
  std::cout << "outputs written to " << summary.output_dir.string() << "\n";
  return 0;
}

int report_command(const std::string& run_dir) {
  momdwa::report(run_dir, std::cout);
  return 0;
}

int validate_command() {
  const auto results = momdwa::run_benchmark_validation();
  bool all_passed = true;
  for (const auto& result : results) {
    std::cout << (result.passed ? "[PASS] " : "[FAIL] ") << result.name << ": "
              << result.detail << "\n";
    all_passed = all_passed && result.passed;
  }
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"momdwa - multi-objective mobile damped wave optimizer"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "optimize a problem and write result files");
  std::string config_path;
  std::optional<std::string> problem;
  std::optional<int> objectives;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  run_cmd->add_option("--config", config_path, "configuration file")->required();
  run_cmd->add_option("--problem", problem, "q1|q2|q3|schaffer|fonseca");
  run_cmd->add_option("--objectives", objectives, "2 or 3");
  run_cmd->add_option("--seed", seed, "root random seed");
  run_cmd->add_option("--out", out_dir, "output directory");

  auto* report_cmd = app.add_subcommand("report", "summarize a completed run");
  std::string run_dir;
  report_cmd->add_option("--run", run_dir, "run output directory")->required();

  app.add_subcommand("validate", "run the benchmark acceptance checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("run"))
      return run_command(config_path, problem, objectives, seed, out_dir);
    if (app.got_subcommand("report")) return report_command(run_dir);
    return validate_command();
  } catch (const momdwa::ConfigError& error) {
    std::cerr << "config error: " << error.what() << "\n";
    return 2;
  } catch (const momdwa::IoError& error) {
    std::cerr << "io error: " << error.what() << "\n";
    return 3;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}
