#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "mlpode/cli.hpp"
#include "mlpode/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Multilevel Picard approximation for expectation ODEs"};
  app.set_version_flag("--version", mlpode::kVersion);
  app.require_subcommand(1);

  std::string run_config;
  mlpode::cli::RunOptions run_options;
  auto* run = app.add_subcommand("run", "Run an RMSE-versus-cost experiment");
  run->add_option("--config", run_config, "JSON configuration file")->required();
  run->add_option("--threads", run_options.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  run->add_flag("--timing", run_options.timing,
                "Record wall_ms (output is then no longer byte-reproducible)");

  std::string schedule_config;
  auto* schedule = app.add_subcommand("schedule", "Print the N_eps iteration schedule");
  schedule->add_option("--config", schedule_config, "JSON configuration file")->required();

  auto* list = app.add_subcommand("list-problems", "List built-in problems");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : mlpode::cli::kConfigError;
  }

  if (*run) return mlpode::cli::cmd_run(run_config, run_options, std::cout, std::cerr);
  if (*schedule) return mlpode::cli::cmd_schedule(schedule_config, std::cout, std::cerr);
  if (*list) return mlpode::cli::cmd_list_problems(std::cout);
  return mlpode::cli::kConfigError;
}
