#include "urep/run.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>

int main(int argc, char** argv) {
  CLI::App app{"Solvers for regularized equilibrium problems over prox-regular sets"};
  app.require_subcommand(0, 1);

  std::string suite_dir;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  bool oracle = false;
  bool verify = false;

  app.add_option("--suite", suite_dir, "Run every *.cfg in a directory concurrently")
      ->check(CLI::ExistingDirectory);
  app.add_option("--out", out_dir, "Output directory (overrides output.dir)");
  app.add_option("--seed", seed, "Seed for all sampling (overrides solver.seed)");
  app.add_flag("--oracle", oracle, "Cross-check the result against the grid oracle");
  app.add_flag("--verify", verify, "Audit every subproblem solution by sampling");

  auto* run_cmd = app.add_subcommand("run", "Run a single config");
  std::string config_path;
  run_cmd->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", out_dir, "Output directory (overrides output.dir)");
  run_cmd->add_option("--seed", seed, "Seed for all sampling (overrides solver.seed)");
  run_cmd->add_flag("--oracle", oracle, "Cross-check the result against the grid oracle");
  run_cmd->add_flag("--verify", verify, "Audit every subproblem solution by sampling");

  CLI11_PARSE(app, argc, argv);

  auto apply_overrides = [&](urep::cli::RunConfig& rc) {
    if (oracle) rc.oracle = true;
    if (verify) rc.verify = true;
    if (seed) rc.seed = *seed;
  };

  if (!suite_dir.empty()) {
    return urep::cli::run_suite(suite_dir, out_dir.empty() ? "out" : out_dir, apply_overrides,
                                std::cout, std::cerr);
  }
  if (!*run_cmd) {
    std::cerr << app.help();
    return urep::cli::kExitIoError;
  }

  try {
    urep::cli::RunConfig rc = urep::cli::parse_config(config_path);
    apply_overrides(rc);
    if (!out_dir.empty()) rc.output_dir = out_dir;
    const int code = urep::cli::run(rc, std::cerr);
    std::cout << "exit " << code << "\n";
    return code;
  } catch (const urep::cli::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return urep::cli::kExitIoError;
  } catch (const urep::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return urep::cli::kExitIoError;
  }
}
