#include <CLI11.hpp>

#include <exception>
#include <functional>

#include "commands.hpp"
#include "config.hpp"
#include "emit.hpp"

namespace cli = loglab_cli;

int main(int argc, char** argv) {
  cli::init_log_level_from_env();

  CLI::App app{
      "steady states of logistic growth with diffusion on the unit interval"};
  app.require_subcommand(1);

  cli::RunOptions run;
  std::function<int(const cli::RunOptions&)> selected;

  auto add = [&](const char* name, const char* blurb,
                 int (*fn)(const cli::RunOptions&)) {
    CLI::App* sub = app.add_subcommand(name, blurb);
    sub->add_option("--config", run.config_path, "run configuration file")
        ->required();
    sub->add_option("--out", run.out_dir, "output directory, default .");
    sub->add_option("--n", run.n_override, "grid nodes, odd and >= 65");
    sub->add_flag("--parallel", run.parallel, "solve sweep rows concurrently");
    sub->add_flag("--seedless", run.seedless,
                  "omit the run id from run_info.json");
    sub->callback([&selected, fn] { selected = fn; });
  };
  add("solve", "one steady state with slope and diffusion sensitivity",
      cli::run_solve);
  add("sweep", "steady-state summaries across a diffusion grid",
      cli::run_sweep);
  add("verify", "judge the claimed monotonicity and shape properties",
      cli::run_verify);
  add("asymptotics", "large-diffusion expansion constants and corrector",
      cli::run_asymptotics);
  add("hunt", "scan a profile family for a positive corrector floor",
      cli::run_hunt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  try {
    return selected(run);
  } catch (const cli::ConfigError& e) {
    cli::log_error(e.what());
    return 3;
  } catch (const std::exception& e) {
    cli::log_error(e.what());
    return 2;
  }
}
