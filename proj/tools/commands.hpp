#pragma once

#include <string>

namespace loglab_cli {

struct RunOptions {
  std::string config_path;
  std::string out_dir = ".";
  long long n_override = 0;  // 0 keeps grid.n from the config (default 1025)
  bool parallel = false;
  bool seedless = false;
};

// Each returns the process exit code: 0 all good, 1 a claimed property
// failed or could not be decided, 2 a solver gave up, 3 is reserved for
// ConfigError and is assigned by the caller.
int run_solve(const RunOptions& run);
int run_sweep(const RunOptions& run);
int run_verify(const RunOptions& run);
int run_asymptotics(const RunOptions& run);
int run_hunt(const RunOptions& run);

}  // namespace loglab_cli
