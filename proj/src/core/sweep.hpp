#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "core/grid.hpp"
#include "core/resource.hpp"
#include "core/sensitivity.hpp"
#include "core/steady.hpp"

namespace loglab {

// One solved diffusion value.  The first block mirrors the sweep CSV
// columns; the rest are diagnostics consumed by the verdicts.
struct SweepRow {
  double mu = 0.0;
  bool ok = false;
  std::string error;  // set when the solve failed and the row is a stub

  double M = 0.0;  // max theta
  double S = 0.0;  // min theta
  double gap = 0.0;
  double argmax_x = 0.0;  // parabola-refined abscissa
  double argmin_x = 0.0;
  double mass_p1 = 0.0;  // integral of theta
  double mass_p2 = 0.0;  // integral of theta^2
  double mass_p3 = 0.0;  // integral of theta^3
  double grad_sq = 0.0;  // integral of (theta')^2
  double theta_mu_at_argmax = 0.0;
  int newton_iters = 0;
  double residual = 0.0;

  double theta_mu_at_0 = 0.0;
  double theta_mu_at_1 = 0.0;
  double min_theta_mu = 0.0;
  double max_theta_mu = 0.0;
  double theta_prime_interior_min = 0.0;
  double theta_prime_interior_max = 0.0;
  int theta_prime_sign_changes = 0;
  bool argmax_is_interior = false;
  bool bounds_ok = false;
  bool sandwich_ok = false;
  double identity_defect = 0.0;
};

struct SweepOptions {
  std::vector<double> mus;  // positive, any order; rows come back ascending
  bool independent = false; // parabolic start + newton per row, no reuse
  bool parallel = false;    // only meaningful with independent
  ContinuationOptions continuation;
  std::size_t bound_samples = 8193;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::size_t failed = 0;
};

// Continuation mode walks mu downward reusing each converged state;
// independent mode solves every row from scratch so rows cannot influence
// each other.  Rows that fail keep their error string and the sweep goes
// on; if every row fails the sweep itself throws.
SweepResult run_sweep(const Grid& g, const ResourceProfile& m,
                      const SweepOptions& opt);

// Full per-state evaluation shared by sweeps, the solve command and the
// acceptance battery.
SweepRow evaluate_state_row(const Grid& g, const ResourceProfile& m,
                            const SteadyState& state,
                            std::size_t bound_samples = 8193);

// Vertex abscissa of the parabola through the node and its neighbours;
// falls back to the node for boundary or degenerate stencils.
double parabolic_extremum(const Grid& g, const Field& u, std::size_t node);

// Sign flips along the vector, ignoring entries below rel_floor * sup|v|.
int sign_changes(const Field& v, double rel_floor = 1e-10);

enum class Verdict { pass, fail, inconclusive };

const char* verdict_name(Verdict v);

struct MonotonicityReport {
  Verdict verdict = Verdict::inconclusive;
  std::size_t pairs = 0;          // consecutive ok-row pairs examined
  std::size_t witness_index = 0;  // row index of the deciding pair's left end
  double witness_delta = 0.0;
  std::string detail;
};

// Checks that `column` moves strictly in `direction` (+1 rising, -1
// falling) across the ok rows of a sweep.  A wrong-signed step beyond
// `slack` fails; any step within the slack band leaves the verdict
// inconclusive; otherwise it passes.
MonotonicityReport monotonicity_verdict(const SweepResult& sweep,
                                        double SweepRow::*column,
                                        int direction, double slack);

}  // namespace loglab
