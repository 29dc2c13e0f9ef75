#pragma once

#include <cstddef>
#include <string>

#include "core/grid.hpp"
#include "core/resource.hpp"

namespace loglab {

// Steady state of the density equation: mu L theta + theta (m - theta) = 0
// with zero-flux ends, theta > 0.
struct SteadyState {
  double mu = 0.0;
  Field theta;
  double residual_norm = 0.0;
  int newton_iters = 0;
  int continuation_steps = 0;
};

struct NewtonOptions {
  int max_iters = 50;
  // Convergence target is tol_factor * 1e-11 * (1 + max|m|)^2.  The sup
  // residual of any double-precision field cannot beat roughly
  // eps * mu * |theta| / h^2, so on fine grids and large mu the iteration is
  // allowed to stop at that floor instead (allow_stall_exit).
  double tol_factor = 1.0;
  bool allow_stall_exit = true;
};

struct ContinuationOptions {
  double mu_start = 1e3;   // walk starts at max(mu_target, mu_start)
  double ratio = 0.5;      // geometric factor per step
  double give_up_ratio = 0.99;  // stop widening retries past this
  NewtonOptions newton;
};

// r_i = mu L theta + theta (m - theta), adjacent differences first, long
// double accumulation.
Field steady_residual(const Grid& g, double mu, const Field& m,
                      const Field& theta);

double newton_tolerance(const Field& m, double tol_factor);
double residual_floor_guard(const Grid& g, double mu, const Field& m,
                            const Field& theta);

// Damped Newton from `initial` (must be positive).  Line search halves the
// step until the iterate stays positive and the residual drops.  Throws
// ConvergenceError when neither the tolerance nor the floor is reached.
SteadyState newton_solve(const Grid& g, double mu, const Field& m,
                         Field initial, const NewtonOptions& opt = {});

// Linearly implicit time stepping of u_t = mu L u + u (m - u): each step
// solves (I - dt mu L - dt diag(m - u)) u_next = u.  Its fixed point is the
// same discrete steady state the Newton solver targets, so the two agree to
// rounding; the scheme preserves positivity for dt * max(m) < 1.  dt <= 0
// picks 0.4 / max(1, max m).  Stops when |u_next - u| / dt < rate_tol or the
// rate stalls below 1e-9 at the rounding floor.
SteadyState parabolic_relax(const Grid& g, double mu, const Field& m,
                            Field initial, double dt = 0.0,
                            std::size_t max_steps = 2000000,
                            double rate_tol = 1e-12);

// Newton at max(mu_target, mu_start) from a flat guess, then geometric
// continuation down to mu_target reusing each converged state.  Failed steps
// retry with ratio -> sqrt(ratio).
SteadyState solve_with_continuation(const Grid& g, double mu_target,
                                    const Field& m,
                                    const ContinuationOptions& opt = {});

// Continuation from an already-converged state down to mu_target (requires
// from.mu >= mu_target).  Shared by solve_with_continuation and the sweeps.
SteadyState continue_down(const Grid& g, const Field& m, SteadyState from,
                          double mu_target, const ContinuationOptions& opt);

struct BoundsReport {
  bool ok = false;
  double lower = 0.0;  // min over [0,1] of max(m, 0), finely sampled
  double upper = 0.0;  // max over [0,1] of m
  double min_theta = 0.0;
  double max_theta = 0.0;
  std::string witness;
};

// Checks the strict pointwise bounds lower < theta < upper at every node.
BoundsReport bounds_check(const Grid& g, const ResourceProfile& m,
                          const Field& theta,
                          std::size_t bound_samples = 8193);

}  // namespace loglab
