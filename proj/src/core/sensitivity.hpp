#pragma once

#include <string>

#include "core/grid.hpp"
#include "core/steady.hpp"

namespace loglab {

// theta_mu solves the steady equation differentiated in mu:
//   (mu L + diag(m - 2 theta)) theta_mu = -L theta.
// The right-hand side is recovered from the nonlinear residual as
// (theta (m - theta) - r) / mu, which avoids the 1/h^2 noise a direct
// Laplacian application would inject.
struct Sensitivity {
  Field theta_mu;
  double linear_residual = 0.0;  // achieved residual of the linear solve
  // Defect of the exchange identity
  //   -<theta^2, theta_mu> == integral of (theta')^2,
  // relative to the energy, floored at the quadrature rounding scale so
  // constant states do not divide by a denormal.
  double identity_defect = 0.0;
};

Sensitivity solve_sensitivity(const Grid& g, const Field& m,
                              const SteadyState& state);

// Pointwise check of  min theta < theta + mu theta_mu < max theta,
// which brackets d(mu theta)/dmu between the extremes of theta.
struct SandwichReport {
  bool ok = false;
  double low_margin = 0.0;   // min over nodes of (theta + mu theta_mu) - S
  double high_margin = 0.0;  // min over nodes of M - (theta + mu theta_mu)
  double slack = 0.0;
  std::string witness;
};

SandwichReport sandwich_check(const Grid& g, const SteadyState& state,
                              const Sensitivity& sens);

// Sup distance between theta_mu and a central difference of re-solved
// states at mu +- h_mu.  The re-solves run with a tightened tolerance so
// their own error does not mask the h_mu^2 truncation term.
double fd_sensitivity_gap(const Grid& g, const Field& m,
                          const SteadyState& state, double h_mu,
                          double tol_factor = 1e-3);

// d/dmu of the cubic moment against its closed form -3 * integral (theta')^2.
struct MomentCheck {
  double fd_derivative = 0.0;
  double reference = 0.0;
  double rel_error = 0.0;
};

MomentCheck moment_derivative_check(const Grid& g, const Field& m,
                                    const SteadyState& state, double h_mu,
                                    double tol_factor = 1e-3);

}  // namespace loglab
