#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "core/grid.hpp"
#include "core/resource.hpp"
#include "core/steady.hpp"

namespace loglab {

// Large-diffusion expansion data.  With lambda = 1/mu the steady state obeys
//   theta = mbar + lambda (c_energy + rho) + O(lambda^2),
// where rho is the zero-mean corrector of  L rho = -mbar (m - mbar)  and
// c_energy = integral (rho')^2 / mbar^2.  The same constant also equals
// <m - mbar, rho> / mbar (c_quadrature); the two agree up to solver noise.
struct Asymptotics {
  double mbar = 0.0;
  Field rho;
  double c_energy = 0.0;
  double c_quadrature = 0.0;
  double min_c_plus_rho = 0.0;
  bool poisson_compatible = true;
};

// Throws MeanSignError when the mean of m is not positive.
Asymptotics compute_asymptotics(const Grid& g, const Field& m);

// sup_x | theta(mu) - (mbar + (c_energy + rho)/mu) | via a continuation
// solve at mu.  Second order in 1/mu when the expansion is taken at the
// discrete level, as here.
double expansion_error(const Grid& g, const Field& m, const Asymptotics& asym,
                       double mu, const ContinuationOptions& opt = {});

// Least-squares slope of log(error) against log(lambda).
double convergence_order(const std::vector<double>& lambdas,
                         const std::vector<double>& errors);

// Scans the family parameter over a uniform range (budget points, both ends
// included) and returns the smallest t whose profile has positive mean and
// min(c_energy + rho) above the positivity margin 1e-6 * (1 + c_energy).
// Profiles with nonpositive mean are skipped, not errors.
struct HuntResult {
  bool found = false;
  double parameter = 0.0;
  double min_c_plus_rho = 0.0;
  double c_energy = 0.0;
  std::size_t tried = 0;
};

HuntResult hunt_min_positive(
    const Grid& g, const std::function<ResourceProfile(double)>& family,
    double lo, double hi, std::size_t budget);

}  // namespace loglab
