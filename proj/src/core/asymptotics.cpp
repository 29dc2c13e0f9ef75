#include "core/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace loglab {

Asymptotics compute_asymptotics(const Grid& g, const Field& m) {
  const std::size_t n = g.size();
  if (m.size() != n) throw InvalidArgumentError("field size mismatch");

  Asymptotics out;
  out.mbar = integrate(g, m);
  if (!(out.mbar > 0.0))
    throw MeanSignError("expansion needs a positive mean resource");

  Field rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = -out.mbar * (m[i] - out.mbar);
  ZeroMeanPoisson sol = solve_neumann_poisson_zero_mean(g, rhs);
  out.poisson_compatible = sol.compatible;
  out.rho = std::move(sol.rho);

  out.c_energy = gradient_energy(g, out.rho) / (out.mbar * out.mbar);

  long double quad = 0.0L;
  for (std::size_t i = 0; i < n; ++i)
    quad += static_cast<long double>(g.weight(i)) *
            (static_cast<long double>(m[i]) - out.mbar) *
            static_cast<long double>(out.rho[i]);
  out.c_quadrature = static_cast<double>(quad / out.mbar);

  double mn = out.c_energy + out.rho[0];
  for (double v : out.rho) mn = std::min(mn, out.c_energy + v);
  out.min_c_plus_rho = mn;
  return out;
}

double expansion_error(const Grid& g, const Field& m, const Asymptotics& asym,
                       double mu, const ContinuationOptions& opt) {
  if (asym.rho.size() != g.size())
    throw InvalidArgumentError("field size mismatch");
  const SteadyState s = solve_with_continuation(g, mu, m, opt);
  const double lambda = 1.0 / mu;
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double model = asym.mbar + lambda * (asym.c_energy + asym.rho[i]);
    err = std::max(err, std::abs(s.theta[i] - model));
  }
  return err;
}

double convergence_order(const std::vector<double>& lambdas,
                         const std::vector<double>& errors) {
  const std::size_t k = lambdas.size();
  if (k < 2 || errors.size() != k)
    throw InsufficientDataError("order fit needs at least two points");
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (!(lambdas[i] > 0.0) || !(errors[i] > 0.0))
      throw InvalidArgumentError("order fit needs positive data");
    const long double x = std::log(static_cast<long double>(lambdas[i]));
    const long double y = std::log(static_cast<long double>(errors[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const long double denom = k * sxx - sx * sx;
  if (!(std::abs(static_cast<double>(denom)) > 0.0))
    throw InsufficientDataError("order fit abscissae are degenerate");
  return static_cast<double>((k * sxy - sx * sy) / denom);
}

HuntResult hunt_min_positive(
    const Grid& g, const std::function<ResourceProfile(double)>& family,
    double lo, double hi, std::size_t budget) {
  if (budget < 2) throw InvalidArgumentError("hunt budget must be >= 2");
  if (!(lo < hi)) throw InvalidArgumentError("hunt range must be increasing");

  HuntResult out;
  for (std::size_t k = 0; k < budget; ++k) {
    const double t =
        lo + (hi - lo) * static_cast<double>(k) /
                 static_cast<double>(budget - 1);
    ++out.tried;
    const ResourceProfile prof = family(t);
    Asymptotics asym;
    try {
      asym = compute_asymptotics(g, prof.sample_values(g));
    } catch (const MeanSignError&) {
      continue;  // not a candidate, keep scanning
    }
    // Positivity with margin, so boundary cases do not flip on rounding.
    if (asym.min_c_plus_rho > 1e-6 * (1.0 + asym.c_energy)) {
      out.found = true;
      out.parameter = t;
      out.min_c_plus_rho = asym.min_c_plus_rho;
      out.c_energy = asym.c_energy;
      return out;
    }
  }
  return out;
}

}  // namespace loglab
