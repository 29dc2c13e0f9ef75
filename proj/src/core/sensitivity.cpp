#include "core/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/errors.hpp"

namespace loglab {

Sensitivity solve_sensitivity(const Grid& g, const Field& m,
                              const SteadyState& state) {
  const std::size_t n = g.size();
  if (m.size() != n || state.theta.size() != n)
    throw InvalidArgumentError("field size mismatch");
  const double mu = state.mu;
  if (!(mu > 0.0)) throw InvalidArgumentError("diffusion must be positive");
  const Field& theta = state.theta;

  const Field r = steady_residual(g, mu, m, theta);
  Field rhs(n), c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long double ti = theta[i];
    rhs[i] = static_cast<double>(
        (ti * (static_cast<long double>(m[i]) - ti) -
         static_cast<long double>(r[i])) /
        static_cast<long double>(mu));
    c[i] = m[i] - 2.0 * theta[i];
  }

  Sensitivity out;
  out.theta_mu = solve_helmholtz(g, mu, c, rhs, &out.linear_residual);

  long double lhs = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const long double ti = theta[i];
    lhs -= static_cast<long double>(g.weight(i)) * ti * ti *
           static_cast<long double>(out.theta_mu[i]);
  }
  const double energy = gradient_energy(g, theta);
  const double diff = std::abs(static_cast<double>(lhs) - energy);
  // Normalize relative to the energy, but never demand more than the
  // rounding scale of the quadratures themselves (constant states have
  // energy at denormal level, not exactly zero).
  const double s = std::max(1.0, sup_norm(theta));
  const double floor = std::numeric_limits<double>::epsilon() * s * s * s;
  out.identity_defect = diff / std::max(energy, floor);
  return out;
}

SandwichReport sandwich_check(const Grid& g, const SteadyState& state,
                              const Sensitivity& sens) {
  const std::size_t n = g.size();
  if (state.theta.size() != n || sens.theta_mu.size() != n)
    throw InvalidArgumentError("field size mismatch");
  const Field& theta = state.theta;

  double S = theta[0], M = theta[0];
  for (double v : theta) {
    S = std::min(S, v);
    M = std::max(M, v);
  }

  SandwichReport rep;
  rep.slack = 1e-9 * sup_norm(theta);
  rep.low_margin = std::numeric_limits<double>::infinity();
  rep.high_margin = std::numeric_limits<double>::infinity();
  std::size_t low_at = 0, high_at = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = theta[i] + state.mu * sens.theta_mu[i];
    if (v - S < rep.low_margin) {
      rep.low_margin = v - S;
      low_at = i;
    }
    if (M - v < rep.high_margin) {
      rep.high_margin = M - v;
      high_at = i;
    }
  }
  rep.ok = rep.low_margin > -rep.slack && rep.high_margin > -rep.slack;
  if (!rep.ok) {
    const std::size_t i = rep.low_margin <= -rep.slack ? low_at : high_at;
    rep.witness = "violation at x=" + std::to_string(g.node(i));
  }
  return rep;
}

double fd_sensitivity_gap(const Grid& g, const Field& m,
                          const SteadyState& state, double h_mu,
                          double tol_factor) {
  const double mu = state.mu;
  if (!(h_mu > 0.0) || h_mu >= 0.5 * mu)
    throw InvalidArgumentError("fd step must satisfy 0 < h_mu < mu/2");

  NewtonOptions opt;
  opt.max_iters = 80;
  opt.tol_factor = tol_factor;
  const SteadyState plus = newton_solve(g, mu + h_mu, m, state.theta, opt);
  const SteadyState minus = newton_solve(g, mu - h_mu, m, state.theta, opt);

  const Sensitivity sens = solve_sensitivity(g, m, state);
  double gap = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const long double fd =
        (static_cast<long double>(plus.theta[i]) - minus.theta[i]) /
        (2.0L * static_cast<long double>(h_mu));
    gap = std::max(gap, std::abs(static_cast<double>(
                       fd - static_cast<long double>(sens.theta_mu[i]))));
  }
  return gap;
}

MomentCheck moment_derivative_check(const Grid& g, const Field& m,
                                    const SteadyState& state, double h_mu,
                                    double tol_factor) {
  const double mu = state.mu;
  if (!(h_mu > 0.0) || h_mu >= 0.5 * mu)
    throw InvalidArgumentError("fd step must satisfy 0 < h_mu < mu/2");

  NewtonOptions opt;
  opt.max_iters = 80;
  opt.tol_factor = tol_factor;
  const SteadyState plus = newton_solve(g, mu + h_mu, m, state.theta, opt);
  const SteadyState minus = newton_solve(g, mu - h_mu, m, state.theta, opt);

  auto cubic = [&g](const Field& v) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const long double t = v[i];
      acc += static_cast<long double>(g.weight(i)) * t * t * t;
    }
    return acc;
  };

  MomentCheck out;
  out.fd_derivative = static_cast<double>(
      (cubic(plus.theta) - cubic(minus.theta)) /
      (2.0L * static_cast<long double>(h_mu)));
  out.reference = -3.0 * gradient_energy(g, state.theta);
  const double denom = std::max(std::abs(out.reference), 1e-300);
  out.rel_error = std::abs(out.fd_derivative - out.reference) / denom;
  return out;
}

}  // namespace loglab
