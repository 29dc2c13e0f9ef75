#include "core/steady.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/errors.hpp"

namespace loglab {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();

double max_abs(const Field& v) { return sup_norm(v); }

double max_val(const Field& v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  return m;
}

double min_val(const Field& v) {
  double m = std::numeric_limits<double>::infinity();
  for (double x : v) m = std::min(m, x);
  return m;
}
}  // namespace

Field steady_residual(const Grid& g, double mu, const Field& m,
                      const Field& theta) {
  const std::size_t n = g.size();
  if (m.size() != n || theta.size() != n)
    throw InvalidArgumentError("field size mismatch");
  const double h = g.spacing();
  const long double w =
      static_cast<long double>(mu) / (static_cast<long double>(h) * h);
  Field r(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long double ti = theta[i];
    long double left = (i > 0) ? static_cast<long double>(theta[i - 1]) - ti
                               : static_cast<long double>(theta[1]) -
                                     static_cast<long double>(theta[0]);
    long double right = (i + 1 < n)
                            ? static_cast<long double>(theta[i + 1]) - ti
                            : static_cast<long double>(theta[n - 2]) -
                                  static_cast<long double>(theta[n - 1]);
    r[i] = static_cast<double>((left + right) * w +
                               ti * (static_cast<long double>(m[i]) - ti));
  }
  return r;
}

double newton_tolerance(const Field& m, double tol_factor) {
  const double s = 1.0 + max_abs(m);
  return tol_factor * 1e-11 * s * s;
}

double residual_floor_guard(const Grid& g, double mu, const Field& m,
                            const Field& theta) {
  const double h = g.spacing();
  const double s = 1.0 + max_abs(m);
  return 8.0 * kEps * (mu * max_abs(theta) / (h * h) + s * s);
}

SteadyState newton_solve(const Grid& g, double mu, const Field& m,
                         Field initial, const NewtonOptions& opt) {
  const std::size_t n = g.size();
  if (m.size() != n || initial.size() != n)
    throw InvalidArgumentError("field size mismatch");
  if (!(mu > 0.0)) throw InvalidArgumentError("diffusion must be positive");
  if (min_val(initial) <= 0.0)
    throw InvalidArgumentError("newton initial guess must be positive");

  const double tol = newton_tolerance(m, opt.tol_factor);
  Field theta = std::move(initial);
  Field r = steady_residual(g, mu, m, theta);
  double rnorm = sup_norm(r);

  SteadyState out;
  out.mu = mu;

  for (int iter = 0; iter < opt.max_iters; ++iter) {
    if (rnorm <= tol) {
      out.theta = std::move(theta);
      out.residual_norm = rnorm;
      out.newton_iters = iter;
      return out;
    }

    Field c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = m[i] - 2.0 * theta[i];
    Field neg_r(n);
    for (std::size_t i = 0; i < n; ++i) neg_r[i] = -r[i];
    Field delta;
    try {
      delta = solve_helmholtz(g, mu, c, neg_r, nullptr, 1e-10);
    } catch (const SingularOperatorError&) {
      throw ConvergenceError("singular jacobian during newton iteration",
                             rnorm, mu);
    }

    // Halve until the iterate stays positive and the residual drops.
    double alpha = 1.0;
    Field cand(n), rc;
    double rc_norm = rnorm;
    bool accepted = false;
    for (int half = 0; half < 30; ++half) {
      bool positive = true;
      for (std::size_t i = 0; i < n; ++i) {
        cand[i] = theta[i] + alpha * delta[i];
        if (!(cand[i] > 0.0)) {
          positive = false;
          break;
        }
      }
      if (positive) {
        rc = steady_residual(g, mu, m, cand);
        rc_norm = sup_norm(rc);
        if (rc_norm < rnorm * (1.0 - 0.25 * alpha)) {
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
    }

    if (!accepted) {
      // No productive step left.  If the residual already sits at the
      // double-precision floor for this grid and mu, the iterate is as
      // converged as it can get.
      if (opt.allow_stall_exit &&
          rnorm <= residual_floor_guard(g, mu, m, theta)) {
        out.theta = std::move(theta);
        out.residual_norm = rnorm;
        out.newton_iters = iter;
        return out;
      }
      throw ConvergenceError("newton line search stalled", rnorm, mu);
    }
    theta.swap(cand);
    r.swap(rc);
    rnorm = rc_norm;
  }

  if (rnorm <= tol ||
      (opt.allow_stall_exit &&
       rnorm <= residual_floor_guard(g, mu, m, theta))) {
    out.theta = std::move(theta);
    out.residual_norm = rnorm;
    out.newton_iters = opt.max_iters;
    return out;
  }
  throw ConvergenceError("newton did not converge", rnorm, mu);
}

SteadyState parabolic_relax(const Grid& g, double mu, const Field& m,
                            Field initial, double dt, std::size_t max_steps,
                            double rate_tol) {
  const std::size_t n = g.size();
  if (m.size() != n || initial.size() != n)
    throw InvalidArgumentError("field size mismatch");
  if (!(mu > 0.0)) throw InvalidArgumentError("diffusion must be positive");
  if (min_val(initial) <= 0.0)
    throw InvalidArgumentError("parabolic initial state must be positive");
  if (dt <= 0.0) dt = 0.4 / std::max(1.0, max_val(m));

  Field u = std::move(initial);
  Field c(n), rhs(n);
  double best_rate = std::numeric_limits<double>::infinity();
  std::size_t since_best = 0;

  for (std::size_t step = 1; step <= max_steps; ++step) {
    // (dt mu L + diag(dt (m - u) - 1)) u_next = -u
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = dt * (m[i] - u[i]) - 1.0;
      rhs[i] = -u[i];
    }
    Field unext = solve_helmholtz(g, dt * mu, c, rhs, nullptr, 1e-13);
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      diff = std::max(diff, std::abs(unext[i] - u[i]));
    u.swap(unext);

    const double rate = diff / dt;
    if (rate < best_rate * 0.9) {
      best_rate = rate;
      since_best = 0;
    } else {
      ++since_best;
    }
    const bool stalled = since_best >= 50 && rate < 1e-9;
    if (rate < rate_tol || stalled) {
      SteadyState out;
      out.mu = mu;
      out.residual_norm = sup_norm(steady_residual(g, mu, m, u));
      out.theta = std::move(u);
      out.newton_iters = static_cast<int>(step);
      return out;
    }
  }
  throw ConvergenceError("parabolic relaxation did not settle",
                         best_rate, mu);
}

SteadyState continue_down(const Grid& g, const Field& m, SteadyState from,
                          double mu_target, const ContinuationOptions& opt) {
  if (!(mu_target > 0.0))
    throw InvalidArgumentError("diffusion must be positive");
  if (from.mu < mu_target)
    throw InvalidArgumentError("continuation only walks mu downward");

  int steps = from.continuation_steps;
  double ratio = opt.ratio;
  double mu = from.mu;
  SteadyState state = std::move(from);

  while (mu > mu_target) {
    const double mu_next = std::max(mu * ratio, mu_target);
    try {
      SteadyState next = newton_solve(g, mu_next, m, state.theta, opt.newton);
      ++steps;
      next.continuation_steps = steps;
      state = std::move(next);
      mu = mu_next;
    } catch (const ConvergenceError&) {
      ratio = std::sqrt(ratio);
      if (ratio > opt.give_up_ratio) throw;
    }
  }
  state.continuation_steps = steps;
  return state;
}

SteadyState solve_with_continuation(const Grid& g, double mu_target,
                                    const Field& m,
                                    const ContinuationOptions& opt) {
  if (!(mu_target > 0.0))
    throw InvalidArgumentError("diffusion must be positive");
  const double mu0 = std::max(mu_target, opt.mu_start);
  const double mbar = integrate(g, m);
  const double mmax = max_val(m);
  if (mmax <= 0.0)
    throw InvalidArgumentError("resource must be positive somewhere");
  const double guess = std::max(mbar, 1e-3 * mmax);

  SteadyState state =
      newton_solve(g, mu0, m, Field(g.size(), guess), opt.newton);
  state.continuation_steps = 1;
  if (mu0 <= mu_target) return state;
  return continue_down(g, m, std::move(state), mu_target, opt);
}

BoundsReport bounds_check(const Grid& g, const ResourceProfile& m,
                          const Field& theta, std::size_t bound_samples) {
  if (theta.size() != g.size())
    throw InvalidArgumentError("field size mismatch");
  if (bound_samples < g.size()) bound_samples = g.size();

  BoundsReport rep;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < bound_samples; ++i) {
    const double x =
        static_cast<double>(i) / static_cast<double>(bound_samples - 1);
    const double v = m.value(std::min(x, 1.0));
    lo = std::min(lo, std::max(v, 0.0));
    hi = std::max(hi, v);
  }
  rep.lower = lo;
  rep.upper = hi;
  rep.min_theta = min_val(theta);
  rep.max_theta = max_val(theta);
  rep.ok = true;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!(theta[i] > lo)) {
      rep.ok = false;
      rep.witness = "theta(" + std::to_string(g.node(i)) +
                    ")=" + std::to_string(theta[i]) + " not above " +
                    std::to_string(lo);
      return rep;
    }
    if (!(theta[i] < hi)) {
      rep.ok = false;
      rep.witness = "theta(" + std::to_string(g.node(i)) +
                    ")=" + std::to_string(theta[i]) + " not below " +
                    std::to_string(hi);
      return rep;
    }
  }
  return rep;
}

}  // namespace loglab
