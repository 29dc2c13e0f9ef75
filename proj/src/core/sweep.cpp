#include "core/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "core/errors.hpp"

namespace loglab {

double parabolic_extremum(const Grid& g, const Field& u, std::size_t node) {
  const std::size_t n = g.size();
  if (node >= n) throw InvalidArgumentError("node index out of range");
  if (node == 0 || node + 1 == n) return g.node(node);
  const double a = u[node - 1], b = u[node], c = u[node + 1];
  const double denom = a - 2.0 * b + c;
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), 1.0});
  if (std::abs(denom) <= 1e-14 * scale) return g.node(node);
  double delta = 0.5 * g.spacing() * (a - c) / denom;
  delta = std::clamp(delta, -0.5 * g.spacing(), 0.5 * g.spacing());
  return g.node(node) + delta;
}

int sign_changes(const Field& v, double rel_floor) {
  const double floor = rel_floor * sup_norm(v);
  int changes = 0;
  int prev = 0;
  for (double x : v) {
    if (!(std::abs(x) > floor)) continue;
    const int s = x > 0.0 ? 1 : -1;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

SweepRow evaluate_state_row(const Grid& g, const ResourceProfile& m,
                            const SteadyState& state,
                            std::size_t bound_samples) {
  const std::size_t n = g.size();
  if (state.theta.size() != n)
    throw InvalidArgumentError("field size mismatch");
  const Field& theta = state.theta;
  const Field mvals = m.sample_values(g);

  SweepRow row;
  row.mu = state.mu;
  row.ok = true;
  row.newton_iters = state.newton_iters;
  row.residual = state.residual_norm;

  std::size_t imax = 0, imin = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (theta[i] > theta[imax]) imax = i;
    if (theta[i] < theta[imin]) imin = i;
  }
  row.M = theta[imax];
  row.S = theta[imin];
  row.gap = row.M - row.S;
  row.argmax_x = parabolic_extremum(g, theta, imax);
  row.argmin_x = parabolic_extremum(g, theta, imin);
  row.argmax_is_interior = imax > 0 && imax + 1 < n;

  long double p1 = 0.0L, p2 = 0.0L, p3 = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const long double w = g.weight(i);
    const long double t = theta[i];
    p1 += w * t;
    p2 += w * t * t;
    p3 += w * t * t * t;
  }
  row.mass_p1 = static_cast<double>(p1);
  row.mass_p2 = static_cast<double>(p2);
  row.mass_p3 = static_cast<double>(p3);
  row.grad_sq = gradient_energy(g, theta);

  const Sensitivity sens = solve_sensitivity(g, mvals, state);
  row.theta_mu_at_argmax = sens.theta_mu[imax];
  row.theta_mu_at_0 = sens.theta_mu.front();
  row.theta_mu_at_1 = sens.theta_mu.back();
  row.min_theta_mu = *std::min_element(sens.theta_mu.begin(),
                                       sens.theta_mu.end());
  row.max_theta_mu = *std::max_element(sens.theta_mu.begin(),
                                       sens.theta_mu.end());
  row.identity_defect = sens.identity_defect;
  row.sandwich_ok = sandwich_check(g, state, sens).ok;

  const Field d = derivative(g, theta);
  Field interior(d.begin() + 1, d.end() - 1);
  row.theta_prime_interior_min =
      *std::min_element(interior.begin(), interior.end());
  row.theta_prime_interior_max =
      *std::max_element(interior.begin(), interior.end());
  row.theta_prime_sign_changes = sign_changes(interior);

  row.bounds_ok = bounds_check(g, m, theta, bound_samples).ok;
  return row;
}

namespace {

SweepRow failed_row(double mu, const std::string& why) {
  SweepRow row;
  row.mu = mu;
  row.ok = false;
  row.error = why;
  return row;
}

std::vector<double> checked_mus(const SweepOptions& opt) {
  if (opt.mus.empty())
    throw InvalidArgumentError("sweep needs at least one diffusion value");
  for (double mu : opt.mus)
    if (!(mu > 0.0))
      throw InvalidArgumentError("sweep diffusion values must be positive");
  std::vector<double> mus = opt.mus;
  std::sort(mus.begin(), mus.end());
  return mus;
}

SweepResult sweep_continuation(const Grid& g, const ResourceProfile& m,
                               const SweepOptions& opt,
                               const std::vector<double>& mus) {
  const Field mvals = m.sample_values(g);
  SweepResult out;
  out.rows.resize(mus.size());

  SteadyState state;
  bool have_state = false;
  for (std::size_t k = mus.size(); k-- > 0;) {
    const double mu = mus[k];
    try {
      if (!have_state) {
        state = solve_with_continuation(g, mu, mvals, opt.continuation);
        have_state = true;
      } else {
        // pass a copy so a throw leaves the last good state usable
        SteadyState next = continue_down(g, mvals, state, mu,
                                         opt.continuation);
        state = std::move(next);
      }
      out.rows[k] = evaluate_state_row(g, m, state, opt.bound_samples);
    } catch (const LabError& e) {
      out.rows[k] = failed_row(mu, e.what());
      ++out.failed;
      // keep the last good state; the next (smaller) target retries from it
    }
  }
  return out;
}

SweepRow solve_row_independent(const Grid& g, const ResourceProfile& m,
                               const Field& mvals, double mu,
                               const SweepOptions& opt) {
  try {
    const double mbar = integrate(g, mvals);
    double mmax = mvals[0];
    for (double v : mvals) mmax = std::max(mmax, v);
    if (mmax <= 0.0)
      throw InvalidArgumentError("resource must be positive somewhere");
    const double guess = std::max(mbar, 1e-3 * mmax);
    SteadyState relaxed =
        parabolic_relax(g, mu, mvals, Field(g.size(), guess));
    SteadyState polished =
        newton_solve(g, mu, mvals, relaxed.theta, opt.continuation.newton);
    return evaluate_state_row(g, m, polished, opt.bound_samples);
  } catch (const LabError& e) {
    return failed_row(mu, e.what());
  }
}

SweepResult sweep_independent(const Grid& g, const ResourceProfile& m,
                              const SweepOptions& opt,
                              const std::vector<double>& mus) {
  const Field mvals = m.sample_values(g);
  SweepResult out;
  out.rows.resize(mus.size());

  if (opt.parallel) {
    std::vector<std::future<SweepRow>> jobs;
    jobs.reserve(mus.size());
    for (double mu : mus)
      jobs.push_back(std::async(std::launch::async, [&, mu] {
        return solve_row_independent(g, m, mvals, mu, opt);
      }));
    for (std::size_t k = 0; k < mus.size(); ++k) out.rows[k] = jobs[k].get();
  } else {
    for (std::size_t k = 0; k < mus.size(); ++k)
      out.rows[k] = solve_row_independent(g, m, mvals, mus[k], opt);
  }
  for (const SweepRow& r : out.rows)
    if (!r.ok) ++out.failed;
  return out;
}

}  // namespace

SweepResult run_sweep(const Grid& g, const ResourceProfile& m,
                      const SweepOptions& opt) {
  const std::vector<double> mus = checked_mus(opt);
  SweepResult out = opt.independent ? sweep_independent(g, m, opt, mus)
                                    : sweep_continuation(g, m, opt, mus);
  if (out.failed == out.rows.size())
    throw ConvergenceError("every sweep row failed", 0.0, mus.front());
  return out;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

MonotonicityReport monotonicity_verdict(const SweepResult& sweep,
                                        double SweepRow::*column,
                                        int direction, double slack) {
  if (direction != 1 && direction != -1)
    throw InvalidArgumentError("direction must be +1 or -1");
  if (!(slack >= 0.0)) throw InvalidArgumentError("slack must be >= 0");

  MonotonicityReport rep;
  std::vector<std::size_t> ok_rows;
  for (std::size_t i = 0; i < sweep.rows.size(); ++i)
    if (sweep.rows[i].ok) ok_rows.push_back(i);
  if (ok_rows.size() < 2) {
    rep.verdict = Verdict::inconclusive;
    rep.detail = "fewer than two solved rows";
    return rep;
  }

  bool any_within_slack = false;
  std::size_t slack_at = 0;
  double slack_delta = 0.0;
  for (std::size_t k = 0; k + 1 < ok_rows.size(); ++k) {
    const SweepRow& a = sweep.rows[ok_rows[k]];
    const SweepRow& b = sweep.rows[ok_rows[k + 1]];
    const double delta = (b.*column - a.*column) * direction;
    ++rep.pairs;
    if (delta <= -slack) {
      rep.verdict = Verdict::fail;
      rep.witness_index = ok_rows[k];
      rep.witness_delta = b.*column - a.*column;
      rep.detail = "step against the claimed direction";
      return rep;
    }
    if (delta <= slack && !any_within_slack) {
      any_within_slack = true;
      slack_at = ok_rows[k];
      slack_delta = b.*column - a.*column;
    }
  }
  if (any_within_slack) {
    rep.verdict = Verdict::inconclusive;
    rep.witness_index = slack_at;
    rep.witness_delta = slack_delta;
    rep.detail = "step within the slack band";
    return rep;
  }
  rep.verdict = Verdict::pass;
  return rep;
}

}  // namespace loglab
