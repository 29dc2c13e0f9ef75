#include "loglab/loglab.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "core/asymptotics.hpp"
#include "core/errors.hpp"
#include "core/grid.hpp"
#include "core/resource.hpp"
#include "core/sensitivity.hpp"
#include "core/steady.hpp"
#include "core/sweep.hpp"

using namespace loglab;

namespace {

thread_local std::string g_last_error;

loglab_status kind_to_status(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_argument: return LOGLAB_ERR_INVALID_ARGUMENT;
    case ErrorKind::domain: return LOGLAB_ERR_DOMAIN;
    case ErrorKind::singular_operator: return LOGLAB_ERR_SINGULAR_OPERATOR;
    case ErrorKind::no_convergence: return LOGLAB_ERR_NO_CONVERGENCE;
    case ErrorKind::step_size: return LOGLAB_ERR_STEP_SIZE;
    case ErrorKind::mean_sign: return LOGLAB_ERR_MEAN_SIGN;
    case ErrorKind::insufficient_data: return LOGLAB_ERR_INSUFFICIENT_DATA;
  }
  return LOGLAB_ERR_UNKNOWN;
}

template <typename Fn>
loglab_status wrap(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return LOGLAB_OK;
  } catch (const LabError& e) {
    g_last_error = e.what();
    return kind_to_status(e.kind());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LOGLAB_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown failure";
    return LOGLAB_ERR_UNKNOWN;
  }
}

loglab_status null_pointer() {
  g_last_error = "null pointer argument";
  return LOGLAB_ERR_NULL_POINTER;
}

}  // namespace

struct loglab_profile {
  ResourceProfile profile;
};

struct loglab_solution {
  Grid grid;
  ResourceProfile profile;
  Field mvals;
  SteadyState state;
  Sensitivity sens;
  Field dtheta;
  SweepRow row;
};

struct loglab_asymptotics {
  Grid grid;
  Field mvals;
  Asymptotics data;
};

struct loglab_sweep {
  Grid grid;
  SweepResult result;
};

extern "C" {

const char* loglab_version(void) { return "0.1.0"; }

const char* loglab_status_name(loglab_status s) {
  switch (s) {
    case LOGLAB_OK: return "ok";
    case LOGLAB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LOGLAB_ERR_DOMAIN: return "domain";
    case LOGLAB_ERR_SINGULAR_OPERATOR: return "singular operator";
    case LOGLAB_ERR_NO_CONVERGENCE: return "no convergence";
    case LOGLAB_ERR_STEP_SIZE: return "step size";
    case LOGLAB_ERR_MEAN_SIGN: return "mean sign";
    case LOGLAB_ERR_INSUFFICIENT_DATA: return "insufficient data";
    case LOGLAB_ERR_NULL_POINTER: return "null pointer";
    case LOGLAB_ERR_UNKNOWN: return "unknown";
  }
  return "unknown";
}

const char* loglab_last_error(void) { return g_last_error.c_str(); }

/* ---- profiles --------------------------------------------------------- */

static loglab_status make_profile(loglab_profile** out,
                                  ResourceProfile (*mk)(double, double),
                                  double a, double b) {
  if (!out) return null_pointer();
  return wrap([&] { *out = new loglab_profile{mk(a, b)}; });
}

loglab_status loglab_profile_constant(double c, loglab_profile** out) {
  if (!out) return null_pointer();
  return wrap([&] { *out = new loglab_profile{ResourceProfile::constant(c)}; });
}

loglab_status loglab_profile_linear(double a, double b, loglab_profile** out) {
  return make_profile(out, &ResourceProfile::linear, a, b);
}

loglab_status loglab_profile_shifted_ramp(double s, loglab_profile** out) {
  if (!out) return null_pointer();
  return wrap(
      [&] { *out = new loglab_profile{ResourceProfile::shifted_ramp(s)}; });
}

loglab_status loglab_profile_sine_offset(double c, double a,
                                         loglab_profile** out) {
  return make_profile(out, &ResourceProfile::sine_offset, c, a);
}

loglab_status loglab_profile_cosine_offset(double c, double a,
                                           loglab_profile** out) {
  return make_profile(out, &ResourceProfile::cosine_offset, c, a);
}

loglab_status loglab_profile_single_peak(double c, double a,
                                         loglab_profile** out) {
  return make_profile(out, &ResourceProfile::single_peak, c, a);
}

loglab_status loglab_profile_sampled(const double* xs, const double* ms,
                                     const double* dms, size_t count,
                                     loglab_profile** out) {
  if (!xs || !ms || !dms || !out) return null_pointer();
  return wrap([&] {
    *out = new loglab_profile{ResourceProfile::sampled(
        std::vector<double>(xs, xs + count),
        std::vector<double>(ms, ms + count),
        std::vector<double>(dms, dms + count))};
  });
}

loglab_status loglab_profile_blend(const loglab_profile* base,
                                   const loglab_profile* bump, double t,
                                   loglab_profile** out) {
  if (!base || !bump || !out) return null_pointer();
  return wrap([&] {
    *out = new loglab_profile{
        ResourceProfile::blend(base->profile, bump->profile, t)};
  });
}

void loglab_profile_free(loglab_profile* p) { delete p; }

loglab_status loglab_profile_value(const loglab_profile* p, double x,
                                   double* out) {
  if (!p || !out) return null_pointer();
  return wrap([&] { *out = p->profile.value(x); });
}

loglab_status loglab_profile_derivative(const loglab_profile* p, double x,
                                        double* out) {
  if (!p || !out) return null_pointer();
  return wrap([&] { *out = p->profile.derivative(x); });
}

loglab_status loglab_profile_describe(const loglab_profile* p, char* buf,
                                      size_t buflen) {
  if (!p || !buf) return null_pointer();
  if (buflen == 0) {
    g_last_error = "zero-length buffer";
    return LOGLAB_ERR_INVALID_ARGUMENT;
  }
  const std::string& d = p->profile.describe();
  const size_t k = std::min(buflen - 1, d.size());
  std::memcpy(buf, d.data(), k);
  buf[k] = '\0';
  return LOGLAB_OK;
}

loglab_status loglab_classify(const loglab_profile* p, size_t samples,
                              loglab_conditions* out) {
  if (!p || !out) return null_pointer();
  return wrap([&] {
    const ConditionReport r =
        classify_conditions(p->profile, samples == 0 ? 513 : samples);
    out->mean = r.mean;
    out->min_value = r.min_value;
    out->max_value = r.max_value;
    out->non_constant = r.non_constant ? 1 : 0;
    out->m0 = r.m0 ? 1 : 0;
    out->m1 = r.m1 ? 1 : 0;
    out->m2 = r.m2 ? 1 : 0;
    out->m2_direction = r.m2_direction;
    out->m3 = r.m3 ? 1 : 0;
    out->m3_peak = r.m3 ? r.m3_peak : 0.0;
  });
}

/* ---- steady states ----------------------------------------------------- */

loglab_status loglab_solve(const loglab_profile* p, double mu,
                           const loglab_solve_options* opt,
                           loglab_solution** out) {
  if (!p || !out) return null_pointer();
  return wrap([&] {
    loglab_solve_options o{};
    if (opt) o = *opt;
    const size_t n = o.n == 0 ? 1025 : o.n;

    ContinuationOptions copt;
    if (o.mu_start > 0.0) copt.mu_start = o.mu_start;
    if (o.ratio > 0.0) {
      if (o.ratio >= 1.0)
        throw InvalidArgumentError("continuation ratio must be below 1");
      copt.ratio = o.ratio;
    }
    if (o.tol_factor > 0.0) copt.newton.tol_factor = o.tol_factor;

    Grid grid(n);
    ResourceProfile prof = p->profile;
    Field mvals = prof.sample_values(grid);
    SteadyState state;
    if (o.use_parabolic) {
      const double mbar = integrate(grid, mvals);
      double mmax = mvals[0];
      for (double v : mvals) mmax = std::max(mmax, v);
      if (mmax <= 0.0)
        throw InvalidArgumentError("resource must be positive somewhere");
      SteadyState relaxed = parabolic_relax(
          grid, mu, mvals, Field(n, std::max(mbar, 1e-3 * mmax)));
      state = newton_solve(grid, mu, mvals, relaxed.theta, copt.newton);
    } else {
      state = solve_with_continuation(grid, mu, mvals, copt);
    }

    auto* sol = new loglab_solution{std::move(grid), std::move(prof),
                                    std::move(mvals), std::move(state),
                                    Sensitivity{}, Field{}, SweepRow{}};
    try {
      sol->sens = solve_sensitivity(sol->grid, sol->mvals, sol->state);
      sol->dtheta = derivative(sol->grid, sol->state.theta);
      sol->row = evaluate_state_row(sol->grid, sol->profile, sol->state);
    } catch (...) {
      delete sol;
      throw;
    }
    *out = sol;
  });
}

void loglab_solution_free(loglab_solution* s) { delete s; }

size_t loglab_solution_size(const loglab_solution* s) {
  return s ? s->grid.size() : 0;
}

static loglab_status field_entry(const Field& f, size_t i, double* out) {
  if (i >= f.size()) {
    g_last_error = "index out of range";
    return LOGLAB_ERR_INVALID_ARGUMENT;
  }
  *out = f[i];
  return LOGLAB_OK;
}

loglab_status loglab_solution_node(const loglab_solution* s, size_t i,
                                   double* out) {
  if (!s || !out) return null_pointer();
  return wrap([&] { *out = s->grid.node(i); });
}

loglab_status loglab_solution_theta(const loglab_solution* s, size_t i,
                                    double* out) {
  if (!s || !out) return null_pointer();
  return field_entry(s->state.theta, i, out);
}

loglab_status loglab_solution_theta_prime(const loglab_solution* s, size_t i,
                                          double* out) {
  if (!s || !out) return null_pointer();
  return field_entry(s->dtheta, i, out);
}

loglab_status loglab_solution_theta_mu(const loglab_solution* s, size_t i,
                                       double* out) {
  if (!s || !out) return null_pointer();
  return field_entry(s->sens.theta_mu, i, out);
}

static void fill_summary(const SweepRow& r, loglab_summary* out) {
  out->mu = r.mu;
  out->M = r.M;
  out->S = r.S;
  out->gap = r.gap;
  out->argmax_x = r.argmax_x;
  out->argmin_x = r.argmin_x;
  out->mass_p1 = r.mass_p1;
  out->mass_p2 = r.mass_p2;
  out->mass_p3 = r.mass_p3;
  out->grad_sq = r.grad_sq;
  out->theta_mu_at_argmax = r.theta_mu_at_argmax;
  out->theta_mu_at_0 = r.theta_mu_at_0;
  out->theta_mu_at_1 = r.theta_mu_at_1;
  out->min_theta_mu = r.min_theta_mu;
  out->max_theta_mu = r.max_theta_mu;
  out->theta_prime_interior_min = r.theta_prime_interior_min;
  out->theta_prime_interior_max = r.theta_prime_interior_max;
  out->theta_prime_sign_changes = r.theta_prime_sign_changes;
  out->argmax_is_interior = r.argmax_is_interior ? 1 : 0;
  out->bounds_ok = r.bounds_ok ? 1 : 0;
  out->sandwich_ok = r.sandwich_ok ? 1 : 0;
  out->identity_defect = r.identity_defect;
  out->newton_iters = r.newton_iters;
  out->residual = r.residual;
}

loglab_status loglab_solution_summary(const loglab_solution* s,
                                      loglab_summary* out) {
  if (!s || !out) return null_pointer();
  fill_summary(s->row, out);
  return LOGLAB_OK;
}

loglab_status loglab_fd_sensitivity_gap(const loglab_solution* s, double h_mu,
                                        double tol_factor, double* out) {
  if (!s || !out) return null_pointer();
  return wrap([&] {
    *out = fd_sensitivity_gap(s->grid, s->mvals, s->state, h_mu,
                              tol_factor > 0.0 ? tol_factor : 1e-3);
  });
}

loglab_status loglab_moment_check(const loglab_solution* s, double h_mu,
                                  double* fd, double* reference,
                                  double* rel_error) {
  if (!s || !fd || !reference || !rel_error) return null_pointer();
  return wrap([&] {
    const MomentCheck mc = moment_derivative_check(s->grid, s->mvals,
                                                   s->state, h_mu);
    *fd = mc.fd_derivative;
    *reference = mc.reference;
    *rel_error = mc.rel_error;
  });
}

/* ---- large-diffusion expansion ----------------------------------------- */

loglab_status loglab_asymptotics_compute(const loglab_profile* p, size_t n,
                                         loglab_asymptotics** out) {
  if (!p || !out) return null_pointer();
  return wrap([&] {
    Grid grid(n == 0 ? 1025 : n);
    Field mvals = p->profile.sample_values(grid);
    Asymptotics data = compute_asymptotics(grid, mvals);
    *out = new loglab_asymptotics{std::move(grid), std::move(mvals),
                                  std::move(data)};
  });
}

void loglab_asymptotics_free(loglab_asymptotics* a) { delete a; }

loglab_status loglab_asymptotics_mbar(const loglab_asymptotics* a,
                                      double* out) {
  if (!a || !out) return null_pointer();
  *out = a->data.mbar;
  return LOGLAB_OK;
}

loglab_status loglab_asymptotics_c_energy(const loglab_asymptotics* a,
                                          double* out) {
  if (!a || !out) return null_pointer();
  *out = a->data.c_energy;
  return LOGLAB_OK;
}

loglab_status loglab_asymptotics_c_quadrature(const loglab_asymptotics* a,
                                              double* out) {
  if (!a || !out) return null_pointer();
  *out = a->data.c_quadrature;
  return LOGLAB_OK;
}

loglab_status loglab_asymptotics_min_c_plus_rho(const loglab_asymptotics* a,
                                                double* out) {
  if (!a || !out) return null_pointer();
  *out = a->data.min_c_plus_rho;
  return LOGLAB_OK;
}

size_t loglab_asymptotics_size(const loglab_asymptotics* a) {
  return a ? a->grid.size() : 0;
}

loglab_status loglab_asymptotics_rho(const loglab_asymptotics* a, size_t i,
                                     double* out) {
  if (!a || !out) return null_pointer();
  if (i >= a->data.rho.size()) {
    g_last_error = "index out of range";
    return LOGLAB_ERR_INVALID_ARGUMENT;
  }
  *out = a->data.rho[i];
  return LOGLAB_OK;
}

loglab_status loglab_expansion_error(const loglab_asymptotics* a, double mu,
                                     double* out) {
  if (!a || !out) return null_pointer();
  return wrap([&] { *out = expansion_error(a->grid, a->mvals, a->data, mu); });
}

loglab_status loglab_convergence_order(const double* lambdas,
                                       const double* errors, size_t count,
                                       double* out) {
  if (!lambdas || !errors || !out) return null_pointer();
  return wrap([&] {
    std::vector<double> ls(lambdas, lambdas + count);
    std::vector<double> es(errors, errors + count);
    *out = convergence_order(ls, es);
  });
}

loglab_status loglab_hunt_cosine(double offset, double lo, double hi,
                                 size_t budget, size_t n,
                                 loglab_hunt_result* out) {
  if (!out) return null_pointer();
  return wrap([&] {
    Grid grid(n == 0 ? 1025 : n);
    HuntResult r = hunt_min_positive(
        grid,
        [offset](double t) {
          return ResourceProfile::cosine_offset(offset, t);
        },
        lo, hi, budget);
    out->found = r.found ? 1 : 0;
    out->parameter = r.parameter;
    out->min_c_plus_rho = r.min_c_plus_rho;
    out->c_energy = r.c_energy;
    out->tried = r.tried;
  });
}

loglab_status loglab_hunt_blend(const loglab_profile* base,
                                const loglab_profile* bump, double lo,
                                double hi, size_t budget, size_t n,
                                loglab_hunt_result* out) {
  if (!base || !bump || !out) return null_pointer();
  return wrap([&] {
    Grid grid(n == 0 ? 1025 : n);
    const ResourceProfile b = base->profile;
    const ResourceProfile u = bump->profile;
    HuntResult r = hunt_min_positive(
        grid, [&b, &u](double t) { return ResourceProfile::blend(b, u, t); },
        lo, hi, budget);
    out->found = r.found ? 1 : 0;
    out->parameter = r.parameter;
    out->min_c_plus_rho = r.min_c_plus_rho;
    out->c_energy = r.c_energy;
    out->tried = r.tried;
  });
}

/* ---- diffusion sweeps --------------------------------------------------- */

loglab_status loglab_sweep_run(const loglab_profile* p, const double* mus,
                               size_t count, size_t n, int independent,
                               int parallel, loglab_sweep** out) {
  if (!p || !mus || !out) return null_pointer();
  return wrap([&] {
    Grid grid(n == 0 ? 1025 : n);
    SweepOptions opt;
    opt.mus.assign(mus, mus + count);
    opt.independent = independent != 0;
    opt.parallel = parallel != 0;
    SweepResult result = run_sweep(grid, p->profile, opt);
    *out = new loglab_sweep{std::move(grid), std::move(result)};
  });
}

void loglab_sweep_free(loglab_sweep* s) { delete s; }

size_t loglab_sweep_rows(const loglab_sweep* s) {
  return s ? s->result.rows.size() : 0;
}

size_t loglab_sweep_failed(const loglab_sweep* s) {
  return s ? s->result.failed : 0;
}

loglab_status loglab_sweep_row_mu(const loglab_sweep* s, size_t row,
                                  double* out) {
  if (!s || !out) return null_pointer();
  if (row >= s->result.rows.size()) {
    g_last_error = "row index out of range";
    return LOGLAB_ERR_INVALID_ARGUMENT;
  }
  *out = s->result.rows[row].mu;
  return LOGLAB_OK;
}

int loglab_sweep_row_ok(const loglab_sweep* s, size_t row) {
  if (!s || row >= s->result.rows.size()) return 0;
  return s->result.rows[row].ok ? 1 : 0;
}

loglab_status loglab_sweep_row_summary(const loglab_sweep* s, size_t row,
                                       loglab_summary* out) {
  if (!s || !out) return null_pointer();
  if (row >= s->result.rows.size()) {
    g_last_error = "row index out of range";
    return LOGLAB_ERR_INVALID_ARGUMENT;
  }
  const SweepRow& r = s->result.rows[row];
  if (!r.ok) {
    g_last_error = r.error;
    return LOGLAB_ERR_NO_CONVERGENCE;
  }
  fill_summary(r, out);
  return LOGLAB_OK;
}

loglab_status loglab_sweep_monotonicity(const loglab_sweep* s,
                                        loglab_column column, int direction,
                                        double slack,
                                        loglab_monotonicity* out) {
  if (!s || !out) return null_pointer();
  return wrap([&] {
    double SweepRow::*member = nullptr;
    switch (column) {
      case LOGLAB_COL_M: member = &SweepRow::M; break;
      case LOGLAB_COL_S: member = &SweepRow::S; break;
      case LOGLAB_COL_GAP: member = &SweepRow::gap; break;
      case LOGLAB_COL_MASS_P1: member = &SweepRow::mass_p1; break;
      case LOGLAB_COL_MASS_P2: member = &SweepRow::mass_p2; break;
      case LOGLAB_COL_MASS_P3: member = &SweepRow::mass_p3; break;
      case LOGLAB_COL_GRAD_SQ: member = &SweepRow::grad_sq; break;
    }
    if (!member) throw InvalidArgumentError("unknown sweep column");
    const MonotonicityReport rep =
        monotonicity_verdict(s->result, member, direction, slack);
    switch (rep.verdict) {
      case Verdict::pass: out->verdict = LOGLAB_VERDICT_PASS; break;
      case Verdict::fail: out->verdict = LOGLAB_VERDICT_FAIL; break;
      case Verdict::inconclusive:
        out->verdict = LOGLAB_VERDICT_INCONCLUSIVE;
        break;
    }
    out->pairs = rep.pairs;
    out->witness_index = rep.witness_index;
    out->witness_delta = rep.witness_delta;
  });
}

} /* extern "C" */
