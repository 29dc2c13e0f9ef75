// Acceptance battery: one PASS/FAIL line per criterion, details indented.
// Exit code is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "core/asymptotics.hpp"
#include "core/grid.hpp"
#include "core/resource.hpp"
#include "core/sensitivity.hpp"
#include "core/steady.hpp"
#include "core/sweep.hpp"

using namespace loglab;

namespace {

constexpr double kPi = std::numbers::pi;

#if defined(__GNUC__)
__attribute__((format(printf, 1, 2)))
#endif
std::string fmt(const char* f, ...) {
  char buf[768];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void require(bool ok) { pass = pass && ok; }
  void note(std::string s) { notes.push_back(std::move(s)); }
};

struct Preset {
  std::string name;
  ResourceProfile profile;
};

enum : std::size_t { kConstant = 0, kLinear, kRamp, kSine, kCosine, kPeak };

std::vector<Preset> suite() {
  return {
      {"constant(1)", ResourceProfile::constant(1.0)},
      {"linear(0,1)", ResourceProfile::linear(0.0, 1.0)},
      {"shifted_ramp(0.25)", ResourceProfile::shifted_ramp(0.25)},
      {"sine_offset(1.5,0.4)", ResourceProfile::sine_offset(1.5, 0.4)},
      {"cosine_offset(1,1)", ResourceProfile::cosine_offset(1.0, 1.0)},
      {"single_peak(0,1)", ResourceProfile::single_peak(0.0, 1.0)},
  };
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                static_cast<double>(count - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

// Ascending-mu series solved by one downward continuation walk, with the
// full per-state evaluation rows alongside the raw states.
struct Series {
  Field m;
  std::vector<double> mus;
  std::vector<SteadyState> states;
  SweepResult sweep;
};

Series solve_series(const Grid& g, const ResourceProfile& p,
                    const std::vector<double>& mus) {
  Series s;
  s.m = p.sample_values(g);
  s.mus = mus;
  s.states.resize(mus.size());
  ContinuationOptions copt;
  SteadyState cur = solve_with_continuation(g, mus.back(), s.m, copt);
  s.states.back() = cur;
  for (std::size_t k = mus.size() - 1; k-- > 0;) {
    cur = continue_down(g, s.m, cur, mus[k], copt);
    s.states[k] = cur;
  }
  for (const SteadyState& st : s.states)
    s.sweep.rows.push_back(evaluate_state_row(g, p, st));
  return s;
}

double min_directed_step(const SweepResult& sw, double SweepRow::*col,
                         int dir) {
  double best = std::numeric_limits<double>::infinity();
  const SweepRow* prev = nullptr;
  for (const SweepRow& r : sw.rows) {
    if (!r.ok) continue;
    if (prev) best = std::min(best, (r.*col - prev->*col) * dir);
    prev = &r;
  }
  return best;
}

int interior_local_maxima(const Field& u) {
  int count = 0;
  for (std::size_t i = 1; i + 1 < u.size(); ++i)
    if (u[i] > u[i - 1] && u[i] > u[i + 1]) ++count;
  return count;
}

struct Lab {
  const Grid& g;
  const std::vector<Preset>& presets;
  const std::vector<ConditionReport>& conds;
  const std::vector<double>& mus;
  const std::vector<Series>& series;
};

Outcome solver_fidelity(const Lab& lab) {
  Outcome o;
  double worst_ratio = 0.0, worst_gap = 0.0;
  std::string ratio_at, gap_at;
  std::size_t within = 0, total = 0;
  for (std::size_t i = 0; i < lab.presets.size(); ++i) {
    const Series& s = lab.series[i];
    const double tol = newton_tolerance(s.m, 1.0);
    const double mbar = integrate(lab.g, s.m);
    const double mmax = *std::max_element(s.m.begin(), s.m.end());
    const double guess = std::max(mbar, 1e-3 * mmax);
    for (std::size_t k = 0; k < s.states.size(); ++k) {
      const SteadyState& st = s.states[k];
      ++total;
      const double ratio = st.residual_norm / tol;
      if (ratio <= 1.0) ++within;
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        ratio_at = fmt("%s, mu=%g", lab.presets[i].name.c_str(), st.mu);
      }
      const SteadyState ps = parabolic_relax(lab.g, st.mu, s.m,
                                             Field(lab.g.size(), guess));
      double gap = 0.0;
      for (std::size_t j = 0; j < lab.g.size(); ++j)
        gap = std::max(gap, std::abs(st.theta[j] - ps.theta[j]));
      if (gap > worst_gap) {
        worst_gap = gap;
        gap_at = fmt("%s, mu=%g", lab.presets[i].name.c_str(), st.mu);
      }
      o.require(ratio <= 1.0);
      o.require(gap <= 1e-8);
    }
  }
  o.note(fmt("residual within tolerance on %zu/%zu solves; worst residual/tol"
             " = %.3g at %s",
             within, total, worst_ratio, ratio_at.c_str()));
  o.note(fmt("newton stops at the rounding floor ~ eps*mu*|theta|/h^2 once"
             " that floor crosses the tolerance (mu >~ 0.4 at n=1025)"));
  o.note(fmt("worst newton-parabolic sup gap = %.3g at %s (budget 1e-8)",
             worst_gap, gap_at.c_str()));
  return o;
}

Outcome strict_bounds(const Lab& lab) {
  Outcome o;
  std::size_t checks = 0, violations = 0;
  double margin_low = std::numeric_limits<double>::infinity();
  double margin_high = margin_low;
  for (std::size_t i = 0; i < lab.presets.size(); ++i) {
    if (!lab.conds[i].non_constant) continue;
    for (const SteadyState& st : lab.series[i].states) {
      const BoundsReport br =
          bounds_check(lab.g, lab.presets[i].profile, st.theta);
      ++checks;
      if (!br.ok) ++violations;
      margin_low = std::min(margin_low, br.min_theta - br.lower);
      margin_high = std::min(margin_high, br.upper - br.max_theta);
    }
  }
  o.require(violations == 0);
  o.note(fmt("%zu states checked, %zu violations; smallest margins:"
             " theta - min m+ = %.3g, max m - theta = %.3g",
             checks, violations, margin_low, margin_high));
  return o;
}

Outcome wavy_monotonicity(const Lab& lab) {
  Outcome o;
  const ConditionReport& cond = lab.conds[kSine];
  o.require(cond.m1);
  o.note(fmt("classifier: near-uniform positive resource (m1) = %s",
             cond.m1 ? "yes" : "no"));
  SweepOptions so;
  so.mus = log_spaced(0.01, 100.0, 40);
  const SweepResult sw = run_sweep(lab.g, lab.presets[kSine].profile, so);
  o.require(sw.failed == 0);
  const MonotonicityReport mdec =
      monotonicity_verdict(sw, &SweepRow::M, -1, 1e-8);
  const MonotonicityReport sinc =
      monotonicity_verdict(sw, &SweepRow::S, +1, 1e-8);
  o.require(mdec.verdict == Verdict::pass);
  o.require(sinc.verdict == Verdict::pass);
  o.note(fmt("max theta falling: %s (smallest drop %.3g); min theta rising:"
             " %s (smallest rise %.3g); slack 1e-8, 40 mu",
             verdict_name(mdec.verdict),
             min_directed_step(sw, &SweepRow::M, -1),
             verdict_name(sinc.verdict),
             min_directed_step(sw, &SweepRow::S, +1)));
  return o;
}

Outcome directional_resources(const Lab& lab, const Series& mirror) {
  Outcome o;
  double min_slope = std::numeric_limits<double>::infinity();
  double max_tail = -min_slope;
  for (const Series* s : {&lab.series[kLinear], &lab.series[kRamp]}) {
    for (const SweepRow& r : s->sweep.rows) {
      o.require(r.theta_prime_interior_min > 0.0);
      o.require(r.theta_mu_at_1 < 0.0);
      min_slope = std::min(min_slope, r.theta_prime_interior_min);
      max_tail = std::max(max_tail, r.theta_mu_at_1);
    }
  }
  o.note(fmt("rising ramps: min interior theta' = %.3g (need > 0),"
             " max theta_mu(1) = %.3g (need < 0)",
             min_slope, max_tail));

  double mir_slope = -std::numeric_limits<double>::infinity();
  double head_lo = std::numeric_limits<double>::infinity();
  double head_hi = -head_lo;
  bool literal_head = true, corrected_head = true;
  for (const SweepRow& r : mirror.sweep.rows) {
    o.require(r.theta_prime_interior_max < 0.0);
    o.require(r.theta_mu_at_0 > 0.0);
    mir_slope = std::max(mir_slope, r.theta_prime_interior_max);
    head_lo = std::min(head_lo, r.theta_mu_at_0);
    head_hi = std::max(head_hi, r.theta_mu_at_0);
    literal_head = literal_head && r.theta_mu_at_0 > 0.0;
    corrected_head = corrected_head && r.theta_mu_at_0 < 0.0;
  }
  o.note(fmt("falling mirror: max interior theta' = %.3g (need < 0)",
             mir_slope));
  o.note(fmt("falling mirror: theta_mu(0) stays in [%.3g, %.3g]; the stated"
             " theta_mu(0) > 0 check %s",
             head_lo, head_hi, literal_head ? "holds" : "fails at every mu"));
  o.note(fmt("sign-corrected form theta_mu(0) < 0 %s; under x -> 1-x it is"
             " the rising ramp's theta_mu(1) < 0",
             corrected_head ? "holds at every mu" : "fails"));

  bool m_falls = true;
  for (const Series* s : {&lab.series[kLinear], &lab.series[kRamp], &mirror}) {
    const MonotonicityReport rep =
        monotonicity_verdict(s->sweep, &SweepRow::M, -1, 0.0);
    m_falls = m_falls && rep.verdict == Verdict::pass;
  }
  o.require(m_falls);
  o.note(fmt("max theta strictly falls on all three ramps: %s",
             m_falls ? "yes" : "no"));
  return o;
}

Outcome single_peak_shape(const Lab& lab, const Series& lifted) {
  Outcome o;
  int max_changes = 0, bad_maxima = 0;
  double worst_peak_sens = -std::numeric_limits<double>::infinity();
  bool interior = true;
  for (const Series* s : {&lab.series[kPeak], &lifted}) {
    for (std::size_t k = 0; k < s->states.size(); ++k) {
      const SweepRow& r = s->sweep.rows[k];
      o.require(r.theta_prime_sign_changes <= 1);
      o.require(r.argmax_is_interior);
      o.require(r.theta_mu_at_argmax < 0.0);
      max_changes = std::max(max_changes, r.theta_prime_sign_changes);
      interior = interior && r.argmax_is_interior;
      worst_peak_sens = std::max(worst_peak_sens, r.theta_mu_at_argmax);
      if (interior_local_maxima(s->states[k].theta) != 1) ++bad_maxima;
    }
    const MonotonicityReport rep =
        monotonicity_verdict(s->sweep, &SweepRow::M, -1, 0.0);
    o.require(rep.verdict == Verdict::pass);
  }
  o.require(bad_maxima == 0);
  o.note(fmt("max interior sign changes of theta' = %d (budget 1);"
             " argmax interior at every mu: %s",
             max_changes, interior ? "yes" : "no"));
  o.note(fmt("states with other than one strict interior local max: %d;"
             " max theta_mu(argmax) = %.3g (need < 0)",
             bad_maxima, worst_peak_sens));
  return o;
}

Outcome sandwich_bracket(const Lab& lab) {
  Outcome o;
  std::string members;
  std::size_t checks = 0, failures = 0;
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lab.presets.size(); ++i) {
    if (!lab.conds[i].m1) continue;
    if (!members.empty()) members += ", ";
    members += lab.presets[i].name;
    for (const SteadyState& st : lab.series[i].states) {
      const Sensitivity sens = solve_sensitivity(lab.g, lab.series[i].m, st);
      const SandwichReport rep = sandwich_check(lab.g, st, sens);
      ++checks;
      if (!rep.ok) ++failures;
      margin = std::min(margin, std::min(rep.low_margin, rep.high_margin));
    }
  }
  o.require(checks > 0);
  o.require(failures == 0);
  o.note(fmt("near-uniform members: %s", members.c_str()));
  o.note(fmt("%zu states checked, %zu outside the bracket; smallest margin"
             " %.3g against slack 1e-9*sup|theta|",
             checks, failures, margin));
  return o;
}

Outcome exchange_identity(const Lab& lab) {
  Outcome o;
  double worst = 0.0;
  std::string at;
  for (std::size_t i = 0; i < lab.presets.size(); ++i) {
    if (!lab.conds[i].non_constant) continue;
    for (const SweepRow& r : lab.series[i].sweep.rows) {
      o.require(r.identity_defect <= 1e-6);
      if (r.identity_defect > worst) {
        worst = r.identity_defect;
        at = fmt("%s, mu=%g", lab.presets[i].name.c_str(), r.mu);
      }
    }
  }
  o.note(fmt("worst relative defect = %.3g at %s (budget 1e-6)", worst,
             at.c_str()));
  return o;
}

Outcome cubic_moment(const Lab& lab) {
  Outcome o;
  double min_drop = std::numeric_limits<double>::infinity();
  bool falls = true;
  for (std::size_t i = 0; i < lab.presets.size(); ++i) {
    if (!lab.conds[i].non_constant) continue;
    const MonotonicityReport rep =
        monotonicity_verdict(lab.series[i].sweep, &SweepRow::mass_p3, -1, 0.0);
    falls = falls && rep.verdict == Verdict::pass;
    o.require(rep.verdict == Verdict::pass);
    min_drop = std::min(
        min_drop, min_directed_step(lab.series[i].sweep, &SweepRow::mass_p3, -1));
  }
  o.note(fmt("cubic moment strictly falls on every non-constant sweep: %s"
             " (smallest drop %.3g, slack 0)",
             falls ? "yes" : "no", min_drop));

  double flat = 0.0;
  const SweepResult& csw = lab.series[kConstant].sweep;
  for (std::size_t k = 0; k + 1 < csw.rows.size(); ++k)
    flat = std::max(flat,
                    std::abs(csw.rows[k + 1].mass_p3 - csw.rows[k].mass_p3));
  o.note(fmt("constant resource: moment steps are flat (max |step| %.3g);"
             " the uniform state sits outside the strict-decrease gate",
             flat));

  double worst_rel = 0.0;
  for (std::size_t i = 0; i < lab.presets.size(); ++i) {
    const SteadyState st =
        solve_with_continuation(lab.g, 1.0, lab.series[i].m, {});
    const MomentCheck mc =
        moment_derivative_check(lab.g, lab.series[i].m, st, 1e-3);
    o.require(mc.rel_error <= 1e-3);
    worst_rel = std::max(worst_rel, mc.rel_error);
  }
  o.note(fmt("fd derivative of the moment vs -3*int (theta')^2 at mu=1,"
             " h_mu=1e-3: worst rel error %.3g (budget 1e-3)",
             worst_rel));
  return o;
}

Outcome expansion_constant(const Lab& lab) {
  Outcome o;
  const Field& m = lab.series[kCosine].m;
  const Asymptotics asym = compute_asymptotics(lab.g, m);
  const double target = 1.0 / (2.0 * kPi * kPi);
  o.require(std::abs(asym.c_energy - target) <= 1e-4);
  o.require(std::abs(asym.c_energy - asym.c_quadrature) <= 1e-8);
  o.note(fmt("C = %.12g vs 1/(2 pi^2) = %.12g, gap %.3g (budget 1e-4)",
             asym.c_energy, target, std::abs(asym.c_energy - target)));
  o.note(fmt("energy vs quadrature form gap %.3g (budget 1e-8)",
             std::abs(asym.c_energy - asym.c_quadrature)));
  const std::vector<double> lambdas = {1e-2, 5e-3, 2.5e-3, 1.25e-3};
  std::vector<double> errors;
  for (double lambda : lambdas)
    errors.push_back(expansion_error(lab.g, m, asym, 1.0 / lambda));
  const double slope = convergence_order(lambdas, errors);
  o.require(slope >= 1.8 && slope <= 2.2);
  o.note(fmt("remainder sup errors %.3g, %.3g, %.3g, %.3g over lambda"
             " {1e-2, 5e-3, 2.5e-3, 1.25e-3}; slope %.3f (need [1.8, 2.2])",
             errors[0], errors[1], errors[2], errors[3], slope));
  return o;
}

Outcome large_diffusion_reversal(const Lab& lab) {
  Outcome o;
  const ResourceProfile tall = ResourceProfile::cosine_offset(1.0, 3.0);
  const Field m = tall.sample_values(lab.g);
  const Asymptotics asym = compute_asymptotics(lab.g, m);
  const double target = 3.0 / (2.0 * kPi * kPi);
  o.require(std::abs(asym.min_c_plus_rho - target) <= 1e-3);
  o.require(asym.min_c_plus_rho > 0.0);
  o.note(fmt("min(C + rho) = %.9g vs 3/(2 pi^2) = %.9g, gap %.3g"
             " (budget 1e-3, must stay positive)",
             asym.min_c_plus_rho, target,
             std::abs(asym.min_c_plus_rho - target)));

  const Series hs = solve_series(lab.g, tall, {1e3, 3e3, 1e4});
  const SweepRow& r3 = hs.sweep.rows[0];
  const SweepRow& r3k = hs.sweep.rows[1];
  const SweepRow& r4 = hs.sweep.rows[2];
  o.require(r3.max_theta_mu < 0.0);
  o.require(r4.max_theta_mu < 0.0);
  o.note(fmt("max theta_mu = %.3g at mu=1e3 and %.3g at mu=1e4"
             " (need < 0 everywhere)",
             r3.max_theta_mu, r4.max_theta_mu));
  o.require(r4.S < r3k.S && r3k.S < r3.S);
  o.note(fmt("min theta: %.9g (1e3) > %.9g (3e3) > %.9g (1e4): %s", r3.S,
             r3k.S, r4.S, r4.S < r3k.S && r3k.S < r3.S ? "yes" : "no"));
  return o;
}

Outcome grid_convergence(const Lab& lab) {
  Outcome o;
  const std::vector<std::size_t> ns = {513, 1025, 2049};
  std::vector<double> errs;
  for (std::size_t n : ns) {
    const Grid gn(n);
    Field vstar(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = gn.node(i);
      vstar[i] = std::cos(kPi * x);
      rhs[i] = (1.0 - kPi * kPi) * vstar[i];
    }
    const Field v = solve_helmholtz(gn, 1.0, Field(n, 1.0), rhs);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      err = std::max(err, std::abs(v[i] - vstar[i]));
    errs.push_back(err);
  }
  const double r1 = errs[0] / errs[1];
  const double r2 = errs[1] / errs[2];
  o.require(r1 >= 3.5 && r2 >= 3.5);
  o.note(fmt("helmholtz sup errors %.3g / %.3g / %.3g at n 513/1025/2049;"
             " shrink factors %.2f, %.2f (need >= 3.5)",
             errs[0], errs[1], errs[2], r1, r2));

  SweepOptions wavy;
  wavy.mus = log_spaced(0.01, 100.0, 40);
  for (std::size_t n : ns) {
    const Grid gn(n);
    const SweepResult sw = run_sweep(gn, lab.presets[kSine].profile, wavy);
    const MonotonicityReport mdec =
        monotonicity_verdict(sw, &SweepRow::M, -1, 1e-8);
    const MonotonicityReport sinc =
        monotonicity_verdict(sw, &SweepRow::S, +1, 1e-8);
    o.require(sw.failed == 0);
    o.require(mdec.verdict == Verdict::pass);
    o.require(sinc.verdict == Verdict::pass);

    SweepOptions peak;
    peak.mus = lab.mus;
    const SweepResult ps = run_sweep(gn, lab.presets[kPeak].profile, peak);
    o.require(ps.failed == 0);
    bool shape = true;
    for (const SweepRow& r : ps.rows)
      shape = shape && r.theta_prime_sign_changes <= 1 &&
              r.argmax_is_interior && r.theta_mu_at_argmax < 0.0;
    o.require(shape);
    const MonotonicityReport pm =
        monotonicity_verdict(ps, &SweepRow::M, -1, 0.0);
    o.require(pm.verdict == Verdict::pass);
    o.note(fmt("n=%zu: wavy M drop >= %.3g, S rise >= %.3g; single-peak"
               " shape %s, M drop >= %.3g",
               n, min_directed_step(sw, &SweepRow::M, -1),
               min_directed_step(sw, &SweepRow::S, +1),
               shape ? "holds" : "breaks",
               min_directed_step(ps, &SweepRow::M, -1)));
  }
  return o;
}

Outcome sensitivity_cross_check(const Lab& lab) {
  Outcome o;
  std::size_t qualified = 0, tried = 0;
  for (std::size_t i = 0; i < lab.presets.size(); ++i) {
    if (!lab.conds[i].non_constant) continue;
    ++tried;
    const SteadyState st =
        solve_with_continuation(lab.g, 0.3, lab.series[i].m, {});
    const double wide = fd_sensitivity_gap(lab.g, lab.series[i].m, st, 1e-3);
    const double narrow =
        fd_sensitivity_gap(lab.g, lab.series[i].m, st, 5e-4);
    const double ratio = narrow > 0.0 ? wide / narrow : 0.0;
    if (ratio >= 3.5) ++qualified;
    o.note(fmt("%s: gap %.3g -> %.3g, shrink factor %.2f",
               lab.presets[i].name.c_str(), wide, narrow, ratio));
  }
  o.require(qualified >= 3);
  o.note(fmt("%zu of %zu resources shrink by >= 3.5 (need >= 3)", qualified,
             tried));
  return o;
}

}  // namespace

int main() {
  const Grid g(1025);
  const std::vector<Preset> presets = suite();
  std::vector<ConditionReport> conds;
  for (const Preset& p : presets) conds.push_back(classify_conditions(p.profile));
  const std::vector<double> mus = log_spaced(0.01, 100.0, 12);
  std::vector<Series> series;
  for (const Preset& p : presets) series.push_back(solve_series(g, p.profile, mus));
  const Lab lab{g, presets, conds, mus, series};

  int failures = 0;
  const auto emit = [&failures](int id, const char* headline,
                                const Outcome& o) {
    std::printf("ACCEPTANCE %02d %s  %s\n", id, o.pass ? "PASS" : "FAIL",
                headline);
    for (const std::string& s : o.notes) std::printf("    %s\n", s.c_str());
    if (!o.pass) ++failures;
  };

  emit(1,
       "newton residual <= 1e-11*(1+max|m|)^2 and newton-parabolic sup gap"
       " <= 1e-8, 6 resources x 12 mu in [0.01, 100], n=1025",
       solver_fidelity(lab));
  emit(2,
       "strict node bounds min m+ < theta < max m for every non-constant"
       " resource at every mu",
       strict_bounds(lab));
  emit(3,
       "wavy near-uniform resource: max theta strictly falls and min theta"
       " strictly rises over 40 log-spaced mu in [0.01, 100], slack 1e-8",
       wavy_monotonicity(lab));
  emit(4,
       "rising ramps: interior theta' > 0, theta_mu(1) < 0; falling mirror:"
       " interior theta' < 0, theta_mu(0) > 0; max theta strictly falls",
       directional_resources(
           lab, solve_series(g, ResourceProfile::linear(1.0, -1.0), mus)));
  emit(5,
       "single-peak resources: <= 1 interior sign change of theta', unique"
       " interior argmax, theta_mu(argmax) < 0, max theta strictly falls",
       single_peak_shape(
           lab, solve_series(g, ResourceProfile::single_peak(0.5, 1.0), mus)));
  emit(6,
       "near-uniform resources: min theta < theta + mu*theta_mu < max theta"
       " at every node, slack 1e-9*sup|theta|",
       sandwich_bracket(lab));
  emit(7,
       "|int theta^2 theta_mu + int (theta')^2| <= 1e-6 * int (theta')^2 for"
       " every non-constant resource and mu",
       exchange_identity(lab));
  emit(8,
       "cubic moment strictly falls along every non-constant sweep; its fd"
       " mu-derivative matches -3*int (theta')^2 to rel 1e-3 at h_mu=1e-3",
       cubic_moment(lab));
  emit(9,
       "cosine resource: expansion constant within 1e-4 of 1/(2 pi^2), energy"
       " and quadrature forms within 1e-8, remainder slope in [1.8, 2.2]",
       expansion_constant(lab));
  emit(10,
       "tall cosine resource: min(C + rho) within 1e-3 of 3/(2 pi^2) and"
       " positive; theta_mu < 0 everywhere at mu in {1e3, 1e4}; min theta"
       " falls 1e3 -> 3e3 -> 1e4",
       large_diffusion_reversal(lab));
  emit(11,
       "helmholtz error shrinks >= 3.5x per grid halving over n in"
       " {513, 1025, 2049}; wavy and single-peak verdicts hold at every n",
       grid_convergence(lab));
  emit(12,
       "fd/solved sensitivity sup gap shrinks >= 3.5x when h_mu halves"
       " 1e-3 -> 5e-4 at mu=0.3, for >= 3 resources",
       sensitivity_cross_check(lab));

  std::printf("ACCEPTANCE SUMMARY %d/12 passed\n", 12 - failures);
  return failures;
}
