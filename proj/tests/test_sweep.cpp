#include <doctest.h>

#include <cmath>

#include "core/errors.hpp"
#include "core/grid.hpp"
#include "core/resource.hpp"
#include "core/sweep.hpp"

using namespace loglab;

TEST_CASE("parabolic extremum refinement is exact on parabolas") {
  Grid g(11);
  Field u(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.node(i);
    u[i] = -(x - 0.33) * (x - 0.33);
  }
  CHECK(parabolic_extremum(g, u, 3) == doctest::Approx(0.33).epsilon(1e-12));
  CHECK(parabolic_extremum(g, u, 0) == 0.0);          // boundary: no stencil
  CHECK(parabolic_extremum(g, Field(g.size(), 2.0), 5) ==
        doctest::Approx(0.5).epsilon(1e-12));         // flat: node itself
}

TEST_CASE("sign changes ignore sub-floor noise") {
  CHECK(sign_changes({1.0, -1.0, 1.0}) == 2);
  CHECK(sign_changes({1.0, 1e-15, -1.0}) == 1);
  CHECK(sign_changes({0.0, 0.0, 0.0}) == 0);
  CHECK(sign_changes({0.0, 0.0, 5.0}) == 0);
  CHECK(sign_changes({-2.0, -1.0, -0.5}) == 0);
}

TEST_CASE("continuation sweep on a bounded-oscillation habitat") {
  Grid g(129);
  auto prof = ResourceProfile::sine_offset(1.5, 0.4);
  SweepOptions opt;
  opt.mus = {10.0, 0.1, 1.0};  // scrambled on purpose
  SweepResult sweep = run_sweep(g, prof, opt);
  REQUIRE(sweep.rows.size() == 3);
  CHECK(sweep.failed == 0);
  CHECK(sweep.rows[0].mu == doctest::Approx(0.1));
  CHECK(sweep.rows[2].mu == doctest::Approx(10.0));
  for (const SweepRow& r : sweep.rows) {
    CHECK(r.ok);
    CHECK(r.bounds_ok);
    CHECK(r.sandwich_ok);
    CHECK(r.gap == doctest::Approx(r.M - r.S).epsilon(1e-14));
    CHECK(r.mass_p1 > 0.0);
    CHECK(r.identity_defect < 1e-7);
  }
  // max falls and min rises as diffusion grows
  CHECK(monotonicity_verdict(sweep, &SweepRow::M, -1, 1e-8).verdict ==
        Verdict::pass);
  CHECK(monotonicity_verdict(sweep, &SweepRow::S, +1, 1e-8).verdict ==
        Verdict::pass);
  CHECK(monotonicity_verdict(sweep, &SweepRow::mass_p3, -1, 1e-8).verdict ==
        Verdict::pass);
}

TEST_CASE("constant habitat sweeps are inconclusive, not passes") {
  Grid g(65);
  auto prof = ResourceProfile::constant(1.0);
  SweepOptions opt;
  opt.mus = {0.5, 1.0, 2.0};
  SweepResult sweep = run_sweep(g, prof, opt);
  CHECK(sweep.failed == 0);
  MonotonicityReport rep =
      monotonicity_verdict(sweep, &SweepRow::M, -1, 1e-8);
  CHECK(rep.verdict == Verdict::inconclusive);
  CHECK(rep.detail == "step within the slack band");
}

TEST_CASE("monotonicity verdicts on hand-built sweeps") {
  SweepResult sweep;
  auto row = [](double mu, double M, bool ok) {
    SweepRow r;
    r.mu = mu;
    r.M = M;
    r.ok = ok;
    return r;
  };
  sweep.rows = {row(1, 5.0, true), row(2, 4.0, true), row(3, 4.5, true)};
  MonotonicityReport rep =
      monotonicity_verdict(sweep, &SweepRow::M, -1, 1e-6);
  CHECK(rep.verdict == Verdict::fail);
  CHECK(rep.witness_index == 1);
  CHECK(rep.witness_delta == doctest::Approx(0.5));

  sweep.rows = {row(1, 5.0, true), row(2, 4.0, false), row(3, 4.5, true)};
  rep = monotonicity_verdict(sweep, &SweepRow::M, -1, 1e-6);
  CHECK(rep.verdict == Verdict::pass);  // failed row is skipped
  CHECK(rep.pairs == 1);

  sweep.rows = {row(1, 5.0, false), row(2, 4.0, false), row(3, 4.5, true)};
  rep = monotonicity_verdict(sweep, &SweepRow::M, -1, 1e-6);
  CHECK(rep.verdict == Verdict::inconclusive);
  CHECK(rep.detail == "fewer than two solved rows");

  CHECK_THROWS_AS(monotonicity_verdict(sweep, &SweepRow::M, 0, 1e-6),
                  InvalidArgumentError);
}

TEST_CASE("independent and parallel sweeps match continuation") {
  Grid g(129);
  auto prof = ResourceProfile::sine_offset(1.5, 0.4);
  SweepOptions cont;
  cont.mus = {0.5, 2.0};
  SweepResult a = run_sweep(g, prof, cont);

  SweepOptions indep = cont;
  indep.independent = true;
  SweepResult b = run_sweep(g, prof, indep);

  SweepOptions par = indep;
  par.parallel = true;
  SweepResult c = run_sweep(g, prof, par);

  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(std::abs(a.rows[k].M - b.rows[k].M) < 1e-8);
    CHECK(b.rows[k].M == c.rows[k].M);  // same arithmetic, thread or not
    CHECK(b.rows[k].mass_p2 == c.rows[k].mass_p2);
  }
}

TEST_CASE("uniform decay of the sensitivity at large diffusion") {
  Grid g(129);
  auto prof = ResourceProfile::cosine_offset(1.0, 3.0);
  SweepOptions opt;
  opt.mus = {1e3};
  SweepResult sweep = run_sweep(g, prof, opt);
  const SweepRow& r = sweep.rows[0];
  CHECK(r.ok);
  CHECK(r.max_theta_mu < 0.0);              // theta falls everywhere in mu
  CHECK(r.theta_prime_interior_max < 0.0);  // and tracks the falling habitat
}

TEST_CASE("sweep input validation") {
  Grid g(65);
  auto prof = ResourceProfile::constant(1.0);
  SweepOptions none;
  CHECK_THROWS_AS(run_sweep(g, prof, none), InvalidArgumentError);
  SweepOptions bad;
  bad.mus = {1.0, -2.0};
  CHECK_THROWS_AS(run_sweep(g, prof, bad), InvalidArgumentError);
}
