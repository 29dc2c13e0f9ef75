#include <doctest.h>

#include <cmath>
#include <numbers>

#include "core/errors.hpp"
#include "core/grid.hpp"
#include "core/resource.hpp"
#include "core/steady.hpp"

using namespace loglab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("constant habitat settles at theta == 1") {
  Grid g(129);
  Field m(g.size(), 1.0);
  SteadyState s = newton_solve(g, 3.0, m, Field(g.size(), 0.7));
  CHECK(s.newton_iters <= 8);
  CHECK(s.residual_norm <= newton_tolerance(m, 1.0));
  for (double v : s.theta) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("residual of a flat field is the zero-diffusion defect") {
  // theta == 1 makes the diffusion term vanish exactly, leaving m - 1.
  Grid g(257);
  auto prof = ResourceProfile::cosine_offset(1.0, 1.0);
  Field m = prof.sample_values(g);
  Field r = steady_residual(g, 5.0, m, Field(g.size(), 1.0));
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(std::abs(r[i] - std::cos(kPi * g.node(i))) < 1e-15);
}

TEST_CASE("newton converges to tolerance on a coarse grid") {
  Grid g(65);
  Field m = ResourceProfile::sine_offset(1.5, 0.4).sample_values(g);
  SteadyState s = newton_solve(g, 1.0, m, Field(g.size(), 1.5));
  CHECK(s.residual_norm <= newton_tolerance(m, 1.0));
  CHECK(s.newton_iters <= 10);
}

TEST_CASE("parabolic relaxation lands on the newton fixed point") {
  Grid g(257);
  Field m = ResourceProfile::sine_offset(1.5, 0.4).sample_values(g);
  SteadyState sn = newton_solve(g, 1.0, m, Field(g.size(), 1.5));
  SteadyState sp = parabolic_relax(g, 1.0, m, Field(g.size(), 0.9));
  REQUIRE(sn.theta.size() == sp.theta.size());
  double gap = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    gap = std::max(gap, std::abs(sn.theta[i] - sp.theta[i]));
  CHECK(gap < 1e-10);
  CHECK(sp.residual_norm < residual_floor_guard(g, 1.0, m, sp.theta) +
                               newton_tolerance(m, 1.0));
}

TEST_CASE("continuation reaches a small-diffusion state intact") {
  Grid g(257);
  auto prof = ResourceProfile::cosine_offset(1.0, 3.0);
  Field m = prof.sample_values(g);
  SteadyState s = solve_with_continuation(g, 0.05, m);
  CHECK(s.mu == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(s.continuation_steps >= 10);
  CHECK(s.residual_norm < 1e-9);
  BoundsReport b = bounds_check(g, prof, s.theta);
  CHECK(b.ok);
  CHECK(b.lower == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(b.upper == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("large diffusion flattens theta towards the mean") {
  Grid g(257);
  Field m = ResourceProfile::cosine_offset(1.0, 1.0).sample_values(g);
  SteadyState s = solve_with_continuation(g, 1e3, m);
  double dev = 0.0;
  for (double v : s.theta) dev = std::max(dev, std::abs(v - 1.0));
  CHECK(dev < 3e-4);   // first-order correction is O(1/mu)
  CHECK(dev > 1e-5);   // but it is not zero
}

TEST_CASE("bounds check flags an out-of-band field") {
  Grid g(65);
  auto prof = ResourceProfile::sine_offset(1.5, 0.4);
  BoundsReport b = bounds_check(g, prof, Field(g.size(), 5.0));
  CHECK_FALSE(b.ok);
  CHECK(b.witness.find("not below") != std::string::npos);
  CHECK(b.lower == doctest::Approx(1.1).epsilon(1e-6));
  CHECK(b.upper == doctest::Approx(1.9).epsilon(1e-6));
}

TEST_CASE("solver input validation") {
  Grid g(65);
  Field m(g.size(), 1.0);
  CHECK_THROWS_AS(newton_solve(g, -1.0, m, Field(g.size(), 1.0)),
                  InvalidArgumentError);
  CHECK_THROWS_AS(newton_solve(g, 1.0, m, Field(g.size(), 0.0)),
                  InvalidArgumentError);
  CHECK_THROWS_AS(parabolic_relax(g, 1.0, m, Field(g.size(), -0.5)),
                  InvalidArgumentError);
  SteadyState s = newton_solve(g, 1.0, m, Field(g.size(), 1.0));
  CHECK_THROWS_AS(continue_down(g, m, s, 2.0, ContinuationOptions{}),
                  InvalidArgumentError);
}
