#include "core/resource.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "core/errors.hpp"

namespace loglab {

namespace {
constexpr double kPi = std::numbers::pi;

double checked(double x) {
  if (x < -1e-12 || x > 1.0 + 1e-12)
    throw DomainError("profile evaluated outside [0,1]");
  return std::clamp(x, 0.0, 1.0);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}
}  // namespace

ResourceProfile::ResourceProfile(std::function<double(double)> f,
                                 std::function<double(double)> df,
                                 std::string description)
    : f_(std::move(f)), df_(std::move(df)),
      description_(std::move(description)) {}

double ResourceProfile::value(double x) const { return f_(checked(x)); }
double ResourceProfile::derivative(double x) const { return df_(checked(x)); }

Field ResourceProfile::sample_values(const Grid& g) const {
  Field out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = f_(g.node(i));
  return out;
}

Field ResourceProfile::sample_derivatives(const Grid& g) const {
  Field out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = df_(g.node(i));
  return out;
}

ResourceProfile ResourceProfile::constant(double c) {
  return ResourceProfile([c](double) { return c; }, [](double) { return 0.0; },
                         "constant(" + fmt(c) + ")");
}

ResourceProfile ResourceProfile::linear(double a, double b) {
  return ResourceProfile([a, b](double x) { return a + b * x; },
                         [b](double) { return b; },
                         "linear(" + fmt(a) + "," + fmt(b) + ")");
}

ResourceProfile ResourceProfile::shifted_ramp(double s) {
  return ResourceProfile([s](double x) { return x - s; },
                         [](double) { return 1.0; },
                         "shifted_ramp(" + fmt(s) + ")");
}

ResourceProfile ResourceProfile::sine_offset(double c, double a) {
  return ResourceProfile(
      [c, a](double x) { return c + a * std::sin(2.0 * kPi * x); },
      [a](double x) { return 2.0 * kPi * a * std::cos(2.0 * kPi * x); },
      "sine_offset(" + fmt(c) + "," + fmt(a) + ")");
}

ResourceProfile ResourceProfile::cosine_offset(double c, double a) {
  return ResourceProfile(
      [c, a](double x) { return c + a * std::cos(kPi * x); },
      [a](double x) { return -kPi * a * std::sin(kPi * x); },
      "cosine_offset(" + fmt(c) + "," + fmt(a) + ")");
}

ResourceProfile ResourceProfile::single_peak(double c, double a) {
  return ResourceProfile(
      [c, a](double x) { return c + a * std::sin(kPi * x); },
      [a](double x) { return kPi * a * std::cos(kPi * x); },
      "single_peak(" + fmt(c) + "," + fmt(a) + ")");
}

ResourceProfile ResourceProfile::sampled(std::vector<double> xs,
                                         std::vector<double> ms,
                                         std::vector<double> dms) {
  const std::size_t k = xs.size();
  if (k < 2 || ms.size() != k || dms.size() != k)
    throw InvalidArgumentError("sampled profile needs matching triples");
  if (std::abs(xs.front()) > 1e-12 || std::abs(xs.back() - 1.0) > 1e-12)
    throw InvalidArgumentError("sampled profile must cover [0,1]");
  for (std::size_t i = 0; i + 1 < k; ++i)
    if (!(xs[i] < xs[i + 1]))
      throw InvalidArgumentError("sampled abscissae must increase");
  xs.front() = 0.0;
  xs.back() = 1.0;

  auto locate = [xs](double x) {
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t j = static_cast<std::size_t>(it - xs.begin());
    if (j == 0) j = 1;
    if (j >= xs.size()) j = xs.size() - 1;
    return j - 1;
  };

  auto f = [xs, ms, dms, locate](double x) {
    const std::size_t j = locate(x);
    const double w = xs[j + 1] - xs[j];
    const double t = (x - xs[j]) / w;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * ms[j] + (t3 - 2 * t2 + t) * w * dms[j] +
           (-2 * t3 + 3 * t2) * ms[j + 1] + (t3 - t2) * w * dms[j + 1];
  };
  auto df = [xs, ms, dms, locate](double x) {
    const std::size_t j = locate(x);
    const double w = xs[j + 1] - xs[j];
    const double t = (x - xs[j]) / w;
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * ms[j] + (3 * t2 - 4 * t + 1) * w * dms[j] +
            (-6 * t2 + 6 * t) * ms[j + 1] + (3 * t2 - 2 * t) * w * dms[j + 1]) /
           w;
  };
  return ResourceProfile(f, df, "sampled(" + fmt(static_cast<double>(k)) +
                                    " knots)");
}

ResourceProfile ResourceProfile::blend(ResourceProfile base,
                                       ResourceProfile bump, double t) {
  auto f = [base, bump, t](double x) {
    return base.value(x) + t * bump.value(x);
  };
  auto df = [base, bump, t](double x) {
    return base.derivative(x) + t * bump.derivative(x);
  };
  std::string d = "blend(" + base.describe() + "+" + fmt(t) + "*" +
                  bump.describe() + ")";
  return ResourceProfile(f, df, std::move(d));
}

ConditionReport classify_conditions(const ResourceProfile& m,
                                    std::size_t samples) {
  if (samples < 64)
    throw InvalidArgumentError("classifier needs at least 64 samples");
  Grid g(samples);
  const Field v = m.sample_values(g);
  const Field d = m.sample_derivatives(g);

  ConditionReport rep;
  rep.mean = integrate(g, v);
  rep.min_value = *std::min_element(v.begin(), v.end());
  rep.max_value = *std::max_element(v.begin(), v.end());

  const double scale = 1.0 + std::max(std::abs(rep.min_value),
                                      std::abs(rep.max_value));
  const double tol = 1e-12 * scale;

  rep.non_constant = (rep.max_value - rep.min_value) > tol;
  rep.m0 = rep.non_constant && rep.mean >= -tol;

  // m1: strict positivity and bounded oscillation max <= 2 min.
  rep.m1 = rep.min_value > tol &&
           rep.max_value <= 2.0 * rep.min_value * (1.0 + 1e-12);
  if (!rep.m1) {
    rep.m1_witness = rep.min_value <= tol
                         ? "min " + std::to_string(rep.min_value) +
                               " not positive"
                         : "max " + std::to_string(rep.max_value) +
                               " exceeds twice min " +
                               std::to_string(rep.min_value);
  }

  // m2: monotone positive part.
  {
    Field p(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) p[i] = std::max(v[i], 0.0);
    bool nondec = true, noninc = true;
    std::size_t first_drop = 0, first_rise = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      const double step = p[i + 1] - p[i];
      if (step < -tol && nondec) {
        nondec = false;
        first_drop = i;
      }
      if (step > tol && noninc) {
        noninc = false;
        first_rise = i;
      }
    }
    rep.m2 = nondec || noninc;
    rep.m2_direction = (nondec && !noninc) ? 1 : (noninc && !nondec) ? -1 : 0;
    if (!rep.m2)
      rep.m2_witness = "positive part drops after x=" +
                       std::to_string(g.node(first_drop)) +
                       " and rises after x=" +
                       std::to_string(g.node(first_rise));
  }

  // m3: derivative strictly positive on a prefix, strictly negative on a
  // suffix, with at most a short indeterminate gap at the crossing.
  {
    const double dmax = sup_norm(d);
    const double dtol = 1e-10 * (1.0 + dmax);
    const std::size_t n = d.size();
    std::size_t p = 0;
    while (p < n && d[p] > dtol) ++p;   // first index not clearly positive
    std::size_t q = n;
    while (q > 0 && d[q - 1] < -dtol) --q;  // first index of negative suffix
    bool ok = p > 0 && q < n && q >= p && (q - p) <= 2;
    for (std::size_t i = p; ok && i < q; ++i)
      if (std::abs(d[i]) > dtol) ok = false;  // gap must be indeterminate only
    if (ok) {
      // Locate the sign change bracket around the gap.
      std::size_t j = (p == 0) ? 0 : p - 1;
      while (j + 1 < n && !(d[j] >= 0.0 && d[j + 1] <= 0.0)) ++j;
      if (j + 1 >= n) {
        ok = false;
      } else {
        const double denom = d[j] - d[j + 1];
        const double frac = denom > 0.0 ? d[j] / denom : 0.5;
        rep.m3_peak = g.node(j) + frac * g.spacing();
        ok = rep.m3_peak > 0.0 && rep.m3_peak < 1.0;
      }
    }
    rep.m3 = ok;
    if (!ok) {
      if (p == 0)
        rep.m3_witness = "derivative not positive at x=0";
      else if (q == n)
        rep.m3_witness = "derivative not negative at x=1";
      else if (q < p || (q - p) > 2)
        rep.m3_witness = "derivative changes sign more than once near x=" +
                         std::to_string(g.node(std::min(p, q)));
      else
        rep.m3_witness = "no admissible interior peak";
    }
  }
  return rep;
}

}  // namespace loglab
