#include "commands.hpp"

#include <loglab/loglab.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "emit.hpp"

namespace fs = std::filesystem;

namespace loglab_cli {
namespace {

// Library failure after the configuration already validated: exit code 2.
struct SolverFailure : std::runtime_error {
  explicit SolverFailure(std::string msg)
      : std::runtime_error(std::move(msg)) {}
};

void check(loglab_status st, const std::string& what) {
  if (st != LOGLAB_OK)
    throw SolverFailure(what + ": " + loglab_status_name(st) + " (" +
                        loglab_last_error() + ")");
}

struct ProfileDel {
  void operator()(loglab_profile* p) const { loglab_profile_free(p); }
};
struct SolutionDel {
  void operator()(loglab_solution* s) const { loglab_solution_free(s); }
};
struct AsymDel {
  void operator()(loglab_asymptotics* a) const { loglab_asymptotics_free(a); }
};
struct SweepDel {
  void operator()(loglab_sweep* s) const { loglab_sweep_free(s); }
};
using ProfilePtr = std::unique_ptr<loglab_profile, ProfileDel>;
using SolutionPtr = std::unique_ptr<loglab_solution, SolutionDel>;
using AsymPtr = std::unique_ptr<loglab_asymptotics, AsymDel>;
using SweepPtr = std::unique_ptr<loglab_sweep, SweepDel>;

constexpr const char* kSweepHeader =
    "mu,M,S,gap,argmax_x,argmin_x,mass_p1,mass_p2,mass_p3,grad_sq,"
    "theta_mu_at_argmax,newton_iters,residual";

// Decision floors for sign claims: values inside the floor band read as
// numerical noise, not as evidence either way.
constexpr double kDerivativeFloor = 1e-10;
constexpr double kSensitivityFloor = 1e-12;
constexpr double kIdentityTol = 1e-6;
constexpr double kMomentTol = 1e-3;
constexpr double kSlopeLo = 1.8;
constexpr double kSlopeHi = 2.2;
constexpr double kExpansionNoiseFloor = 1e-13;
constexpr double kPositiveMargin = 1e-6;

// ---- profiles from configuration ----------------------------------------

ProfilePtr build_profile(const Config& cfg, const std::string& px,
                         bool allow_blend) {
  const std::string kind = cfg.get_string(px + ".kind");
  loglab_profile* raw = nullptr;
  loglab_status st = LOGLAB_OK;
  if (kind == "constant") {
    st = loglab_profile_constant(cfg.get_double(px + ".offset"), &raw);
  } else if (kind == "linear") {
    st = loglab_profile_linear(cfg.get_double(px + ".intercept"),
                               cfg.get_double(px + ".slope"), &raw);
  } else if (kind == "shifted_ramp") {
    st = loglab_profile_shifted_ramp(cfg.get_double(px + ".shift"), &raw);
  } else if (kind == "sine_offset") {
    st = loglab_profile_sine_offset(cfg.get_double(px + ".offset"),
                                    cfg.get_double(px + ".amplitude"), &raw);
  } else if (kind == "cosine_offset") {
    st = loglab_profile_cosine_offset(cfg.get_double(px + ".offset"),
                                      cfg.get_double(px + ".amplitude"), &raw);
  } else if (kind == "single_peak") {
    st = loglab_profile_single_peak(cfg.get_double(px + ".offset"),
                                    cfg.get_double(px + ".amplitude"), &raw);
  } else if (kind == "sampled") {
    const auto triples = cfg.get_triples(px + ".samples");
    std::vector<double> xs, ms, dms;
    for (const auto& t : triples) {
      xs.push_back(t.x);
      ms.push_back(t.m);
      dms.push_back(t.dm);
    }
    st = loglab_profile_sampled(xs.data(), ms.data(), dms.data(), xs.size(),
                                &raw);
  } else if (kind == "blend") {
    if (!allow_blend)
      throw ConfigError("key '" + px + ".kind': blend is not allowed here");
    ProfilePtr base = build_profile(cfg, px + ".base", false);
    ProfilePtr bump = build_profile(cfg, px + ".bump", false);
    st = loglab_profile_blend(base.get(), bump.get(),
                              cfg.get_double(px + ".blend_t"), &raw);
  } else {
    throw ConfigError("key '" + px + ".kind': unknown profile kind '" + kind +
                      "'");
  }
  if (st != LOGLAB_OK)
    throw ConfigError("profile '" + px + "' rejected: " +
                      std::string(loglab_last_error()));
  return ProfilePtr(raw);
}

std::string describe(const loglab_profile* p) {
  char buf[256];
  check(loglab_profile_describe(p, buf, sizeof buf), "describe profile");
  return buf;
}

// ---- shared configuration pieces -----------------------------------------

size_t resolve_n(const RunOptions& run, const Config& cfg) {
  const long long n =
      run.n_override > 0 ? run.n_override : cfg.get_int("grid.n", 1025);
  if (n < 65 || n % 2 == 0)
    throw ConfigError("grid size must be odd and at least 65, got " +
                      std::to_string(n));
  return static_cast<size_t>(n);
}

loglab_solve_options solver_options(const Config& cfg, size_t n) {
  loglab_solve_options o{};
  o.n = n;
  o.mu_start = cfg.get_double("solver.mu_start", 0.0);
  o.ratio = cfg.get_double("solver.ratio", 0.0);
  o.tol_factor = cfg.get_double("solver.tol_factor", 0.0);
  o.use_parabolic = cfg.get_bool("solver.use_parabolic", false) ? 1 : 0;
  if (cfg.has("solver.mu_start") && !(o.mu_start > 0))
    throw ConfigError("solver.mu_start must be positive");
  if (cfg.has("solver.ratio") && !(o.ratio > 0 && o.ratio < 1))
    throw ConfigError("solver.ratio must lie in (0,1)");
  if (cfg.has("solver.tol_factor") && !(o.tol_factor > 0))
    throw ConfigError("solver.tol_factor must be positive");
  return o;
}

std::vector<double> positive_list(const Config& cfg, const std::string& key,
                                  std::vector<double> fallback) {
  std::vector<double> v =
      cfg.has(key) ? cfg.get_doubles(key) : std::move(fallback);
  for (double x : v)
    if (!(x > 0)) throw ConfigError("key '" + key + "': values must be positive");
  return v;
}

// Explicit list, or a min/max/count range with exact endpoints,
// log-spaced unless <section>.log = false.
std::vector<double> mu_grid(const Config& cfg, const std::string& section,
                            bool has_defaults) {
  const std::string list_key = section + ".mus";
  const std::string lo_key = section + ".mu_min";
  const std::string hi_key = section + ".mu_max";
  const std::string count_key = section + ".count";
  const bool has_range =
      cfg.has(lo_key) || cfg.has(hi_key) || cfg.has(count_key);
  if (cfg.has(list_key)) {
    if (has_range)
      throw ConfigError("give either " + list_key + " or the " + lo_key + "/" +
                        hi_key + "/" + count_key + " range, not both");
    return positive_list(cfg, list_key, {});
  }
  if (!has_defaults &&
      !(cfg.has(lo_key) && cfg.has(hi_key) && cfg.has(count_key)))
    throw ConfigError("need " + list_key + " or all of " + lo_key + "/" +
                      hi_key + "/" + count_key);
  const double lo = cfg.get_double(lo_key, 0.01);
  const double hi = cfg.get_double(hi_key, 100.0);
  const long long count = cfg.get_int(count_key, 12);
  const bool log_spaced = cfg.get_bool(section + ".log", true);
  if (!(lo > 0) || !(hi > lo))
    throw ConfigError("need 0 < " + lo_key + " < " + hi_key);
  if (count < 2) throw ConfigError(count_key + " must be at least 2");
  std::vector<double> mus(static_cast<size_t>(count));
  const double a = log_spaced ? std::log(lo) : lo;
  const double b = log_spaced ? std::log(hi) : hi;
  for (size_t k = 0; k < mus.size(); ++k) {
    const double t = a + (b - a) * static_cast<double>(k) /
                             static_cast<double>(count - 1);
    mus[k] = log_spaced ? std::exp(t) : t;
  }
  mus.front() = lo;
  mus.back() = hi;
  return mus;
}

void ensure_out_dir(const RunOptions& run) {
  std::error_code ec;
  fs::create_directories(run.out_dir, ec);
  if (ec)
    throw ConfigError("cannot create output directory '" + run.out_dir +
                      "': " + ec.message());
}

std::string out_path(const RunOptions& run, const char* name) {
  return (fs::path(run.out_dir) / name).string();
}

// ---- emission helpers -----------------------------------------------------

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void write_run_info(const RunOptions& run, const Config& cfg,
                    const std::string& command, size_t n,
                    const std::string& profile_desc, const Json& extra) {
  Json doc;
  doc["command"] = command;
  doc["library_version"] = loglab_version();
  doc["grid_n"] = n;
  doc["profile"] = profile_desc;
  Json raw = Json::object();
  std::string digest = command + "\n" + std::to_string(n) + "\n";
  for (const auto& [k, v] : cfg.raw()) {
    raw[k] = v;
    digest += k + "=" + v + "\n";
  }
  doc["config"] = raw;
  for (const auto& [k, v] : extra.items()) doc[k] = v;
  if (!extra.empty()) digest += extra.dump();
  if (!run.seedless) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(digest)));
    doc["run_id"] = buf;
  }
  write_json_file(out_path(run, "run_info.json"), doc);
}

Json conditions_json(const loglab_conditions& c) {
  Json j;
  j["mean"] = c.mean;
  j["min"] = c.min_value;
  j["max"] = c.max_value;
  j["non_constant"] = c.non_constant != 0;
  j["m0"] = c.m0 != 0;
  j["m1"] = c.m1 != 0;
  j["m2"] = c.m2 != 0;
  j["m2_direction"] = c.m2_direction;
  j["m3"] = c.m3 != 0;
  if (c.m3) j["m3_peak"] = c.m3_peak;
  return j;
}

Json summary_json(const loglab_summary& s) {
  Json j;
  j["mu"] = s.mu;
  j["M"] = s.M;
  j["S"] = s.S;
  j["gap"] = s.gap;
  j["argmax_x"] = s.argmax_x;
  j["argmin_x"] = s.argmin_x;
  j["mass_p1"] = s.mass_p1;
  j["mass_p2"] = s.mass_p2;
  j["mass_p3"] = s.mass_p3;
  j["grad_sq"] = s.grad_sq;
  j["theta_mu_at_argmax"] = s.theta_mu_at_argmax;
  j["theta_mu_at_0"] = s.theta_mu_at_0;
  j["theta_mu_at_1"] = s.theta_mu_at_1;
  j["min_theta_mu"] = s.min_theta_mu;
  j["max_theta_mu"] = s.max_theta_mu;
  j["theta_prime_interior_min"] = s.theta_prime_interior_min;
  j["theta_prime_interior_max"] = s.theta_prime_interior_max;
  j["theta_prime_sign_changes"] = s.theta_prime_sign_changes;
  j["argmax_is_interior"] = s.argmax_is_interior != 0;
  j["bounds_ok"] = s.bounds_ok != 0;
  j["sandwich_ok"] = s.sandwich_ok != 0;
  j["identity_defect"] = s.identity_defect;
  j["newton_iters"] = s.newton_iters;
  j["residual"] = s.residual;
  return j;
}

void sweep_csv_row(CsvWriter& csv, const loglab_summary& r) {
  csv.row({r.mu, r.M, r.S, r.gap, r.argmax_x, r.argmin_x, r.mass_p1,
           r.mass_p2, r.mass_p3, r.grad_sq, r.theta_mu_at_argmax,
           static_cast<double>(r.newton_iters), r.residual});
}

// Writes the ok rows as CSV, returns the mus of the rows that failed.
std::vector<double> write_sweep_csv(const loglab_sweep* sw,
                                    const std::string& path) {
  CsvWriter csv(kSweepHeader);
  std::vector<double> failed;
  for (size_t i = 0; i < loglab_sweep_rows(sw); ++i) {
    double mu = 0;
    check(loglab_sweep_row_mu(sw, i, &mu), "sweep row mu");
    if (!loglab_sweep_row_ok(sw, i)) {
      loglab_summary unused;
      loglab_sweep_row_summary(sw, i, &unused);
      log_error("row mu = " + fmt(mu) + " failed: " + loglab_last_error());
      failed.push_back(mu);
      continue;
    }
    loglab_summary r;
    check(loglab_sweep_row_summary(sw, i, &r), "sweep row summary");
    sweep_csv_row(csv, r);
  }
  write_text_file(path, csv.body());
  return failed;
}

std::vector<loglab_summary> ok_rows(const loglab_sweep* sw) {
  std::vector<loglab_summary> rows;
  for (size_t i = 0; i < loglab_sweep_rows(sw); ++i) {
    if (!loglab_sweep_row_ok(sw, i)) continue;
    loglab_summary r;
    check(loglab_sweep_row_summary(sw, i, &r), "sweep row summary");
    rows.push_back(r);
  }
  return rows;
}

// ---- verify: three-state claims over sweep rows ---------------------------

const char* verdict_str(loglab_verdict v) {
  switch (v) {
    case LOGLAB_VERDICT_PASS:
      return "pass";
    case LOGLAB_VERDICT_FAIL:
      return "fail";
    default:
      return "inconclusive";
  }
}

loglab_verdict merge(loglab_verdict a, loglab_verdict b) {
  if (a == LOGLAB_VERDICT_FAIL || b == LOGLAB_VERDICT_FAIL)
    return LOGLAB_VERDICT_FAIL;
  if (a == LOGLAB_VERDICT_INCONCLUSIVE || b == LOGLAB_VERDICT_INCONCLUSIVE)
    return LOGLAB_VERDICT_INCONCLUSIVE;
  return LOGLAB_VERDICT_PASS;
}

// sign = +1 claims value > 0, sign = -1 claims value < 0; the floor band
// around zero is indeterminate.
loglab_verdict sign_check(double value, int sign, double floor) {
  const double v = sign * value;
  if (v > floor) return LOGLAB_VERDICT_PASS;
  if (v >= -floor) return LOGLAB_VERDICT_INCONCLUSIVE;
  return LOGLAB_VERDICT_FAIL;
}

struct Probe {
  std::string label;
  std::function<std::pair<loglab_verdict, double>(const loglab_summary&)>
      eval;
};

Probe sign_probe(std::string label, double loglab_summary::*field, int sign,
                 double floor) {
  return {std::move(label),
          [field, sign, floor](const loglab_summary& r) {
            const double v = r.*field;
            return std::make_pair(sign_check(v, sign, floor), v);
          }};
}

Probe flag_probe(std::string label, int loglab_summary::*field) {
  return {std::move(label), [field](const loglab_summary& r) {
            const bool ok = r.*field != 0;
            return std::make_pair(
                ok ? LOGLAB_VERDICT_PASS : LOGLAB_VERDICT_FAIL,
                static_cast<double>(r.*field));
          }};
}

std::pair<loglab_verdict, Json> probe_rows(
    const std::vector<loglab_summary>& rows, const std::vector<Probe>& probes) {
  if (rows.empty()) {
    Json w;
    w["note"] = "no solved rows";
    return {LOGLAB_VERDICT_INCONCLUSIVE, w};
  }
  loglab_verdict worst = LOGLAB_VERDICT_PASS;
  Json witness = nullptr;
  for (const loglab_summary& r : rows) {
    for (const Probe& p : probes) {
      auto [v, value] = p.eval(r);
      const bool record =
          (v == LOGLAB_VERDICT_FAIL && worst != LOGLAB_VERDICT_FAIL) ||
          (v == LOGLAB_VERDICT_INCONCLUSIVE && worst == LOGLAB_VERDICT_PASS);
      if (record) {
        worst = merge(worst, v);
        witness = Json{{"mu", r.mu}, {"check", p.label}, {"value", value}};
      }
    }
  }
  return {worst, witness};
}

loglab_monotonicity mono_check(const loglab_sweep* sw, loglab_column col,
                               int direction, double slack) {
  loglab_monotonicity m{};
  check(loglab_sweep_monotonicity(sw, col, direction, slack, &m),
        "monotonicity verdict");
  return m;
}

Json mono_witness(const loglab_monotonicity& m) {
  Json w;
  w["pairs"] = m.pairs;
  if (m.verdict != LOGLAB_VERDICT_PASS) {
    w["witness_index"] = m.witness_index;
    w["witness_delta"] = m.witness_delta;
  }
  return w;
}

struct Statement {
  std::string id;
  bool applicable = false;
  loglab_verdict verdict = LOGLAB_VERDICT_INCONCLUSIVE;
  Json tolerance = nullptr;
  Json witness = nullptr;
  std::string detail;

  Json to_json() const {
    Json j;
    j["verdict"] = applicable ? verdict_str(verdict) : "not-applicable";
    j["applicable"] = applicable;
    j["detail"] = detail;
    j["tolerance"] = tolerance;
    j["witness"] = witness;
    return j;
  }
};

}  // namespace

// ---- solve ----------------------------------------------------------------

int run_solve(const RunOptions& run) {
  const Config cfg = Config::parse_file(run.config_path);
  ProfilePtr p = build_profile(cfg, "profile", true);
  const size_t n = resolve_n(run, cfg);
  loglab_solve_options opt = solver_options(cfg, n);
  const double mu = cfg.get_double("solve.mu");
  if (!(mu > 0)) throw ConfigError("solve.mu must be positive");
  ensure_out_dir(run);

  log_info("solve " + describe(p.get()) + " at mu = " + fmt(mu) +
           ", n = " + std::to_string(n));
  loglab_solution* raw = nullptr;
  if (loglab_status st = loglab_solve(p.get(), mu, &opt, &raw);
      st != LOGLAB_OK) {
    log_error("solve failed: " + std::string(loglab_status_name(st)) + " (" +
              loglab_last_error() + ")");
    return 2;
  }
  SolutionPtr sol(raw);

  CsvWriter csv("x,theta,theta_prime,theta_mu");
  for (size_t i = 0; i < loglab_solution_size(sol.get()); ++i) {
    double x, th, dth, thmu;
    check(loglab_solution_node(sol.get(), i, &x), "node");
    check(loglab_solution_theta(sol.get(), i, &th), "theta");
    check(loglab_solution_theta_prime(sol.get(), i, &dth), "theta_prime");
    check(loglab_solution_theta_mu(sol.get(), i, &thmu), "theta_mu");
    csv.row({x, th, dth, thmu});
  }
  write_text_file(out_path(run, "solution.csv"), csv.body());

  loglab_summary sum;
  check(loglab_solution_summary(sol.get(), &sum), "summary");
  loglab_conditions cond;
  check(loglab_classify(p.get(), 0, &cond), "classify");

  // envelope margins against a fine sampling of the habitat
  constexpr size_t kBoundSamples = 8193;
  double lower = 0, upper = 0;
  for (size_t i = 0; i < kBoundSamples; ++i) {
    const double x = i == kBoundSamples - 1
                         ? 1.0
                         : static_cast<double>(i) / (kBoundSamples - 1);
    double m = 0;
    check(loglab_profile_value(p.get(), x, &m), "profile value");
    const double plus = m > 0 ? m : 0;
    if (i == 0) {
      lower = plus;
      upper = m;
    } else {
      lower = std::min(lower, plus);
      upper = std::max(upper, m);
    }
  }

  Json doc;
  doc["profile"] = describe(p.get());
  doc["grid_n"] = n;
  doc["conditions"] = conditions_json(cond);
  doc["summary"] = summary_json(sum);
  doc["bounds"] = Json{{"lower", lower},
                       {"upper", upper},
                       {"margin_low", sum.S - lower},
                       {"margin_high", upper - sum.M}};
  write_json_file(out_path(run, "summary.json"), doc);
  write_run_info(run, cfg, "solve", n, describe(p.get()), Json::object());
  log_info("wrote solution.csv, summary.json");
  return 0;
}

// ---- sweep ----------------------------------------------------------------

int run_sweep(const RunOptions& run) {
  const Config cfg = Config::parse_file(run.config_path);
  ProfilePtr p = build_profile(cfg, "profile", true);
  const size_t n = resolve_n(run, cfg);
  const std::vector<double> mus = mu_grid(cfg, "sweep", false);
  const bool independent =
      cfg.get_bool("sweep.independent", false) || run.parallel;
  ensure_out_dir(run);

  log_info("sweep over " + std::to_string(mus.size()) + " diffusion values" +
           (run.parallel ? " (parallel)" : ""));
  loglab_sweep* raw = nullptr;
  if (loglab_status st =
          loglab_sweep_run(p.get(), mus.data(), mus.size(), n,
                           independent ? 1 : 0, run.parallel ? 1 : 0, &raw);
      st != LOGLAB_OK) {
    log_error("sweep failed: " + std::string(loglab_status_name(st)) + " (" +
              loglab_last_error() + ")");
    return 2;
  }
  SweepPtr sw(raw);

  const std::vector<double> failed =
      write_sweep_csv(sw.get(), out_path(run, "sweep.csv"));
  const std::string plot =
      "set terminal dumb size 110, 32\n"
      "set datafile separator \",\"\n"
      "set key autotitle columnhead\n"
      "set logscale x\n"
      "set xlabel \"mu\"\n"
      "plot \"sweep.csv\" using 1:2 with lines, \\\n"
      "     \"sweep.csv\" using 1:3 with lines\n";
  write_text_file(out_path(run, "plot_sweep.gp"), plot);
  Json extra;
  extra["independent"] = independent;
  extra["mu_values"] = mus;
  extra["failed_mus"] = failed;
  write_run_info(run, cfg, "sweep", n, describe(p.get()), extra);
  log_info("wrote sweep.csv, plot_sweep.gp (" +
           std::to_string(mus.size() - failed.size()) + " of " +
           std::to_string(mus.size()) + " rows)");
  return 0;
}

// ---- verify -----------------------------------------------------------------

int run_verify(const RunOptions& run) {
  const Config cfg = Config::parse_file(run.config_path);
  ProfilePtr p = build_profile(cfg, "profile", true);
  const size_t n = resolve_n(run, cfg);
  const double slack = cfg.get_double("verify.slack", 1e-8);
  if (!(slack >= 0)) throw ConfigError("verify.slack must be nonnegative");
  const std::vector<double> mus = mu_grid(cfg, "verify", true);
  const std::vector<double> lambdas = positive_list(
      cfg, "verify.lambdas", {1e-2, 5e-3, 2.5e-3, 1.25e-3});
  if (lambdas.size() < 2)
    throw ConfigError("verify.lambdas needs at least two values");
  std::vector<double> heni_mus =
      positive_list(cfg, "verify.heni_mus", {1e3, 3e3, 1e4});
  std::sort(heni_mus.begin(), heni_mus.end());
  if (heni_mus.size() < 2 ||
      std::adjacent_find(heni_mus.begin(), heni_mus.end()) != heni_mus.end())
    throw ConfigError("verify.heni_mus needs at least two distinct values");
  ensure_out_dir(run);

  loglab_conditions cond;
  check(loglab_classify(p.get(), 0, &cond), "classify");
  const bool m0 = cond.m0 != 0;

  log_info("verify sweep over " + std::to_string(mus.size()) +
           " diffusion values");
  loglab_sweep* raw = nullptr;
  if (loglab_status st =
          loglab_sweep_run(p.get(), mus.data(), mus.size(), n,
                           run.parallel ? 1 : 0, run.parallel ? 1 : 0, &raw);
      st != LOGLAB_OK) {
    log_error("verify sweep failed: " +
              std::string(loglab_status_name(st)) + " (" +
              loglab_last_error() + ")");
    return 2;
  }
  SweepPtr sw(raw);
  const std::vector<double> failed =
      write_sweep_csv(sw.get(), out_path(run, "sweep.csv"));
  const std::vector<loglab_summary> rows = ok_rows(sw.get());

  std::vector<Statement> statements;

  {
    Statement s;
    s.id = "thm-1.2-M";
    s.detail = "largest density falls as diffusion grows";
    s.applicable = m0 && cond.m1;
    s.tolerance = slack;
    if (s.applicable) {
      const loglab_monotonicity m = mono_check(sw.get(), LOGLAB_COL_M, -1, slack);
      s.verdict = m.verdict;
      s.witness = mono_witness(m);
    }
    statements.push_back(std::move(s));
  }
  {
    Statement s;
    s.id = "thm-1.2-S";
    s.detail = "smallest density rises as diffusion grows";
    s.applicable = m0 && cond.m1;
    s.tolerance = slack;
    if (s.applicable) {
      const loglab_monotonicity m = mono_check(sw.get(), LOGLAB_COL_S, +1, slack);
      s.verdict = m.verdict;
      s.witness = mono_witness(m);
    }
    statements.push_back(std::move(s));
  }
  {
    Statement s;
    s.id = "thm-1.3";
    s.applicable = m0 && cond.m2 && cond.m2_direction != 0;
    s.tolerance = Json{{"derivative_floor", kDerivativeFloor},
                       {"sensitivity_floor", kSensitivityFloor}};
    if (cond.m2_direction >= 0) {
      s.detail =
          "rising resource: density rises in x, sensitivity negative at the "
          "right edge";
      if (s.applicable) {
        auto [v, w] = probe_rows(
            rows, {sign_probe("theta_prime_interior_min",
                              &loglab_summary::theta_prime_interior_min, +1,
                              kDerivativeFloor),
                   sign_probe("theta_mu_at_1", &loglab_summary::theta_mu_at_1,
                              -1, kSensitivityFloor)});
        s.verdict = v;
        s.witness = w;
      }
    } else {
      s.detail =
          "falling resource: density falls in x, sensitivity negative at the "
          "left edge";
      if (s.applicable) {
        auto [v, w] = probe_rows(
            rows, {sign_probe("theta_prime_interior_max",
                              &loglab_summary::theta_prime_interior_max, -1,
                              kDerivativeFloor),
                   sign_probe("theta_mu_at_0", &loglab_summary::theta_mu_at_0,
                              -1, kSensitivityFloor)});
        s.verdict = v;
        s.witness = w;
      }
    }
    statements.push_back(std::move(s));
  }
  {
    Statement s;
    s.id = "thm-1.4";
    s.detail =
        "single-peak resource: density has one interior peak, at most one "
        "slope sign change, and the peak value falls with diffusion";
    s.applicable = m0 && cond.m3;
    s.tolerance = Json{{"sensitivity_floor", kSensitivityFloor}};
    if (s.applicable) {
      Probe shape{"theta_prime_sign_changes", [](const loglab_summary& r) {
                    return std::make_pair(r.theta_prime_sign_changes <= 1
                                              ? LOGLAB_VERDICT_PASS
                                              : LOGLAB_VERDICT_FAIL,
                                          static_cast<double>(
                                              r.theta_prime_sign_changes));
                  }};
      auto [v, w] = probe_rows(
          rows,
          {std::move(shape),
           flag_probe("argmax_is_interior", &loglab_summary::argmax_is_interior),
           sign_probe("theta_mu_at_argmax",
                      &loglab_summary::theta_mu_at_argmax, -1,
                      kSensitivityFloor)});
      s.verdict = v;
      s.witness = w;
    }
    statements.push_back(std::move(s));
  }
  {
    Statement s;
    s.id = "lem-2.1-bounds";
    s.detail = "density sits strictly between min positive-part and max of "
               "the resource";
    s.applicable = m0;
    s.tolerance = 0.0;
    if (s.applicable) {
      auto [v, w] =
          probe_rows(rows, {flag_probe("bounds_ok", &loglab_summary::bounds_ok)});
      s.verdict = v;
      s.witness = w;
    }
    statements.push_back(std::move(s));
  }
  {
    Statement s;
    s.id = "lem-2.2-sandwich";
    s.detail = "theta + mu * theta_mu stays between the density extremes";
    s.applicable = m0 && cond.m1;
    s.tolerance = Json{{"slack_rel", 1e-9}};
    if (s.applicable) {
      auto [v, w] = probe_rows(
          rows, {flag_probe("sandwich_ok", &loglab_summary::sandwich_ok)});
      s.verdict = v;
      s.witness = w;
    }
    statements.push_back(std::move(s));
  }
  {
    Statement s;
    s.id = "eq-3.4-identity";
    s.detail = "weighted sensitivity moment balances the gradient energy";
    s.applicable = m0;
    s.tolerance = kIdentityTol;
    if (s.applicable) {
      if (rows.empty()) {
        s.verdict = LOGLAB_VERDICT_INCONCLUSIVE;
        s.witness = Json{{"note", "no solved rows"}};
      } else {
        const loglab_summary* worst = &rows.front();
        for (const loglab_summary& r : rows)
          if (r.identity_defect > worst->identity_defect) worst = &r;
        s.verdict = worst->identity_defect <= kIdentityTol
                        ? LOGLAB_VERDICT_PASS
                        : LOGLAB_VERDICT_FAIL;
        s.witness = Json{{"max_defect", worst->identity_defect},
                         {"mu", worst->mu}};
      }
    }
    statements.push_back(std::move(s));
  }
  {
    Statement s;
    s.id = "lem-4.1-p3";
    s.detail = "cubic mass falls with diffusion at the gradient-energy rate";
    s.applicable = m0;
    s.tolerance = Json{{"monotone_slack", slack}, {"moment_rel", kMomentTol}};
    if (s.applicable) {
      const loglab_monotonicity m =
          mono_check(sw.get(), LOGLAB_COL_MASS_P3, -1, slack);
      loglab_verdict v = m.verdict;
      Json w;
      w["monotone"] = mono_witness(m);
      if (!rows.empty()) {
        // moment cross-check at the row nearest the geometric mean of the grid
        long double lsum = 0;
        for (const loglab_summary& r : rows) lsum += std::log(r.mu);
        const double gm = std::exp(static_cast<double>(
            lsum / static_cast<long double>(rows.size())));
        const loglab_summary* sel = &rows.front();
        for (const loglab_summary& r : rows)
          if (std::fabs(std::log(r.mu / gm)) <
              std::fabs(std::log(sel->mu / gm)))
            sel = &r;
        loglab_solve_options opt = solver_options(cfg, n);
        loglab_solution* sraw = nullptr;
        check(loglab_solve(p.get(), sel->mu, &opt, &sraw), "moment solve");
        SolutionPtr msol(sraw);
        double fd = 0, ref = 0, rel = 0;
        check(loglab_moment_check(msol.get(), 1e-3 * sel->mu, &fd, &ref, &rel),
              "moment check");
        v = merge(v, rel <= kMomentTol ? LOGLAB_VERDICT_PASS
                                       : LOGLAB_VERDICT_FAIL);
        w["moment"] = Json{{"mu", sel->mu},
                           {"fd", fd},
                           {"reference", ref},
                           {"rel_error", rel}};
      } else {
        v = merge(v, LOGLAB_VERDICT_INCONCLUSIVE);
      }
      s.verdict = v;
      s.witness = w;
    }
    statements.push_back(std::move(s));
  }

  // The expansion statements need the large-diffusion data; mean <= 0 makes
  // them vacuous rather than failed.
  AsymPtr asym;
  if (cond.mean > 0) {
    loglab_asymptotics* araw = nullptr;
    if (loglab_status st = loglab_asymptotics_compute(p.get(), n, &araw);
        st == LOGLAB_OK)
      asym.reset(araw);
    else if (st != LOGLAB_ERR_MEAN_SIGN)
      check(st, "asymptotics");
  }
  {
    Statement s;
    s.id = "lem-2.3-order";
    s.detail = "expansion error shrinks at second order in 1/mu";
    s.applicable = asym != nullptr;
    s.tolerance = Json{{"slope_lo", kSlopeLo}, {"slope_hi", kSlopeHi}};
    if (s.applicable) {
      std::vector<double> errors;
      bool noisy = false;
      for (double lambda : lambdas) {
        double err = 0;
        check(loglab_expansion_error(asym.get(), 1.0 / lambda, &err),
              "expansion error");
        errors.push_back(err);
        noisy = noisy || err < kExpansionNoiseFloor;
      }
      Json w;
      w["lambdas"] = lambdas;
      w["errors"] = errors;
      if (noisy) {
        s.verdict = LOGLAB_VERDICT_INCONCLUSIVE;
        w["note"] = "errors at the rounding floor";
      } else {
        double slope = 0;
        check(loglab_convergence_order(lambdas.data(), errors.data(),
                                       lambdas.size(), &slope),
              "order fit");
        w["slope"] = slope;
        s.verdict = (slope >= kSlopeLo && slope <= kSlopeHi)
                        ? LOGLAB_VERDICT_PASS
                        : LOGLAB_VERDICT_FAIL;
      }
      s.witness = w;
    }
    statements.push_back(std::move(s));
  }
  {
    Statement s;
    s.id = "heni-min-decreasing";
    s.detail =
        "positive corrector floor: sensitivity uniformly negative and the "
        "smallest density falls at large diffusion";
    s.tolerance = Json{{"monotone_slack", slack},
                       {"sensitivity_floor", kSensitivityFloor},
                       {"positive_margin", kPositiveMargin}};
    double min_cr = 0, ce = 0;
    if (asym) {
      check(loglab_asymptotics_min_c_plus_rho(asym.get(), &min_cr),
            "corrector floor");
      check(loglab_asymptotics_c_energy(asym.get(), &ce), "energy constant");
    }
    s.applicable = asym && min_cr > kPositiveMargin * (1.0 + ce);
    if (s.applicable) {
      loglab_sweep* hraw = nullptr;
      if (loglab_status st =
              loglab_sweep_run(p.get(), heni_mus.data(), heni_mus.size(), n,
                               0, 0, &hraw);
          st != LOGLAB_OK) {
        s.verdict = LOGLAB_VERDICT_INCONCLUSIVE;
        s.witness = Json{{"note", std::string("large-diffusion sweep failed: ") +
                                      loglab_last_error()}};
      } else {
        SweepPtr hsw(hraw);
        const std::vector<loglab_summary> hrows = ok_rows(hsw.get());
        loglab_verdict v = LOGLAB_VERDICT_PASS;
        if (hrows.size() < heni_mus.size()) v = LOGLAB_VERDICT_INCONCLUSIVE;
        auto [pv, pw] = probe_rows(
            hrows, {sign_probe("max_theta_mu", &loglab_summary::max_theta_mu,
                               -1, kSensitivityFloor)});
        const loglab_monotonicity m =
            mono_check(hsw.get(), LOGLAB_COL_S, -1, slack);
        v = merge(v, merge(pv, m.verdict));
        Json w;
        w["mus"] = heni_mus;
        w["min_c_plus_rho"] = min_cr;
        w["rows"] = pw;
        w["min_decreasing"] = mono_witness(m);
        s.verdict = v;
        s.witness = w;
      }
    } else if (asym) {
      s.witness = Json{{"min_c_plus_rho", min_cr}};
    }
    statements.push_back(std::move(s));
  }

  size_t npass = 0, nfail = 0, ninc = 0, nna = 0;
  Json stmts = Json::object();
  for (const Statement& s : statements) {
    stmts[s.id] = s.to_json();
    if (!s.applicable)
      ++nna;
    else if (s.verdict == LOGLAB_VERDICT_PASS)
      ++npass;
    else if (s.verdict == LOGLAB_VERDICT_FAIL)
      ++nfail;
    else
      ++ninc;
  }

  Json doc;
  doc["profile"] = describe(p.get());
  doc["grid_n"] = n;
  doc["conditions"] = conditions_json(cond);
  doc["mu_grid"] = mus;
  doc["failed_mus"] = failed;
  doc["slack"] = slack;
  doc["statements"] = stmts;
  doc["counts"] = Json{{"pass", npass},
                       {"fail", nfail},
                       {"inconclusive", ninc},
                       {"not_applicable", nna}};
  doc["any_fail"] = nfail > 0;
  write_json_file(out_path(run, "verify.json"), doc);
  Json extra;
  extra["independent"] = run.parallel;
  write_run_info(run, cfg, "verify", n, describe(p.get()), extra);

  for (const Statement& s : statements)
    log_info(s.id + ": " +
             (s.applicable ? verdict_str(s.verdict) : "not-applicable"));
  log_info("wrote verify.json, sweep.csv");
  return nfail > 0 ? 1 : 0;
}

// ---- asymptotics ------------------------------------------------------------

int run_asymptotics(const RunOptions& run) {
  const Config cfg = Config::parse_file(run.config_path);
  ProfilePtr p = build_profile(cfg, "profile", true);
  const size_t n = resolve_n(run, cfg);
  const std::vector<double> lambdas = positive_list(
      cfg, "asymptotics.lambdas", {1e-2, 5e-3, 2.5e-3, 1.25e-3});
  if (lambdas.size() < 2)
    throw ConfigError("asymptotics.lambdas needs at least two values");
  ensure_out_dir(run);

  loglab_asymptotics* raw = nullptr;
  if (loglab_status st = loglab_asymptotics_compute(p.get(), n, &raw);
      st != LOGLAB_OK) {
    log_error("expansion failed: " + std::string(loglab_status_name(st)) +
              " (" + loglab_last_error() + ")");
    return 2;
  }
  AsymPtr a(raw);

  double mbar = 0, ce = 0, cq = 0, min_cr = 0;
  check(loglab_asymptotics_mbar(a.get(), &mbar), "mbar");
  check(loglab_asymptotics_c_energy(a.get(), &ce), "c_energy");
  check(loglab_asymptotics_c_quadrature(a.get(), &cq), "c_quadrature");
  check(loglab_asymptotics_min_c_plus_rho(a.get(), &min_cr), "corrector floor");

  const double h = 1.0 / static_cast<double>(n - 1);
  CsvWriter csv("x,rho_m,c_plus_rho");
  for (size_t i = 0; i < loglab_asymptotics_size(a.get()); ++i) {
    const double x = i == n - 1 ? 1.0 : static_cast<double>(i) * h;
    double rho = 0;
    check(loglab_asymptotics_rho(a.get(), i, &rho), "rho");
    csv.row({x, rho, ce + rho});
  }
  write_text_file(out_path(run, "rho_m.csv"), csv.body());

  Json doc;
  doc["profile"] = describe(p.get());
  doc["grid_n"] = n;
  doc["m_bar"] = mbar;
  doc["c_energy"] = ce;
  doc["c_quadrature"] = cq;
  doc["min_c_plus_rho"] = min_cr;
  Json table = Json::array();
  std::vector<double> errors;
  for (double lambda : lambdas) {
    double err = 0;
    check(loglab_expansion_error(a.get(), 1.0 / lambda, &err),
          "expansion error");
    errors.push_back(err);
    table.push_back(
        Json{{"lambda", lambda}, {"mu", 1.0 / lambda}, {"sup_error", err}});
  }
  doc["expansion"] = table;
  double slope = 0;
  check(loglab_convergence_order(lambdas.data(), errors.data(),
                                 lambdas.size(), &slope),
        "order fit");
  doc["order_slope"] = slope;
  write_json_file(out_path(run, "asymptotics.json"), doc);

  const std::string plot =
      "set terminal dumb size 110, 32\n"
      "set datafile separator \",\"\n"
      "set key autotitle columnhead\n"
      "set xlabel \"x\"\n"
      "plot \"rho_m.csv\" using 1:2 with lines, \\\n"
      "     \"rho_m.csv\" using 1:3 with lines\n";
  write_text_file(out_path(run, "plot_rho.gp"), plot);
  write_run_info(run, cfg, "asymptotics", n, describe(p.get()),
                 Json::object());
  log_info("wrote asymptotics.json, rho_m.csv, plot_rho.gp");
  return 0;
}

// ---- hunt -------------------------------------------------------------------

int run_hunt(const RunOptions& run) {
  const Config cfg = Config::parse_file(run.config_path);
  const size_t n = resolve_n(run, cfg);
  const std::string family = cfg.get_string("hunt.family");
  const double lo = cfg.get_double("hunt.lo");
  const double hi = cfg.get_double("hunt.hi");
  const long long budget = cfg.get_int("hunt.budget");
  if (!(lo < hi)) throw ConfigError("need hunt.lo < hunt.hi");
  if (budget < 2) throw ConfigError("hunt.budget must be at least 2");
  ensure_out_dir(run);

  loglab_hunt_result res{};
  std::string target;
  if (family == "cosine") {
    const double offset = cfg.get_double("hunt.offset");
    target = "cosine offset " + fmt(offset);
    check(loglab_hunt_cosine(offset, lo, hi, static_cast<size_t>(budget), n,
                             &res),
          "hunt");
  } else if (family == "blend") {
    ProfilePtr base = build_profile(cfg, "hunt.base", false);
    ProfilePtr bump = build_profile(cfg, "hunt.bump", false);
    target = describe(base.get()) + " + t * " + describe(bump.get());
    check(loglab_hunt_blend(base.get(), bump.get(), lo, hi,
                            static_cast<size_t>(budget), n, &res),
          "hunt");
  } else {
    throw ConfigError("key 'hunt.family': expected cosine or blend, got '" +
                      family + "'");
  }

  Json doc;
  doc["family"] = family;
  doc["target"] = target;
  doc["range"] = Json{{"lo", lo}, {"hi", hi}};
  doc["budget"] = budget;
  doc["tried"] = res.tried;
  doc["found"] = res.found != 0;
  if (res.found) {
    doc["parameter"] = res.parameter;
    doc["min_c_plus_rho"] = res.min_c_plus_rho;
    doc["c_energy"] = res.c_energy;
  } else {
    doc["parameter"] = nullptr;
  }
  write_json_file(out_path(run, "hunt.json"), doc);
  write_run_info(run, cfg, "hunt", n, target, Json::object());
  log_info(res.found
               ? "found parameter " + fmt(res.parameter) + " after " +
                     std::to_string(res.tried) + " tries"
               : "no qualifying parameter in range");
  return res.found ? 0 : 1;
}

}  // namespace loglab_cli
