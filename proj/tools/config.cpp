#include "config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace loglab_cli {

namespace {

// Every key the tool understands, across all commands.  Keys that only
// matter to one command are still validated globally so a typo never
// silently degrades a run.
const std::array<const char*, 47> kKnownKeys = {
    "profile.kind",
    "profile.offset",
    "profile.amplitude",
    "profile.slope",
    "profile.intercept",
    "profile.shift",
    "profile.samples",
    "profile.blend_t",
    "profile.base.kind",
    "profile.base.offset",
    "profile.base.amplitude",
    "profile.base.slope",
    "profile.base.intercept",
    "profile.base.shift",
    "profile.base.samples",
    "profile.bump.kind",
    "profile.bump.offset",
    "profile.bump.amplitude",
    "profile.bump.slope",
    "profile.bump.intercept",
    "profile.bump.shift",
    "profile.bump.samples",
    "grid.n",
    "solver.mu_start",
    "solver.ratio",
    "solver.tol_factor",
    "solver.use_parabolic",
    "solve.mu",
    "sweep.mu_min",
    "sweep.mu_max",
    "sweep.count",
    "sweep.mus",
    "sweep.log",
    "sweep.independent",
    "verify.mu_min",
    "verify.mu_max",
    "verify.count",
    "verify.log",
    "verify.slack",
    "verify.lambdas",
    "verify.heni_mus",
    "asymptotics.lambdas",
    "hunt.family",
    "hunt.offset",
    "hunt.lo",
    "hunt.hi",
    "hunt.budget",
};

// hunt.base.* and hunt.bump.* share the profile parameter set; spelling
// them all out in kKnownKeys would double the table, so prefix-match them.
bool known_key(const std::string& key) {
  for (const char* k : kKnownKeys)
    if (key == k) return true;
  for (const char* prefix : {"hunt.base.", "hunt.bump."}) {
    if (key.rfind(prefix, 0) == 0) {
      const std::string tail = "profile." + key.substr(10);
      for (const char* k : kKnownKeys)
        if (tail == k) return true;
    }
  }
  return false;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_key_chars(const std::string& key) {
  if (key.empty() || key.front() == '.' || key.back() == '.') return false;
  for (char c : key) {
    if (!(std::islower(static_cast<unsigned char>(c)) ||
          std::isdigit(static_cast<unsigned char>(c)) || c == '_' ||
          c == '.'))
      return false;
  }
  return key.find("..") == std::string::npos;
}

double parse_double_token(const std::string& tok, const std::string& key) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ConfigError("key '" + key + "': '" + tok + "' is not a number");
  return v;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

Config Config::parse_text(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (size_t hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!valid_key_chars(key))
      throw ConfigError("line " + std::to_string(lineno) + ": bad key '" +
                        key + "'");
    if (!known_key(key))
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" +
                        key + "'");
    if (value.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": key '" + key +
                        "' has no value");
    if (!cfg.values_.emplace(key, value).second)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": duplicate key '" + key + "'");
  }
  return cfg;
}

bool Config::has(const std::string& key) const {
  return values_.count(key) != 0;
}

std::string Config::get_string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end())
    throw ConfigError("missing required key '" + key + "'");
  return it->second;
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
  return parse_double_token(get_string(key), key);
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

long long Config::get_int(const std::string& key) const {
  const std::string tok = get_string(key);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ConfigError("key '" + key + "': '" + tok + "' is not an integer");
  return v;
}

long long Config::get_int(const std::string& key, long long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string tok = get_string(key);
  if (tok == "true") return true;
  if (tok == "false") return false;
  throw ConfigError("key '" + key + "': expected true or false, got '" + tok +
                    "'");
}

std::vector<double> Config::get_doubles(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& tok : split_ws(get_string(key)))
    out.push_back(parse_double_token(tok, key));
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

std::vector<Config::Triple> Config::get_triples(const std::string& key) const {
  std::vector<Triple> out;
  for (const std::string& tok : split_ws(get_string(key))) {
    size_t c1 = tok.find(':');
    size_t c2 = c1 == std::string::npos ? std::string::npos
                                        : tok.find(':', c1 + 1);
    if (c2 == std::string::npos || tok.find(':', c2 + 1) != std::string::npos)
      throw ConfigError("key '" + key + "': '" + tok +
                        "' is not an x:m:dm triple");
    out.push_back({parse_double_token(tok.substr(0, c1), key),
                   parse_double_token(tok.substr(c1 + 1, c2 - c1 - 1), key),
                   parse_double_token(tok.substr(c2 + 1), key)});
  }
  if (out.size() < 2)
    throw ConfigError("key '" + key + "': need at least two triples");
  return out;
}

}  // namespace loglab_cli
