#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace loglab_cli {

// Any problem with the run configuration: parse errors, unknown or
// duplicate keys, missing required keys, malformed or out-of-range values.
// The CLI maps this to exit code 3 before any computation starts.
struct ConfigError : std::runtime_error {
  explicit ConfigError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

// Strict `key = value` configuration.  One assignment per line, '#' starts
// a comment, keys are dotted lowercase identifiers and must belong to the
// known-key table; duplicates are rejected.  Values are typed on access.
class Config {
public:
  static Config parse_file(const std::string& path);
  static Config parse_text(const std::string& text);

  bool has(const std::string& key) const;

  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key) const;
  long long get_int(const std::string& key, long long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;

  struct Triple {
    double x, m, dm;
  };
  std::vector<Triple> get_triples(const std::string& key) const;

  const std::map<std::string, std::string>& raw() const { return values_; }

private:
  std::map<std::string, std::string> values_;
};

}  // namespace loglab_cli
