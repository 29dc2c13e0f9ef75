#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace loglab_cli {

// Insertion-ordered so emitted documents are byte-stable across runs.
using Json = nlohmann::ordered_json;

// Shortest decimal string that round-trips the exact double value.
std::string fmt(double v);

void write_text_file(const std::string& path, const std::string& body);
void write_json_file(const std::string& path, const Json& doc);

// One CSV row per call; values are fmt()-formatted, header verbatim.
class CsvWriter {
public:
  explicit CsvWriter(std::string header);
  void row(const std::vector<double>& values);
  const std::string& body() const { return body_; }

private:
  std::string body_;
};

enum class LogLevel { error = 0, info = 1, debug = 2 };

// Level comes from LOGLAB_LOG (error, info, debug); messages go to stderr
// only, data files stay clean.
void init_log_level_from_env();
void log_error(const std::string& msg);
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace loglab_cli
