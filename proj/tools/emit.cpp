#include "emit.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace loglab_cli {

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << body;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_json_file(const std::string& path, const Json& doc) {
  write_text_file(path, doc.dump(2) + "\n");
}

CsvWriter::CsvWriter(std::string header) : body_(std::move(header)) {
  body_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) body_ += ',';
    body_ += fmt(values[i]);
  }
  body_ += '\n';
}

namespace {
LogLevel g_level = LogLevel::error;

void emit_log(LogLevel level, const char* tag, const std::string& msg) {
  if (level <= g_level) std::cerr << '[' << tag << "] " << msg << '\n';
}
}  // namespace

void init_log_level_from_env() {
  const char* env = std::getenv("LOGLAB_LOG");
  if (!env) return;
  const std::string v = env;
  if (v == "error")
    g_level = LogLevel::error;
  else if (v == "info")
    g_level = LogLevel::info;
  else if (v == "debug")
    g_level = LogLevel::debug;
  else
    std::cerr << "[error] LOGLAB_LOG='" << v
              << "' not recognized, keeping level error\n";
}

void log_error(const std::string& msg) { emit_log(LogLevel::error, "error", msg); }
void log_info(const std::string& msg) { emit_log(LogLevel::info, "info", msg); }
void log_debug(const std::string& msg) { emit_log(LogLevel::debug, "debug", msg); }

}  // namespace loglab_cli
