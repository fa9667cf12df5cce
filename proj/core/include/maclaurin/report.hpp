#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace maclaurin {

/// One row of the CSV report schema.
struct CsvRow {
  std::string experiment;
  std::string measure;
  double p = 0.0;
  std::string k;  ///< "k" or "k1/k2"
  std::size_t n = 0;
  std::size_t N = 0;
  std::uint64_t seed = 0;
  std::string statistic;
  double value = 0.0;
  double stderr_value = 0.0;
};

/// Round-trip decimal form (%.17g); nan and inf spelled out.
std::string format_double(double v);
/// Six significant digits, for check names and log lines.
std::string format_short(double v);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

class Report {
 public:
  void add(CsvRow row) { rows_.push_back(std::move(row)); }
  void add_check(CheckResult check) { checks_.push_back(std::move(check)); }
  void echo(std::string key, std::string value) { config_.emplace_back(std::move(key), std::move(value)); }
  void append(const Report& other);

  const std::vector<CsvRow>& rows() const noexcept { return rows_; }
  const std::vector<CheckResult>& checks() const noexcept { return checks_; }
  bool all_passed() const noexcept;

  static std::string csv_header();
  std::string to_csv() const;
  /// Summary document: config echo, checks, rows.
  std::string to_json() const;

  void write_csv(const std::filesystem::path& path) const;
  void write_json(const std::filesystem::path& path) const;

 private:
  std::vector<CsvRow> rows_;
  std::vector<CheckResult> checks_;
  std::vector<std::pair<std::string, std::string>> config_;
};

/// Writes text to path, throwing std::runtime_error naming the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace maclaurin
