#include "maclaurin/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace maclaurin {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

nlohmann::ordered_json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_short(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void Report::append(const Report& other) {
  rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
  checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

bool Report::all_passed() const noexcept {
  for (const auto& c : checks_) {
    if (!c.passed) return false;
  }
  return true;
}

std::string Report::csv_header() { return "experiment,measure,p,k,n,N,seed,statistic,value,stderr\n"; }

std::string Report::to_csv() const {
  std::ostringstream os;
  os << csv_header();
  for (const auto& r : rows_) {
    os << csv_field(r.experiment) << ',' << csv_field(r.measure) << ',' << format_double(r.p) << ','
       << csv_field(r.k) << ',' << r.n << ',' << r.N << ',' << r.seed << ',' << csv_field(r.statistic) << ','
       << format_double(r.value) << ',' << format_double(r.stderr_value) << '\n';
  }
  return os.str();
}

std::string Report::to_json() const {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config_) cfg[k] = v;
  doc["config"] = cfg;
  doc["passed"] = all_passed();
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : checks_) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  doc["checks"] = checks;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : rows_) {
    rows.push_back({{"experiment", r.experiment},
                    {"measure", r.measure},
                    {"p", json_number(r.p)},
                    {"k", r.k},
                    {"n", r.n},
                    {"N", r.N},
                    {"seed", r.seed},
                    {"statistic", r.statistic},
                    {"value", json_number(r.value)},
                    {"stderr", json_number(r.stderr_value)}});
  }
  doc["rows"] = rows;
  return doc.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
  os << text;
  os.flush();
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

void Report::write_csv(const std::filesystem::path& path) const { write_text_file(path, to_csv()); }
void Report::write_json(const std::filesystem::path& path) const { write_text_file(path, to_json()); }

}  // namespace maclaurin
