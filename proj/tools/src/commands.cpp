#include "maclaurin_cli/commands.hpp"

#include <boost/uuid/detail/sha1.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "maclaurin/acceptance.hpp"
#include "maclaurin/constants.hpp"
#include "maclaurin/experiments.hpp"
#include "maclaurin/report.hpp"
#include "maclaurin/summation.hpp"
#include "maclaurin/symmetric_means.hpp"
#include "maclaurin/ustat.hpp"
#include "maclaurin_cli/config.hpp"

namespace maclaurin::cli {
namespace {

constexpr std::uint64_t kDefaultSeed = 1;

std::uint64_t seed_or_default(const GlobalOptions& g) { return g.seed.value_or(kDefaultSeed); }

void require_format(const GlobalOptions& g) {
  if (g.format != "csv" && g.format != "json") {
    throw std::invalid_argument("--format must be csv or json (got '" + g.format + "')");
  }
}

// Writes through a temporary file so a failed write never leaves a truncated output behind.
void write_atomically(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".partial";
  try {
    write_text_file(tmp, text);
    std::filesystem::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_manifest(const GlobalOptions& g, RunManifest& m) {
  m.finished = utc_timestamp();
  std::filesystem::create_directories(g.out);
  write_atomically(g.out / "manifest.json", m.to_json());
}

}  // namespace

bool RunManifest::passed() const {
  if (!error.empty()) return false;
  for (const auto& r : results) {
    if (!r.second) return false;
  }
  return true;
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["input_hash"] = input_hash;
  j["started"] = started;
  j["finished"] = finished;
  j["passed"] = passed();
  if (!error.empty()) j["error"] = error;
  nlohmann::ordered_json rs = nlohmann::ordered_json::array();
  for (const auto& [name, ok] : results) rs.push_back({{"name", name}, {"passed", ok}});
  j["results"] = rs;
  j["outputs"] = outputs;
  j["config"] = config_echo;
  return j.dump(2) + "\n";
}

std::string git_blob_hash(const std::string& content) {
  const std::string blob = "blob " + std::to_string(content.size()) + '\0' + content;
  boost::uuids::detail::sha1 sha;
  sha.process_bytes(blob.data(), blob.size());
  boost::uuids::detail::sha1::digest_type digest;
  sha.get_digest(digest);
  char hex[41];
  for (int i = 0; i < 5; ++i) std::snprintf(hex + 8 * i, 9, "%08x", digest[i]);
  return std::string(hex, 40);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int run_constants(double p, const GlobalOptions& g, std::ostream& os) {
  require_format(g);
  const PGaussConstants c = compute_constants(p);
  if (g.format == "json") {
    os << c.to_json() << "\n";
    return 0;
  }
  os << "constant,value,quadrature,closed-form,abs_diff,quadrature_error\n";
  auto line = [&](const char* name, const DualValue& v) {
    os << name << ',' << format_double(v.value()) << ',' << format_double(v.quadrature) << ','
       << format_double(v.closed_form) << ',' << format_double(v.abs_diff()) << ',' << format_double(v.quadrature_error)
       << '\n';
  };
  line("m_p", c.m_p);
  line("s_p2", c.s_p2);
  line("rho_p2", c.rho_p2);
  return 0;
}

int run_sample(Measure measure, std::size_t n, double p, std::size_t count, const std::string& binary_path,
               const GlobalOptions& g, std::ostream& os) {
  require_format(g);
  const MeasureSpec spec = make_measure(measure, p);
  RngStream rng = RngStream(seed_or_default(g)).split(0x53414d50);
  std::vector<SampleVector> rows(count);
  for (auto& x : rows) sample_measure_into(rng, n, p, spec, x);
  if (!binary_path.empty()) write_sample_matrix(binary_path, rows);
  if (g.format == "json") {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& x : rows) j.push_back(std::vector<double>(x.coords().begin(), x.coords().end()));
    os << j.dump() << "\n";
    return 0;
  }
  for (std::size_t i = 0; i < n; ++i) os << (i ? "," : "") << 'x' << (i + 1);
  os << "\n";
  for (const auto& x : rows) {
    for (std::size_t i = 0; i < n; ++i) os << (i ? "," : "") << format_double(x[i]);
    os << "\n";
  }
  return 0;
}

int run_means(const std::vector<double>& values, Measure measure, std::size_t n, double p, const GlobalOptions& g,
              std::ostream& os) {
  require_format(g);
  SampleVector x;
  if (values.empty()) {
    RngStream rng = RngStream(seed_or_default(g)).split(0x4d45414e);
    sample_measure_into(rng, n, p, make_measure(measure, p), x);
  } else {
    x = SampleVector::from_coords(values, p);
  }
  const SymMeanProfile prof = symmetric_mean_profile(x);
  if (g.format == "json") {
    nlohmann::ordered_json j;
    j["n"] = prof.n;
    j["p"] = prof.p;
    std::vector<std::string> logs;
    for (std::size_t k = 1; k <= prof.n; ++k) logs.push_back(format_double(prof.log_S[k]));
    j["log_S"] = logs;
    j["monotone"] = prof.monotone();
    os << j.dump(2) << "\n";
  } else {
    os << "n,p,k,log_S\n";
    for (std::size_t k = 1; k <= prof.n; ++k) {
      os << prof.n << ',' << format_double(prof.p) << ',' << k << ',' << format_double(prof.log_S[k]) << "\n";
    }
  }
  return prof.monotone() ? 0 : 1;
}

int run_ustat_check(std::size_t n, std::size_t k, const GlobalOptions& g, std::ostream& os) {
  if (n == 0 || k > n) throw std::invalid_argument("ustat-check needs 1 <= k <= n");
  RngStream rng = RngStream(seed_or_default(g)).split(0x55535441);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.exponential();
  const double mean = compensated_sum(v) / static_cast<double>(n);
  const double direct = product_ustat(v, k);

  bool ok = true;
  os << "check,value,threshold,pass\n";
  auto report = [&](const std::string& name, double value, double threshold) {
    const bool pass = value <= threshold;
    ok = ok && pass;
    os << name << ',' << format_double(value) << ',' << format_double(threshold) << ',' << (pass ? "true" : "false")
       << "\n";
  };

  if (k <= 3 || n <= kUstatEnumerationGuard) {
    double residual = 0.0;
    for (double m : {0.0, 1.0, mean}) {
      residual = std::max(residual, std::abs(hoeffding_components(v, k, m).reconstruct() - direct) / direct);
    }
    report("hoeffding_identity_residual", residual, 1e-10);
  }
  if (n <= kUstatEnumerationGuard) {
    const double brute = ustat_brute(v, k, [](std::span<const double> a) {
      double prod = 1.0;
      for (double x : a) prod *= x;
      return prod;
    });
    report("product_vs_enumeration", std::abs(brute - direct) / direct, 1e-12);
  }
  if (k >= 2 && n <= kBsumGuard) {
    const BsumResult b = bsum_check(v, k);
    report("repeated_index_bound_excess", std::max(0.0, b.lhs - b.rhs) / b.rhs, 1e-12);
  }
  return ok ? 0 : 1;
}

int run_experiment_file(const std::filesystem::path& config_path, const GlobalOptions& g, std::ostream& os) {
  RunManifest m;
  m.command = "experiment --config " + config_path.string();
  m.started = utc_timestamp();
  try {
    require_format(g);
    const std::string text = read_file(config_path);
    m.config_echo = text;
    std::string hashed = text + "\nformat=" + g.format;
    if (g.seed) hashed += "\nseed=" + std::to_string(*g.seed);
    m.input_hash = git_blob_hash(hashed);
    auto configs = parse_config(text);
    std::filesystem::create_directories(g.out);
    for (std::size_t i = 0; i < configs.size(); ++i) {
      ExperimentConfig c = configs[i];
      if (g.seed) c.seed = *g.seed;
      c.threads = g.threads;
      const std::string stem =
          c.output.empty() ? (std::to_string(i + 1) + "-" + to_string(c.experiment)) : c.output;
      const Report r = run_experiment(c);
      const std::filesystem::path path = g.out / (stem + "." + g.format);
      write_atomically(path, g.format == "json" ? r.to_json() : r.to_csv());
      m.outputs.push_back(path.string());
      for (const auto& chk : r.checks()) {
        m.results.emplace_back(stem + ": " + chk.name, chk.passed);
        os << (chk.passed ? "[PASS] " : "[FAIL] ") << stem << ": " << chk.name
           << (chk.detail.empty() ? "" : " (" + chk.detail + ")") << "\n";
      }
    }
  } catch (const std::exception& e) {
    m.error = e.what();
    std::cerr << "error: " << e.what() << "\n";
    write_manifest(g, m);
    return 2;
  }
  write_manifest(g, m);
  return m.passed() ? 0 : 1;
}

int run_all_acceptance(double sample_scale, const std::vector<int>& only, const GlobalOptions& g, std::ostream& os) {
  RunManifest m;
  m.command = "all-acceptance";
  m.started = utc_timestamp();
  try {
    require_format(g);
    AcceptanceOptions o;
    if (g.seed) o.seed = *g.seed;
    o.threads = g.threads;
    o.sample_scale = sample_scale;
    o.only = only;
    o.log = &os;
    m.input_hash = git_blob_hash("all-acceptance seed=" + std::to_string(o.seed) +
                                 " scale=" + format_double(sample_scale));
    const AcceptanceResult r = run_acceptance(o);
    std::filesystem::create_directories(g.out);
    const std::filesystem::path path = g.out / ("acceptance." + g.format);
    write_atomically(path, g.format == "json" ? r.report.to_json() : r.report.to_csv());
    m.outputs.push_back(path.string());
    for (const auto& c : r.criteria) m.results.emplace_back("criterion " + std::to_string(c.id) + ": " + c.name, c.passed);
  } catch (const std::exception& e) {
    m.error = e.what();
    std::cerr << "error: " << e.what() << "\n";
    write_manifest(g, m);
    return 2;
  }
  write_manifest(g, m);
  return m.passed() ? 0 : 1;
}

}  // namespace maclaurin::cli
