#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "maclaurin/sampling.hpp"

namespace maclaurin::cli {

struct GlobalOptions {
  std::optional<std::uint64_t> seed;  ///< overrides the seed of every config
  unsigned threads = 0;
  std::filesystem::path out = ".";
  std::string format = "csv";  ///< csv or json
};

/// Record of one CLI run, written next to its outputs whether or not it succeeded.
struct RunManifest {
  std::string command;
  std::string config_echo;
  std::string input_hash;  ///< git blob hash of the config text and overrides
  std::string started;
  std::string finished;
  std::vector<std::pair<std::string, bool>> results;
  std::vector<std::string> outputs;
  std::string error;

  bool passed() const;
  std::string to_json() const;
};

/// Hash git would assign to a blob with this content.
std::string git_blob_hash(const std::string& content);
std::string utc_timestamp();

int run_constants(double p, const GlobalOptions& g, std::ostream& os);
int run_sample(Measure measure, std::size_t n, double p, std::size_t count, const std::string& binary_path,
               const GlobalOptions& g, std::ostream& os);
/// Profile log S_1..log S_n of explicit values, or of one draw when values is empty.
int run_means(const std::vector<double>& values, Measure measure, std::size_t n, double p, const GlobalOptions& g,
              std::ostream& os);
int run_ustat_check(std::size_t n, std::size_t k, const GlobalOptions& g, std::ostream& os);
int run_experiment_file(const std::filesystem::path& config_path, const GlobalOptions& g, std::ostream& os);
int run_all_acceptance(double sample_scale, const std::vector<int>& only, const GlobalOptions& g,
                       std::ostream& os);

}  // namespace maclaurin::cli
