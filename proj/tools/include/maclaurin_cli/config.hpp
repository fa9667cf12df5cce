#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "maclaurin/experiments.hpp"

namespace maclaurin::cli {

/// A configuration problem tied to one key of the document.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Parses a YAML (or JSON) document into validated experiment configs.
///
/// The document is either one experiment mapping or
///   defaults: {...}        # optional, merged into every entry
///   experiments: [{...}, ...]
/// Unknown keys and out-of-range values raise ConfigError naming the key.
std::vector<ExperimentConfig> parse_config(const std::string& text);

/// Keys accepted in an experiment mapping.
const std::vector<std::string>& config_keys();

}  // namespace maclaurin::cli
