#include "maclaurin_cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>

namespace maclaurin::cli {
namespace {

template <class T>
T scalar(const YAML::Node& node, const std::string& key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(key, "value has the wrong type");
  }
}

template <class T>
std::vector<T> sequence(const YAML::Node& node, const std::string& key) {
  if (!node.IsSequence()) throw ConfigError(key, "expected a list");
  std::vector<T> out;
  for (const auto& item : node) out.push_back(scalar<T>(item, key));
  return out;
}

std::size_t count(const YAML::Node& node, const std::string& key) {
  const double v = scalar<double>(node, key);
  if (!(v >= 0.0) || v != std::floor(v)) throw ConfigError(key, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

void apply(ExperimentConfig& c, const std::string& key, const YAML::Node& v) {
  if (key == "experiment") {
    try {
      c.experiment = experiment_from_string(scalar<std::string>(v, key));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(key, e.what());
    }
  } else if (key == "measure") {
    try {
      c.measure = measure_from_string(scalar<std::string>(v, key));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(key, e.what());
    }
  } else if (key == "p") {
    c.p = scalar<double>(v, key);
  } else if (key == "k") {
    c.k = count(v, key);
  } else if (key == "k1") {
    c.k1 = count(v, key);
  } else if (key == "k2") {
    c.k2 = count(v, key);
  } else if (key == "n_grid") {
    if (!v.IsSequence()) throw ConfigError(key, "expected a list");
    c.n_grid.clear();
    for (const auto& item : v) c.n_grid.push_back(count(item, key));
  } else if (key == "N") {
    c.N = count(v, key);
  } else if (key == "seed") {
    c.seed = scalar<std::uint64_t>(v, key);
  } else if (key == "beta") {
    c.beta = scalar<double>(v, key);
  } else if (key == "t_grid") {
    c.t_grid = sequence<double>(v, key);
  } else if (key == "c") {
    c.c = scalar<double>(v, key);
  } else if (key == "ks_tolerance") {
    c.ks_tolerance = scalar<double>(v, key);
  } else if (key == "frequency_tolerance") {
    c.frequency_tolerance = scalar<double>(v, key);
  } else if (key == "variance_tolerance") {
    c.variance_tolerance = scalar<double>(v, key);
  } else if (key == "event_floor") {
    c.event_floor = scalar<double>(v, key);
  } else if (key == "epsilon") {
    c.epsilon = scalar<double>(v, key);
  } else if (key == "importance_sampling") {
    c.importance_sampling = scalar<bool>(v, key);
  } else if (key == "importance_samples") {
    c.importance_samples = count(v, key);
  } else if (key == "non_theorem") {
    c.non_theorem = scalar<bool>(v, key);
  } else if (key == "output") {
    c.output = scalar<std::string>(v, key);
  }
}

void apply_mapping(ExperimentConfig& c, const YAML::Node& map) {
  if (!map.IsMap()) throw ConfigError("experiments", "each entry must be a mapping");
  const auto& keys = config_keys();
  for (const auto& kv : map) {
    const std::string key = kv.first.as<std::string>();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(key, "unknown key");
    }
    apply(c, key, kv.second);
  }
}

void check(const ExperimentConfig& c) {
  if (!(c.p >= 1.0) || !std::isfinite(c.p)) throw ConfigError("p", "p must be ≥ 1");
  if (!(c.beta > 0.0 && c.beta < 0.5)) throw ConfigError("beta", "beta must lie in (0, 1/2)");
  if (c.k1 >= c.k2) throw ConfigError("k1", "k1 must be < k2");
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    const auto colon = msg.find(':');
    if (colon == std::string::npos) throw ConfigError("config", msg);
    throw ConfigError(msg.substr(0, colon), msg.substr(colon + 2));
  }
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "experiment", "measure",      "p",
      "k",          "k1",           "k2",
      "n_grid",     "N",            "seed",
      "beta",       "t_grid",       "c",
      "ks_tolerance", "frequency_tolerance", "variance_tolerance",
      "event_floor", "epsilon",     "importance_sampling",
      "importance_samples", "non_theorem", "output"};
  return keys;
}

std::vector<ExperimentConfig> parse_config(const std::string& text) {
  YAML::Node doc;
  try {
    doc = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("document", std::string("malformed: ") + e.what());
  }
  if (!doc.IsMap()) throw ConfigError("document", "top level must be a mapping");

  std::vector<ExperimentConfig> out;
  if (doc["experiments"]) {
    for (const auto& kv : doc) {
      const std::string key = kv.first.as<std::string>();
      if (key != "experiments" && key != "defaults") throw ConfigError(key, "unknown top-level key");
    }
    ExperimentConfig defaults;
    if (doc["defaults"]) apply_mapping(defaults, doc["defaults"]);
    const YAML::Node list = doc["experiments"];
    if (!list.IsSequence() || list.size() == 0) throw ConfigError("experiments", "expected a non-empty list");
    for (const auto& entry : list) {
      ExperimentConfig c = defaults;
      apply_mapping(c, entry);
      check(c);
      out.push_back(std::move(c));
    }
  } else {
    ExperimentConfig c;
    apply_mapping(c, doc);
    check(c);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace maclaurin::cli
