#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcpde/net.hpp"
#include "mcpde/problem.hpp"
#include "mcpde/problems.hpp"
#include "mcpde/train.hpp"

#include <json.hpp>

namespace mcpde {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Minimal key-value config format: [section] headers, `key = value` lines,
// '#' comments. Values are numbers, booleans, quoted strings or flat number
// arrays — all this project needs.
struct ConfigValue {
  enum class Kind { Number, Bool, String, NumberList } kind = Kind::Number;
  double num = 0.0;
  bool flag = false;
  std::string str;
  std::vector<double> list;
};

using ConfigTable = std::map<std::string, std::map<std::string, ConfigValue>>;

ConfigTable parse_config(const std::string& text);
ConfigTable parse_config_file(const std::string& path);

// Fully resolved experiment description: problem, network, training budget
// and output locations. Round-trips through both the config format and JSON
// (the latter is embedded in checkpoints).
struct ExperimentConfig {
  std::string problem_name;
  InterfaceParams interface_params;
  bool interface_epsilon_set = false;  // default is sqrt(dt)
  TaxisParams taxis_params;
  double r_min = 0.3, r_max = 20.0, sigma_r = 1.0;

  NetworkSpec network;
  TrainConfig train;

  std::string out_dir = "runs/out";
  long checkpoint_every = 0;  // 0: only the final checkpoint
  int eval_grid = 128;
  int oracle_nx = 129;

  static ExperimentConfig from_table(const ConfigTable& table);
  static ExperimentConfig from_file(const std::string& path);
  std::string serialize() const;

  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);

  ProblemSpec build_problem() const;
};

// Named architecture presets; the input layer width follows the problem's
// encoding.
NetworkSpec network_preset(const std::string& name, InputEncoding encoding);

}  // namespace mcpde
