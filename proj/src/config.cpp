#include "mcpde/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace mcpde {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

double parse_number(const std::string& s, const std::string& where) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError("expected a number at " + where + ", got '" + s + "'");
  }
  if (pos != s.size()) throw ConfigError("trailing characters in number at " + where);
  return v;
}

ConfigValue parse_value(const std::string& raw, const std::string& where) {
  ConfigValue v;
  if (raw.empty()) throw ConfigError("missing value at " + where);
  if (raw.front() == '"') {
    if (raw.size() < 2 || raw.back() != '"')
      throw ConfigError("unterminated string at " + where);
    v.kind = ConfigValue::Kind::String;
    v.str = raw.substr(1, raw.size() - 2);
    return v;
  }
  if (raw == "true" || raw == "false") {
    v.kind = ConfigValue::Kind::Bool;
    v.flag = raw == "true";
    return v;
  }
  if (raw.front() == '[') {
    if (raw.back() != ']') throw ConfigError("unterminated array at " + where);
    v.kind = ConfigValue::Kind::NumberList;
    std::string body = raw.substr(1, raw.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) v.list.push_back(parse_number(item, where));
    }
    return v;
  }
  v.kind = ConfigValue::Kind::Number;
  v.num = parse_number(raw, where);
  return v;
}

}  // namespace

ConfigTable parse_config(const std::string& text) {
  ConfigTable table;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("bad section header on line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      table[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value on line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string raw = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key on line " + std::to_string(lineno));
    const std::string where = "[" + section + "]." + key;
    if (table[section].count(key)) throw ConfigError("duplicate key " + where);
    table[section][key] = parse_value(raw, where);
  }
  return table;
}

ConfigTable parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

class SectionReader {
 public:
  SectionReader(const ConfigTable& t, std::string section) : section_(std::move(section)) {
    auto it = t.find(section_);
    if (it != t.end()) entries_ = &it->second;
  }

  bool present() const { return entries_ != nullptr; }

  std::optional<ConfigValue> get(const std::string& key) {
    if (!entries_) return std::nullopt;
    auto it = entries_->find(key);
    if (it == entries_->end()) return std::nullopt;
    seen_.push_back(key);
    return it->second;
  }

  double number(const std::string& key, double fallback) {
    auto v = get(key);
    if (!v) return fallback;
    if (v->kind != ConfigValue::Kind::Number) throw ConfigError(where(key) + " must be a number");
    return v->num;
  }

  long integer(const std::string& key, long fallback) {
    const double v = number(key, static_cast<double>(fallback));
    if (v != std::floor(v)) throw ConfigError(where(key) + " must be an integer");
    return static_cast<long>(v);
  }

  bool boolean(const std::string& key, bool fallback) {
    auto v = get(key);
    if (!v) return fallback;
    if (v->kind != ConfigValue::Kind::Bool) throw ConfigError(where(key) + " must be a boolean");
    return v->flag;
  }

  std::string string(const std::string& key, const std::string& fallback) {
    auto v = get(key);
    if (!v) return fallback;
    if (v->kind != ConfigValue::Kind::String) throw ConfigError(where(key) + " must be a string");
    return v->str;
  }

  std::string required_string(const std::string& key) {
    auto v = get(key);
    if (!v) throw ConfigError("missing required key " + where(key));
    if (v->kind != ConfigValue::Kind::String) throw ConfigError(where(key) + " must be a string");
    return v->str;
  }

  std::vector<int> int_list(const std::string& key, std::vector<int> fallback) {
    auto v = get(key);
    if (!v) return fallback;
    if (v->kind != ConfigValue::Kind::NumberList) throw ConfigError(where(key) + " must be an array");
    std::vector<int> out;
    for (double d : v->list) {
      if (d != std::floor(d)) throw ConfigError(where(key) + " must hold integers");
      out.push_back(static_cast<int>(d));
    }
    return out;
  }

  void reject_unknown() const {
    if (!entries_) return;
    for (const auto& [key, value] : *entries_) {
      (void)value;
      if (std::find(seen_.begin(), seen_.end(), key) == seen_.end())
        throw ConfigError("unknown key " + where(key));
    }
  }

 private:
  std::string where(const std::string& key) const { return "[" + section_ + "]." + key; }

  std::string section_;
  const std::map<std::string, ConfigValue>* entries_ = nullptr;
  mutable std::vector<std::string> seen_;
};

ActivationSpec read_activation(const std::string& name, double param, bool param_given) {
  const Activation kind = activation_from_name(name);
  if (param_given) return {kind, param};
  switch (kind) {
    case Activation::LeakyRelu: return ActivationSpec::leaky_relu();
    case Activation::Elu: return ActivationSpec::elu();
    case Activation::Swish: return ActivationSpec::swish();
    case Activation::Tanh: return ActivationSpec::tanh();
  }
  return ActivationSpec::tanh();
}

}  // namespace

NetworkSpec network_preset(const std::string& name, InputEncoding encoding) {
  NetworkSpec spec;
  spec.encoding = encoding;
  if (name == "mlp_laplace") {
    spec.kind = NetKind::Mlp;
    spec.mlp_dims = {encoded_dim(encoding), 20, 20, 20, 20, 1};
    spec.activation = ActivationSpec::swish();
    return spec;
  }
  spec.kind = NetKind::Resnet;
  if (name == "resnet_laplace") {
    spec.blocks = 3;
    spec.block_dims = {20, 20, 20};
    spec.activation = ActivationSpec::swish();
    spec.activation_in = ActivationSpec::swish();
  } else if (name == "resnet_interface") {
    spec.blocks = 3;
    spec.block_dims = {60, 60, 60, 60};
    spec.activation = ActivationSpec::swish();
    spec.activation_in = ActivationSpec::leaky_relu();
  } else if (name == "resnet_taxis") {
    spec.blocks = 3;
    spec.block_dims = {40, 40, 40, 40};
    spec.activation = ActivationSpec::elu();
    spec.activation_in = ActivationSpec::elu();
  } else if (name == "resnet_taxis_family") {
    spec.blocks = 4;
    spec.block_dims = {40, 40, 40, 40};
    spec.activation = ActivationSpec::leaky_relu(0.1);
    spec.activation_in = ActivationSpec::leaky_relu(0.1);
  } else {
    throw ConfigError("unknown network preset: " + name);
  }
  return spec;
}

ExperimentConfig ExperimentConfig::from_table(const ConfigTable& table) {
  ExperimentConfig cfg;

  SectionReader problem(table, "problem");
  if (!problem.present()) throw ConfigError("missing [problem] section");
  cfg.problem_name = problem.required_string("name");

  InputEncoding encoding = InputEncoding::Coords;
  if (cfg.problem_name == "laplace_u1" || cfg.problem_name == "laplace_u2") {
    // no parameters
  } else if (cfg.problem_name == "interface") {
    encoding = InputEncoding::CoordsOneHot;
    cfg.interface_params.sigma0 = problem.number("sigma0", cfg.interface_params.sigma0);
    cfg.interface_params.sigma1 = problem.number("sigma1", cfg.interface_params.sigma1);
    cfg.interface_params.source = problem.number("source", cfg.interface_params.source);
    cfg.interface_params.delta_v = problem.number("delta_v", cfg.interface_params.delta_v);
    if (auto v = problem.get("epsilon")) {
      if (v->kind != ConfigValue::Kind::Number) throw ConfigError("[problem].epsilon must be a number");
      cfg.interface_params.epsilon = v->num;
      cfg.interface_epsilon_set = true;
    }
  } else if (cfg.problem_name == "taxis" || cfg.problem_name == "taxis_family") {
    cfg.taxis_params.chi = problem.number("chi", cfg.taxis_params.chi);
    cfg.taxis_params.diffusion = problem.number("diffusion", cfg.taxis_params.diffusion);
    cfg.taxis_params.r0 = problem.number("r0", cfg.taxis_params.r0);
    if (cfg.problem_name == "taxis") {
      cfg.taxis_params.r = problem.number("r", cfg.taxis_params.r);
    } else {
      encoding = InputEncoding::CoordsParam;
      cfg.r_min = problem.number("r_min", cfg.r_min);
      cfg.r_max = problem.number("r_max", cfg.r_max);
      cfg.sigma_r = problem.number("sigma_r", cfg.sigma_r);
      if (cfg.r_min >= cfg.r_max) throw ConfigError("[problem].r_min must be below r_max");
    }
  } else {
    throw ConfigError("unknown problem name: " + cfg.problem_name);
  }
  problem.reject_unknown();

  SectionReader train(table, "train");
  cfg.train.dt = train.number("dt", cfg.train.dt);
  cfg.train.n_walkers = static_cast<int>(train.integer("walkers", cfg.train.n_walkers));
  cfg.train.m_samples = static_cast<int>(train.integer("target_samples", cfg.train.m_samples));
  cfg.train.s_boundary = static_cast<int>(train.integer("boundary_samples", cfg.train.s_boundary));
  cfg.train.iterations = train.integer("iterations", cfg.train.iterations);
  cfg.train.lr0 = train.number("lr0", cfg.train.lr0);
  cfg.train.decay_rate = train.number("decay_rate", cfg.train.decay_rate);
  cfg.train.decay_steps = train.number("decay_steps", cfg.train.decay_steps);
  cfg.train.adam.beta1 = train.number("adam_beta1", cfg.train.adam.beta1);
  cfg.train.adam.beta2 = train.number("adam_beta2", cfg.train.adam.beta2);
  cfg.train.adam.eps = train.number("adam_eps", cfg.train.adam.eps);
  cfg.train.boundary_weight = train.number("boundary_weight", cfg.train.boundary_weight);
  cfg.train.interior_half = train.boolean("interior_half", cfg.train.interior_half);
  cfg.train.exp_clamp = train.number("exp_clamp", cfg.train.exp_clamp);
  cfg.train.seed = static_cast<std::uint64_t>(train.integer("seed", 0));
  cfg.train.eval_every = train.integer("eval_every", cfg.train.eval_every);
  train.reject_unknown();
  if (cfg.train.dt <= 0) throw ConfigError("[train].dt must be positive");
  if (cfg.train.n_walkers < 1 || cfg.train.m_samples < 1 || cfg.train.s_boundary < 1)
    throw ConfigError("[train] walkers, target_samples and boundary_samples must be >= 1");
  if (cfg.train.lr0 <= 0) throw ConfigError("[train].lr0 must be positive");

  if (!cfg.interface_epsilon_set) cfg.interface_params.epsilon = std::sqrt(cfg.train.dt);

  SectionReader network(table, "network");
  const std::string preset = network.string("preset", "");
  if (!preset.empty()) {
    cfg.network = network_preset(preset, encoding);
  } else {
    cfg.network.encoding = encoding;
    const std::string kind = network.string("kind", "resnet");
    const std::string act = network.string("activation", "tanh");
    const bool ap_given = network.get("activation_param").has_value();
    const double ap = network.number("activation_param", 1.0);
    cfg.network.activation = read_activation(act, ap, ap_given);
    const std::string act_in = network.string("activation_in", act);
    const bool aip_given = network.get("activation_in_param").has_value();
    const double aip = network.number("activation_in_param", ap);
    cfg.network.activation_in = read_activation(act_in, aip, aip_given || ap_given);
    if (kind == "mlp") {
      cfg.network.kind = NetKind::Mlp;
      cfg.network.mlp_dims = network.int_list("mlp_dims", {encoded_dim(encoding), 20, 20, 1});
    } else if (kind == "resnet") {
      cfg.network.kind = NetKind::Resnet;
      cfg.network.blocks = static_cast<int>(network.integer("blocks", 3));
      cfg.network.block_dims = network.int_list("block_dims", {20, 20, 20});
    } else {
      throw ConfigError("[network].kind must be \"mlp\" or \"resnet\"");
    }
  }
  network.reject_unknown();
  try {
    cfg.network.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("[network] invalid: ") + e.what());
  }

  SectionReader output(table, "output");
  cfg.out_dir = output.string("dir", cfg.out_dir);
  cfg.checkpoint_every = output.integer("checkpoint_every", cfg.checkpoint_every);
  output.reject_unknown();

  SectionReader eval(table, "eval");
  cfg.eval_grid = static_cast<int>(eval.integer("grid", cfg.eval_grid));
  eval.reject_unknown();

  SectionReader oracle(table, "oracle");
  cfg.oracle_nx = static_cast<int>(oracle.integer("nx", cfg.oracle_nx));
  oracle.reject_unknown();

  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  return from_table(parse_config_file(path));
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream out;
  out.precision(17);
  out << "[problem]\n";
  out << "name = \"" << problem_name << "\"\n";
  if (problem_name == "interface") {
    out << "sigma0 = " << interface_params.sigma0 << "\n";
    out << "sigma1 = " << interface_params.sigma1 << "\n";
    out << "source = " << interface_params.source << "\n";
    out << "delta_v = " << interface_params.delta_v << "\n";
    if (interface_epsilon_set) out << "epsilon = " << interface_params.epsilon << "\n";
  } else if (problem_name == "taxis" || problem_name == "taxis_family") {
    out << "chi = " << taxis_params.chi << "\n";
    out << "diffusion = " << taxis_params.diffusion << "\n";
    out << "r0 = " << taxis_params.r0 << "\n";
    if (problem_name == "taxis") {
      out << "r = " << taxis_params.r << "\n";
    } else {
      out << "r_min = " << r_min << "\n";
      out << "r_max = " << r_max << "\n";
      out << "sigma_r = " << sigma_r << "\n";
    }
  }

  out << "\n[network]\n";
  if (network.kind == NetKind::Mlp) {
    out << "kind = \"mlp\"\n";
    out << "mlp_dims = [";
    for (std::size_t i = 0; i < network.mlp_dims.size(); ++i)
      out << (i ? ", " : "") << network.mlp_dims[i];
    out << "]\n";
  } else {
    out << "kind = \"resnet\"\n";
    out << "blocks = " << network.blocks << "\n";
    out << "block_dims = [";
    for (std::size_t i = 0; i < network.block_dims.size(); ++i)
      out << (i ? ", " : "") << network.block_dims[i];
    out << "]\n";
  }
  out << "activation = \"" << activation_name(network.activation.kind) << "\"\n";
  out << "activation_param = " << network.activation.param << "\n";
  out << "activation_in = \"" << activation_name(network.activation_in.kind) << "\"\n";
  out << "activation_in_param = " << network.activation_in.param << "\n";

  out << "\n[train]\n";
  out << "dt = " << train.dt << "\n";
  out << "walkers = " << train.n_walkers << "\n";
  out << "target_samples = " << train.m_samples << "\n";
  out << "boundary_samples = " << train.s_boundary << "\n";
  out << "iterations = " << train.iterations << "\n";
  out << "lr0 = " << train.lr0 << "\n";
  out << "decay_rate = " << train.decay_rate << "\n";
  out << "decay_steps = " << train.decay_steps << "\n";
  out << "adam_beta1 = " << train.adam.beta1 << "\n";
  out << "adam_beta2 = " << train.adam.beta2 << "\n";
  out << "adam_eps = " << train.adam.eps << "\n";
  out << "boundary_weight = " << train.boundary_weight << "\n";
  out << "interior_half = " << (train.interior_half ? "true" : "false") << "\n";
  out << "exp_clamp = " << train.exp_clamp << "\n";
  out << "seed = " << train.seed << "\n";
  out << "eval_every = " << train.eval_every << "\n";

  out << "\n[output]\n";
  out << "dir = \"" << out_dir << "\"\n";
  out << "checkpoint_every = " << checkpoint_every << "\n";

  out << "\n[eval]\n";
  out << "grid = " << eval_grid << "\n";

  out << "\n[oracle]\n";
  out << "nx = " << oracle_nx << "\n";
  return out.str();
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["problem"]["name"] = problem_name;
  if (problem_name == "interface") {
    j["problem"]["sigma0"] = interface_params.sigma0;
    j["problem"]["sigma1"] = interface_params.sigma1;
    j["problem"]["source"] = interface_params.source;
    j["problem"]["delta_v"] = interface_params.delta_v;
    j["problem"]["epsilon"] = interface_params.epsilon;
    j["problem"]["epsilon_set"] = interface_epsilon_set;
  } else if (problem_name == "taxis" || problem_name == "taxis_family") {
    j["problem"]["chi"] = taxis_params.chi;
    j["problem"]["diffusion"] = taxis_params.diffusion;
    j["problem"]["r0"] = taxis_params.r0;
    j["problem"]["r"] = taxis_params.r;
    j["problem"]["r_min"] = r_min;
    j["problem"]["r_max"] = r_max;
    j["problem"]["sigma_r"] = sigma_r;
  }
  j["network"]["kind"] = network.kind == NetKind::Mlp ? "mlp" : "resnet";
  j["network"]["mlp_dims"] = network.mlp_dims;
  j["network"]["blocks"] = network.blocks;
  j["network"]["block_dims"] = network.block_dims;
  j["network"]["activation"] = activation_name(network.activation.kind);
  j["network"]["activation_param"] = network.activation.param;
  j["network"]["activation_in"] = activation_name(network.activation_in.kind);
  j["network"]["activation_in_param"] = network.activation_in.param;
  j["train"] = {{"dt", train.dt},
                {"walkers", train.n_walkers},
                {"target_samples", train.m_samples},
                {"boundary_samples", train.s_boundary},
                {"iterations", train.iterations},
                {"lr0", train.lr0},
                {"decay_rate", train.decay_rate},
                {"decay_steps", train.decay_steps},
                {"adam_beta1", train.adam.beta1},
                {"adam_beta2", train.adam.beta2},
                {"adam_eps", train.adam.eps},
                {"boundary_weight", train.boundary_weight},
                {"interior_half", train.interior_half},
                {"exp_clamp", train.exp_clamp},
                {"seed", train.seed},
                {"eval_every", train.eval_every}};
  j["output"] = {{"dir", out_dir}, {"checkpoint_every", checkpoint_every}};
  j["eval"] = {{"grid", eval_grid}};
  j["oracle"] = {{"nx", oracle_nx}};
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  cfg.problem_name = j.at("problem").at("name").get<std::string>();
  const auto& jp = j.at("problem");
  if (cfg.problem_name == "interface") {
    cfg.interface_params.sigma0 = jp.at("sigma0").get<double>();
    cfg.interface_params.sigma1 = jp.at("sigma1").get<double>();
    cfg.interface_params.source = jp.at("source").get<double>();
    cfg.interface_params.delta_v = jp.at("delta_v").get<double>();
    cfg.interface_params.epsilon = jp.at("epsilon").get<double>();
    cfg.interface_epsilon_set = jp.at("epsilon_set").get<bool>();
  } else if (cfg.problem_name == "taxis" || cfg.problem_name == "taxis_family") {
    cfg.taxis_params.chi = jp.at("chi").get<double>();
    cfg.taxis_params.diffusion = jp.at("diffusion").get<double>();
    cfg.taxis_params.r0 = jp.at("r0").get<double>();
    cfg.taxis_params.r = jp.at("r").get<double>();
    cfg.r_min = jp.at("r_min").get<double>();
    cfg.r_max = jp.at("r_max").get<double>();
    cfg.sigma_r = jp.at("sigma_r").get<double>();
  }
  const auto& jn = j.at("network");
  cfg.network.kind = jn.at("kind").get<std::string>() == "mlp" ? NetKind::Mlp : NetKind::Resnet;
  cfg.network.mlp_dims = jn.at("mlp_dims").get<std::vector<int>>();
  cfg.network.blocks = jn.at("blocks").get<int>();
  cfg.network.block_dims = jn.at("block_dims").get<std::vector<int>>();
  cfg.network.activation = {activation_from_name(jn.at("activation").get<std::string>()),
                            jn.at("activation_param").get<double>()};
  cfg.network.activation_in = {activation_from_name(jn.at("activation_in").get<std::string>()),
                               jn.at("activation_in_param").get<double>()};
  const auto& jt = j.at("train");
  cfg.train.dt = jt.at("dt").get<double>();
  cfg.train.n_walkers = jt.at("walkers").get<int>();
  cfg.train.m_samples = jt.at("target_samples").get<int>();
  cfg.train.s_boundary = jt.at("boundary_samples").get<int>();
  cfg.train.iterations = jt.at("iterations").get<long>();
  cfg.train.lr0 = jt.at("lr0").get<double>();
  cfg.train.decay_rate = jt.at("decay_rate").get<double>();
  cfg.train.decay_steps = jt.at("decay_steps").get<double>();
  cfg.train.adam.beta1 = jt.at("adam_beta1").get<double>();
  cfg.train.adam.beta2 = jt.at("adam_beta2").get<double>();
  cfg.train.adam.eps = jt.at("adam_eps").get<double>();
  cfg.train.boundary_weight = jt.at("boundary_weight").get<double>();
  cfg.train.interior_half = jt.at("interior_half").get<bool>();
  cfg.train.exp_clamp = jt.at("exp_clamp").get<double>();
  cfg.train.seed = jt.at("seed").get<std::uint64_t>();
  cfg.train.eval_every = jt.at("eval_every").get<long>();
  cfg.out_dir = j.at("output").at("dir").get<std::string>();
  cfg.checkpoint_every = j.at("output").at("checkpoint_every").get<long>();
  cfg.eval_grid = j.at("eval").at("grid").get<int>();
  cfg.oracle_nx = j.at("oracle").at("nx").get<int>();

  const InputEncoding enc = cfg.problem_name == "interface"     ? InputEncoding::CoordsOneHot
                            : cfg.problem_name == "taxis_family" ? InputEncoding::CoordsParam
                                                                 : InputEncoding::Coords;
  cfg.network.encoding = enc;
  return cfg;
}

ProblemSpec ExperimentConfig::build_problem() const {
  if (problem_name == "laplace_u1") return make_laplace_u1();
  if (problem_name == "laplace_u2") return make_laplace_u2();
  if (problem_name == "interface") return make_interface(interface_params);
  if (problem_name == "taxis") return make_taxis(taxis_params);
  if (problem_name == "taxis_family")
    return make_taxis_family(taxis_params, r_min, r_max, sigma_r);
  throw ConfigError("unknown problem name: " + problem_name);
}

}  // namespace mcpde
