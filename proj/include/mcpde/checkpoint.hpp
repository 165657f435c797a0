#pragma once

#include <string>

#include "mcpde/config.hpp"
#include "mcpde/train.hpp"

namespace mcpde {

// Binary checkpoint: 8-byte magic, version, a JSON header describing the
// experiment, then raw little-endian payload sections. Parameter payloads
// round-trip bit-exactly.
struct Checkpoint {
  ExperimentConfig config;
  long step = 0;
  ParamVector theta;

  bool has_state = false;  // full training state for resume
  ParamVector adam_m, adam_v;
  std::vector<Vec2> walker_positions;
  std::vector<int> walker_categories;
  std::vector<Rng> walker_streams;
  std::vector<double> walker_params;
  std::vector<Rng> param_streams;
  Rng boundary_rng;
  long long clamp_events = 0;
  double best_metric = std::numeric_limits<double>::infinity();
  ParamVector best_theta;  // empty when no metric was tracked

  static Checkpoint from_state(const ExperimentConfig& cfg, const TrainState& st);
  static Checkpoint model_only(const ExperimentConfig& cfg, long step, const ParamVector& theta);

  // Rebuilds a TrainState against the given network (layout must match).
  TrainState restore_state(const Network& net) const;
};

void save_checkpoint(const Checkpoint& ck, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace mcpde
