#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcpde/bellman.hpp"
#include "mcpde/net.hpp"
#include "mcpde/problem.hpp"
#include "mcpde/walkers.hpp"

namespace mcpde {

struct AdamParams {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct TrainConfig {
  double dt = 5e-4;
  int n_walkers = 1500;
  int m_samples = 200;
  int s_boundary = 300;
  long iterations = 100000;

  double lr0 = 1e-3;
  double decay_rate = 0.5;
  double decay_steps = 2e4;
  AdamParams adam;

  double boundary_weight = 1.0;
  bool interior_half = true;  // 1/2 factor inside the interior mean
  double exp_clamp = 30.0;

  std::uint64_t seed = 0;
  long eval_every = 500;

  double lr(long step) const { return lr0 * std::pow(decay_rate, static_cast<double>(step) / decay_steps); }
};

struct TrainState {
  ParamVector theta, adam_m, adam_v;
  long step = 0;
  WalkerEnsemble walkers;
  Rng boundary_rng;
  DiscountStats stats;

  double best_metric = std::numeric_limits<double>::infinity();
  ParamVector best_theta;  // cumulative-best snapshot when a metric is tracked
};

struct StepRecord {
  long iter = 0;  // 1-based, the step just taken
  double interior_loss = 0.0;
  double boundary_loss = 0.0;
  long long clamp_events = 0;           // cumulative
  std::optional<double> metric;         // relative L2 against the reference, when evaluated
};

// Raised when a step produces a non-finite loss; carries run diagnostics.
struct TrainDivergence : std::runtime_error {
  explicit TrainDivergence(const std::string& what) : std::runtime_error(what) {}
};

// Sum of squared residuals (u(inputs) - targets)^2 as a taped scalar node.
int record_sq_residual_sum(GradTape& tape, const Network& net, const Eigen::MatrixXd& inputs,
                           const Eigen::RowVectorXd& targets);

// Interior loss: (c / N) sum_i (u(anchor_i) - y_i)^2 with c = 1/2 or 1.
int record_interior_loss(GradTape& tape, const Network& net, const Eigen::MatrixXd& anchors,
                         const Eigen::RowVectorXd& targets, bool half_factor);

// Boundary loss: weight * sum_k (u(x_k) - h(x_k))^2 (an unnormalized sum).
int record_boundary_loss(GradTape& tape, const Network& net, const Eigen::MatrixXd& points,
                         const Eigen::RowVectorXd& h_values, double weight);

void adam_update(ParamVector& theta, const ParamVector& grad, ParamVector& m, ParamVector& v,
                 long step /* 1-based */, double lr, const AdamParams& params);

TrainState init_train_state(const Network& net, const ProblemSpec& prob, const TrainConfig& cfg);

// One full iteration: targets from the frozen current parameters, fresh
// boundary batch, loss tape, ADAM update, then advance the walkers (and the
// parameter walkers for family problems).
StepRecord train_step(TrainState& st, const Network& net, const ProblemSpec& prob,
                      const TrainConfig& cfg);

using MetricFn = std::function<double(const ParamVector&)>;
using StepCallback = std::function<void(const StepRecord&)>;

// Runs cfg.iterations steps from the given state. `metric` (when provided) is
// evaluated every cfg.eval_every steps and at the end; the best parameters by
// metric are kept in the state.
void run_training(TrainState& st, const Network& net, const ProblemSpec& prob,
                  const TrainConfig& cfg, const MetricFn& metric = nullptr,
                  const StepCallback& on_step = nullptr);

// Supervised fit of a known solution over fresh uniform batches: mean squared
// error, same optimizer stack. Returns the cumulative-best parameters.
ParamVector train_direct(const Network& net, const ProblemSpec& prob, const TrainConfig& cfg,
                         const MetricFn& metric = nullptr, const StepCallback& on_step = nullptr);

}  // namespace mcpde
