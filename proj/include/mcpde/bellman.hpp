#pragma once

#include <functional>
#include <vector>

#include "mcpde/net.hpp"
#include "mcpde/problem.hpp"
#include "mcpde/walkers.hpp"

namespace mcpde {

struct DiscountStats {
  long long clamp_events = 0;
};

// One-step Girsanov discount exp(F.dB - |F|^2 tau / 2) with the exponent
// clamped to +-clamp_bound against rare large-drift steps.
double discount_factor(const Vec2& drift_val, const Vec2& db, double tau, double clamp_bound,
                       DiscountStats* stats = nullptr);

// Left-endpoint reward increment G * tau.
inline double reward_increment(double reward_val, double tau) { return reward_val * tau; }

// Solution values observed by the target estimator: previous-iterate network,
// a frozen oracle, a closed form under test, ...
using PointEval = std::function<double(const Vec2& x, int category, double r)>;

// Monte Carlo estimate of E[u(B_dt) D - R | B_0 = anchor] over m Gaussian
// steps: exits substitute the boundary value at the interpolated exit point
// and truncate the discount and reward to the exit fraction; an interface
// jump is removed from the observed endpoint value before discounting.
double sample_target(const Vec2& anchor, int anchor_cat, double r, const PointEval& u_prev,
                     const ProblemSpec& prob, double dt, int m, Rng& rng, double clamp_bound,
                     DiscountStats* stats = nullptr);

// sample_target over every walker with the network as u_prev; endpoint
// evaluations are batched. Consumes each walker's stream exactly like the
// scalar path and writes targets in walker order.
void compute_targets(const Network& net, const ParamVector& theta_prev, const ProblemSpec& prob,
                     WalkerEnsemble& walkers, double dt, int m, double clamp_bound,
                     std::vector<double>& targets_out, DiscountStats& stats);

struct ResidualEstimate {
  double residual = 0.0;
  double std_error = 0.0;
};

// Diagnostic estimate of Q(u)(x) = (E[target] - u(x)) / dt, which tends to
// (1/2) lap u + F.grad u - G up to O(sqrt(dt)) bias as dt -> 0.
ResidualEstimate ito_residual_estimate(const PointEval& u, const Vec2& x, const ProblemSpec& prob,
                                       double dt, long m_big, Rng& rng,
                                       double clamp_bound = 30.0);

}  // namespace mcpde
