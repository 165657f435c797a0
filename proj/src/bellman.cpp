#include "mcpde/bellman.hpp"

#include <cmath>
#include <stdexcept>

#include "mcpde/parallel.hpp"

namespace mcpde {

double discount_factor(const Vec2& drift_val, const Vec2& db, double tau, double clamp_bound,
                       DiscountStats* stats) {
  double e = drift_val.dot(db) - 0.5 * drift_val.squaredNorm() * tau;
  if (e > clamp_bound || e < -clamp_bound) {
    e = std::clamp(e, -clamp_bound, clamp_bound);
    if (stats) ++stats->clamp_events;
  }
  return std::exp(e);
}

namespace {

// One Monte Carlo sample of u(B_dt) D - R from a fixed anchor. The drift and
// reward values are per-anchor constants (both evaluate at the step start).
double sample_one(const Vec2& anchor, int anchor_cat, double r, const Vec2& drift_val,
                  double reward_val, const PointEval& u_prev, const ProblemSpec& prob, double dt,
                  Rng& rng, double clamp_bound, DiscountStats* stats) {
  const Vec2 endpoint = gaussian_step(anchor, dt, rng);
  double uhat, tau;
  Vec2 db;
  int end_cat;
  if (auto exit = prob.domain.detect_exit(anchor, endpoint)) {
    tau = exit->fraction * dt;
    db = exit->point - anchor;
    uhat = prob.boundary_value(exit->point);
    end_cat = prob.domain.category(exit->point);
  } else {
    tau = dt;
    db = endpoint - anchor;
    end_cat = prob.domain.category(endpoint);
    uhat = u_prev(endpoint, end_cat, r);
  }
  if (prob.jump)
    uhat -= *prob.jump * ((anchor_cat == 0 ? 1.0 : 0.0) - (end_cat == 0 ? 1.0 : 0.0));
  const double d = discount_factor(drift_val, db, tau, clamp_bound, stats);
  return uhat * d - reward_increment(reward_val, tau);
}

}  // namespace

double sample_target(const Vec2& anchor, int anchor_cat, double r, const PointEval& u_prev,
                     const ProblemSpec& prob, double dt, int m, Rng& rng, double clamp_bound,
                     DiscountStats* stats) {
  if (m < 1) throw std::invalid_argument("sample_target: m must be at least 1");
  const double u0 = u_prev(anchor, anchor_cat, r);
  const Vec2 drift_val = prob.drift(anchor, u0, r);
  const double reward_val = prob.reward(anchor, u0, r);
  double acc = 0.0;
  for (int j = 0; j < m; ++j)
    acc += sample_one(anchor, anchor_cat, r, drift_val, reward_val, u_prev, prob, dt, rng,
                      clamp_bound, stats);
  return acc / m;
}

void compute_targets(const Network& net, const ParamVector& theta_prev, const ProblemSpec& prob,
                     WalkerEnsemble& walkers, double dt, int m, double clamp_bound,
                     std::vector<double>& targets_out, DiscountStats& stats) {
  if (m < 1) throw std::invalid_argument("compute_targets: m must be at least 1");
  const int n = walkers.size();
  targets_out.resize(static_cast<std::size_t>(n));

  const Eigen::MatrixXd enc_anchors =
      encode_points(prob.encoding, walkers.positions, walkers.categories, walkers.params);
  const Eigen::RowVectorXd u0 = net.forward_batch(theta_prev, enc_anchors);

  struct Sample {
    Vec2 db;
    double tau;
    double uhat;       // boundary value when interior_idx < 0
    long interior_idx; // slot in the endpoint batch, -1 for exits
    int end_cat;
  };
  std::vector<Sample> samples(static_cast<std::size_t>(n) * m);
  std::vector<Vec2> interior_pts;
  std::vector<int> interior_cats;
  std::vector<double> interior_rs;
  interior_pts.reserve(samples.size());
  interior_cats.reserve(samples.size());
  if (walkers.has_params()) interior_rs.reserve(samples.size());

  const double sdt = std::sqrt(dt);
  for (int i = 0; i < n; ++i) {
    Rng& rng = walkers.streams[static_cast<std::size_t>(i)];
    const Vec2 a = walkers.positions[static_cast<std::size_t>(i)];
    for (int j = 0; j < m; ++j) {
      auto [zx, zy] = rng.normal2();
      const Vec2 end{a.x() + sdt * zx, a.y() + sdt * zy};
      Sample& s = samples[static_cast<std::size_t>(i) * m + j];
      if (auto exit = prob.domain.detect_exit(a, end)) {
        s.tau = exit->fraction * dt;
        s.db = exit->point - a;
        s.uhat = prob.boundary_value(exit->point);
        s.interior_idx = -1;
        s.end_cat = prob.domain.category(exit->point);
      } else {
        s.tau = dt;
        s.db = end - a;
        s.uhat = 0.0;
        s.interior_idx = static_cast<long>(interior_pts.size());
        s.end_cat = prob.domain.category(end);
        interior_pts.push_back(end);
        interior_cats.push_back(s.end_cat);
        if (walkers.has_params())
          interior_rs.push_back(walkers.params[static_cast<std::size_t>(i)]);
      }
    }
  }

  Eigen::RowVectorXd u_end(static_cast<Eigen::Index>(interior_pts.size()));
  if (!interior_pts.empty()) {
    const Eigen::MatrixXd enc_end =
        encode_points(prob.encoding, interior_pts, interior_cats, interior_rs);
    parallel_ranges(static_cast<long>(interior_pts.size()), [&](long lo, long hi) {
      u_end.segment(lo, hi - lo) =
          net.forward_batch(theta_prev, enc_end.middleCols(lo, hi - lo));
    });
  }

  std::vector<DiscountStats> local(static_cast<std::size_t>(n));
  parallel_ranges(n, [&](long lo, long hi) {
    for (long i = lo; i < hi; ++i) {
      const Vec2 a = walkers.positions[static_cast<std::size_t>(i)];
      const int cat = walkers.categories[static_cast<std::size_t>(i)];
      const double r = walkers.has_params() ? walkers.params[static_cast<std::size_t>(i)]
                                            : prob.r_fixed;
      const double u0i = u0(static_cast<Eigen::Index>(i));
      const Vec2 drift_val = prob.drift(a, u0i, r);
      const double reward_val = prob.reward(a, u0i, r);
      double acc = 0.0;
      for (int j = 0; j < m; ++j) {
        const Sample& s = samples[static_cast<std::size_t>(i) * m + j];
        double v = s.interior_idx >= 0 ? u_end(static_cast<Eigen::Index>(s.interior_idx)) : s.uhat;
        if (prob.jump)
          v -= *prob.jump * ((cat == 0 ? 1.0 : 0.0) - (s.end_cat == 0 ? 1.0 : 0.0));
        const double d = discount_factor(drift_val, s.db, s.tau, clamp_bound,
                                         &local[static_cast<std::size_t>(i)]);
        acc += v * d - reward_increment(reward_val, s.tau);
      }
      targets_out[static_cast<std::size_t>(i)] = acc / m;
    }
  });
  for (const auto& l : local) stats.clamp_events += l.clamp_events;
}

ResidualEstimate ito_residual_estimate(const PointEval& u, const Vec2& x, const ProblemSpec& prob,
                                       double dt, long m_big, Rng& rng, double clamp_bound) {
  const int cat = prob.domain.category(x);
  const double u0 = u(x, cat, prob.r_fixed);
  const Vec2 drift_val = prob.drift(x, u0, prob.r_fixed);
  const double reward_val = prob.reward(x, u0, prob.r_fixed);
  double sum = 0.0, sumsq = 0.0;
  for (long j = 0; j < m_big; ++j) {
    const double v = sample_one(x, cat, prob.r_fixed, drift_val, reward_val, u, prob, dt, rng,
                                clamp_bound, nullptr);
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / static_cast<double>(m_big);
  const double var = std::max(0.0, sumsq / static_cast<double>(m_big) - mean * mean);
  ResidualEstimate est;
  est.residual = (mean - u0) / dt;
  est.std_error = std::sqrt(var / static_cast<double>(m_big)) / dt;
  return est;
}

}  // namespace mcpde
