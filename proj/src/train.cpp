#include "mcpde/train.hpp"

#include <cmath>
#include <sstream>

namespace mcpde {

int record_sq_residual_sum(GradTape& tape, const Network& net, const Eigen::MatrixXd& inputs,
                           const Eigen::RowVectorXd& targets) {
  const int u = net.record_forward(tape, inputs);
  const int y = tape.constant(targets);
  return tape.sum(tape.square(tape.sub(u, y)));
}

int record_interior_loss(GradTape& tape, const Network& net, const Eigen::MatrixXd& anchors,
                         const Eigen::RowVectorXd& targets, bool half_factor) {
  const double c = half_factor ? 0.5 : 1.0;
  const int s = record_sq_residual_sum(tape, net, anchors, targets);
  return tape.scale(s, c / static_cast<double>(anchors.cols()));
}

int record_boundary_loss(GradTape& tape, const Network& net, const Eigen::MatrixXd& points,
                         const Eigen::RowVectorXd& h_values, double weight) {
  return tape.scale(record_sq_residual_sum(tape, net, points, h_values), weight);
}

void adam_update(ParamVector& theta, const ParamVector& grad, ParamVector& m, ParamVector& v,
                 long step, double lr, const AdamParams& p) {
  const double bc1 = 1.0 - std::pow(p.beta1, static_cast<double>(step));
  const double bc2 = 1.0 - std::pow(p.beta2, static_cast<double>(step));
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double g = grad[i];
    m[i] = p.beta1 * m[i] + (1.0 - p.beta1) * g;
    v[i] = p.beta2 * v[i] + (1.0 - p.beta2) * g * g;
    theta[i] -= lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + p.eps);
  }
}

TrainState init_train_state(const Network& net, const ProblemSpec& prob, const TrainConfig& cfg) {
  TrainState st;
  st.theta = net.init(cfg.seed);
  st.adam_m = ParamVector(net.layout());
  st.adam_v = ParamVector(net.layout());
  st.walkers = prob.has_param
                   ? WalkerEnsemble::init_with_params(prob.domain, cfg.n_walkers, cfg.seed,
                                                      prob.r_min, prob.r_max)
                   : WalkerEnsemble::init(prob.domain, cfg.n_walkers, cfg.seed);
  st.boundary_rng = Rng::stream(cfg.seed, rng_stream::boundary());
  return st;
}

namespace {

void draw_boundary_batch(const ProblemSpec& prob, int s, Rng& rng, std::vector<Vec2>& pts,
                         std::vector<int>& cats, std::vector<double>& rs) {
  pts.resize(static_cast<std::size_t>(s));
  cats.resize(static_cast<std::size_t>(s));
  rs.clear();
  if (prob.has_param) rs.resize(static_cast<std::size_t>(s));
  for (int k = 0; k < s; ++k) {
    pts[static_cast<std::size_t>(k)] = prob.domain.sample_boundary(rng);
    cats[static_cast<std::size_t>(k)] = prob.domain.category(pts[static_cast<std::size_t>(k)]);
    if (prob.has_param) rs[static_cast<std::size_t>(k)] = rng.uniform(prob.r_min, prob.r_max);
  }
}

}  // namespace

StepRecord train_step(TrainState& st, const Network& net, const ProblemSpec& prob,
                      const TrainConfig& cfg) {
  // Targets from the frozen current parameters (theta_{n-1}).
  std::vector<double> targets;
  compute_targets(net, st.theta, prob, st.walkers, cfg.dt, cfg.m_samples, cfg.exp_clamp, targets,
                  st.stats);

  std::vector<Vec2> bpts;
  std::vector<int> bcats;
  std::vector<double> brs;
  draw_boundary_batch(prob, cfg.s_boundary, st.boundary_rng, bpts, bcats, brs);
  Eigen::RowVectorXd h_vals(cfg.s_boundary);
  for (int k = 0; k < cfg.s_boundary; ++k)
    h_vals(k) = prob.boundary_value(bpts[static_cast<std::size_t>(k)]);

  GradTape tape(st.theta);
  const Eigen::MatrixXd enc_anchors =
      encode_points(prob.encoding, st.walkers.positions, st.walkers.categories, st.walkers.params);
  const Eigen::RowVectorXd y =
      Eigen::Map<const Eigen::RowVectorXd>(targets.data(), static_cast<Eigen::Index>(targets.size()));
  const int li = record_interior_loss(tape, net, enc_anchors, y, cfg.interior_half);
  const Eigen::MatrixXd enc_b = encode_points(prob.encoding, bpts, bcats, brs);
  const int lb = record_boundary_loss(tape, net, enc_b, h_vals, cfg.boundary_weight);
  const int total = tape.add(li, lb);

  StepRecord rec;
  rec.iter = st.step + 1;
  rec.interior_loss = tape.scalar(li);
  rec.boundary_loss = tape.scalar(lb);
  if (!std::isfinite(rec.interior_loss + rec.boundary_loss)) {
    std::ostringstream msg;
    msg << "non-finite loss at iteration " << rec.iter << " (interior=" << rec.interior_loss
        << ", boundary=" << rec.boundary_loss << ", clamp events=" << st.stats.clamp_events
        << ", walkers=" << st.walkers.size() << ")";
    throw TrainDivergence(msg.str());
  }

  const ParamVector grad = tape.backward(total);
  adam_update(st.theta, grad, st.adam_m, st.adam_v, st.step + 1, cfg.lr(st.step), cfg.adam);
  st.step += 1;

  advance_ensemble(st.walkers, cfg.dt, prob.domain);
  if (prob.has_param)
    advance_param_walkers(st.walkers.params, st.walkers.param_streams, prob.sigma_r, cfg.dt,
                          prob.r_min, prob.r_max);

  rec.clamp_events = st.stats.clamp_events;
  return rec;
}

void run_training(TrainState& st, const Network& net, const ProblemSpec& prob,
                  const TrainConfig& cfg, const MetricFn& metric, const StepCallback& on_step) {
  const long last = st.step + cfg.iterations;
  while (st.step < last) {
    StepRecord rec = train_step(st, net, prob, cfg);
    if (metric && (st.step % cfg.eval_every == 0 || st.step == last)) {
      const double m = metric(st.theta);
      rec.metric = m;
      if (m < st.best_metric) {
        st.best_metric = m;
        st.best_theta = st.theta;
      }
    }
    if (on_step) on_step(rec);
  }
}

ParamVector train_direct(const Network& net, const ProblemSpec& prob, const TrainConfig& cfg,
                         const MetricFn& metric, const StepCallback& on_step) {
  if (!prob.has_exact()) throw std::invalid_argument("train_direct needs a known solution");
  ParamVector theta = net.init(cfg.seed);
  ParamVector m(net.layout()), v(net.layout());
  Rng rng = Rng::stream(cfg.seed, rng_stream::direct_sampler());

  double best = std::numeric_limits<double>::infinity();
  ParamVector best_theta = theta;

  std::vector<Vec2> pts(static_cast<std::size_t>(cfg.n_walkers));
  std::vector<int> cats(static_cast<std::size_t>(cfg.n_walkers));
  std::vector<double> rs;
  for (long n = 1; n <= cfg.iterations; ++n) {
    for (int i = 0; i < cfg.n_walkers; ++i) {
      pts[static_cast<std::size_t>(i)] = prob.domain.sample_interior(rng);
      cats[static_cast<std::size_t>(i)] = prob.domain.category(pts[static_cast<std::size_t>(i)]);
    }
    Eigen::RowVectorXd y(cfg.n_walkers);
    for (int i = 0; i < cfg.n_walkers; ++i)
      y(i) = prob.exact(pts[static_cast<std::size_t>(i)], cats[static_cast<std::size_t>(i)]);

    GradTape tape(theta);
    const Eigen::MatrixXd enc = encode_points(prob.encoding, pts, cats, rs);
    const int s = record_sq_residual_sum(tape, net, enc, y);
    const int loss = tape.scale(s, 1.0 / cfg.n_walkers);
    const double lval = tape.scalar(loss);
    if (!std::isfinite(lval))
      throw TrainDivergence("non-finite direct-fit loss at iteration " + std::to_string(n));

    const ParamVector grad = tape.backward(loss);
    adam_update(theta, grad, m, v, n, cfg.lr(n - 1), cfg.adam);

    StepRecord rec;
    rec.iter = n;
    rec.interior_loss = lval;
    if (metric && (n % cfg.eval_every == 0 || n == cfg.iterations)) {
      const double e = metric(theta);
      rec.metric = e;
      if (e < best) {
        best = e;
        best_theta = theta;
      }
    }
    if (on_step) on_step(rec);
  }
  return metric ? best_theta : theta;
}

}  // namespace mcpde
