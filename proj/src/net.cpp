#include "mcpde/net.hpp"

#include <cmath>
#include <stdexcept>

namespace mcpde {

Eigen::VectorXd encode_point(InputEncoding e, const Eigen::Vector2d& x, int category, double r) {
  Eigen::VectorXd v(encoded_dim(e));
  v(0) = x.x();
  v(1) = x.y();
  switch (e) {
    case InputEncoding::Coords: break;
    case InputEncoding::CoordsOneHot:
      v(2) = category == 0 ? 1.0 : 0.0;
      v(3) = category == 0 ? 0.0 : 1.0;
      break;
    case InputEncoding::CoordsParam:
      v(2) = r;
      break;
  }
  return v;
}

Eigen::MatrixXd encode_points(InputEncoding e, const std::vector<Eigen::Vector2d>& points,
                              const std::vector<int>& categories,
                              const std::vector<double>& params) {
  const Eigen::Index n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd m(encoded_dim(e), n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto& p = points[static_cast<std::size_t>(k)];
    m(0, k) = p.x();
    m(1, k) = p.y();
    switch (e) {
      case InputEncoding::Coords: break;
      case InputEncoding::CoordsOneHot: {
        int cat = categories.at(static_cast<std::size_t>(k));
        m(2, k) = cat == 0 ? 1.0 : 0.0;
        m(3, k) = cat == 0 ? 0.0 : 1.0;
        break;
      }
      case InputEncoding::CoordsParam:
        m(2, k) = params.at(static_cast<std::size_t>(k));
        break;
    }
  }
  return m;
}

void NetworkSpec::validate() const {
  const int in_dim = encoded_dim(encoding);
  if (kind == NetKind::Mlp) {
    if (mlp_dims.size() < 2) throw std::invalid_argument("mlp needs at least [L0, L1]");
    if (mlp_dims.front() != in_dim)
      throw std::invalid_argument("mlp input width must match the input encoding");
    if (mlp_dims.back() != 1) throw std::invalid_argument("scalar output required");
    for (int d : mlp_dims)
      if (d < 1) throw std::invalid_argument("mlp widths must be positive");
  } else {
    if (blocks < 1) throw std::invalid_argument("resnet needs at least one block");
    if (block_dims.size() < 2) throw std::invalid_argument("resnet block needs [L0, L1]");
    if (block_dims.front() != block_dims.back())
      throw std::invalid_argument("resnet block must have L0 == LD");
    for (int d : block_dims)
      if (d < 1) throw std::invalid_argument("block widths must be positive");
    (void)in_dim;
  }
}

std::size_t NetworkSpec::param_count() const {
  auto affine = [](int out, int in) {
    return static_cast<std::size_t>(out) * in + static_cast<std::size_t>(out);
  };
  std::size_t total = 0;
  if (kind == NetKind::Mlp) {
    for (std::size_t i = 0; i + 1 < mlp_dims.size(); ++i)
      total += affine(mlp_dims[i + 1], mlp_dims[i]);
  } else {
    total += affine(block_dims.front(), encoded_dim(encoding));
    std::size_t per_block = 0;
    for (std::size_t j = 0; j + 1 < block_dims.size(); ++j)
      per_block += affine(block_dims[j + 1], block_dims[j]);
    total += static_cast<std::size_t>(blocks) * per_block;
    total += affine(1, block_dims.back());
  }
  return total;
}

Network::Network(NetworkSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  auto layout = std::make_shared<ParamLayout>();
  auto add_affine = [&](const std::string& tag, int out, int in) {
    LayerRef ref;
    ref.w = layout->add("W_" + tag, out, in);
    ref.b = layout->add("b_" + tag, out, 1);
    layers_.push_back(ref);
  };
  if (spec_.kind == NetKind::Mlp) {
    for (std::size_t i = 0; i + 1 < spec_.mlp_dims.size(); ++i)
      add_affine(std::to_string(i), spec_.mlp_dims[i + 1], spec_.mlp_dims[i]);
  } else {
    add_affine("in", spec_.block_dims.front(), encoded_dim(spec_.encoding));
    for (int m = 0; m < spec_.blocks; ++m)
      for (std::size_t j = 0; j + 1 < spec_.block_dims.size(); ++j)
        add_affine(std::to_string(m) + "_" + std::to_string(j), spec_.block_dims[j + 1],
                   spec_.block_dims[j]);
    add_affine("out", 1, spec_.block_dims.back());
  }
  layout_ = std::move(layout);
}

ParamVector Network::init(std::uint64_t seed) const {
  ParamVector theta(layout_);
  Rng rng = Rng::stream(seed, rng_stream::misc(0));
  for (int s = 0; s < layout_->count(); ++s) {
    const auto& seg = layout_->segment(s);
    if (seg.cols == 1) continue;  // biases stay zero
    const double bound = std::sqrt(1.0 / seg.cols);  // cols == fan-in
    auto w = theta.flat(s);
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = rng.uniform(-bound, bound);
  }
  return theta;
}

Eigen::RowVectorXd Network::forward_batch(const ParamVector& theta,
                                          const Eigen::MatrixXd& inputs) const {
  if (inputs.rows() != encoded_dim(spec_.encoding))
    throw std::invalid_argument("forward: input rows do not match the encoding");
  auto affine = [&](const LayerRef& l, const Eigen::MatrixXd& x) -> Eigen::MatrixXd {
    return (theta.matrix(l.w) * x).colwise() + theta.flat(l.b);
  };
  auto act = [&](const ActivationSpec& a, Eigen::MatrixXd m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = act_eval(a, m.data()[i]);
    return m;
  };
  if (spec_.kind == NetKind::Mlp) {
    Eigen::MatrixXd h = inputs;
    const std::size_t last = layers_.size() - 1;
    for (std::size_t i = 0; i < last; ++i) h = act(spec_.activation, affine(layers_[i], h));
    return affine(layers_[last], h).row(0);
  }
  const std::size_t maps_per_block = spec_.block_dims.size() - 1;
  Eigen::MatrixXd r = act(spec_.activation_in, affine(layers_[0], inputs));
  std::size_t k = 1;
  for (int m = 0; m < spec_.blocks; ++m) {
    Eigen::MatrixXd s = r;
    for (std::size_t j = 0; j < maps_per_block; ++j, ++k)
      s = act(spec_.activation, affine(layers_[k], s));
    r += s;
  }
  return affine(layers_[k], r).row(0);
}

double Network::forward(const ParamVector& theta, const Eigen::VectorXd& input) const {
  return forward_batch(theta, input)(0);
}

int Network::record_forward(GradTape& tape, const Eigen::MatrixXd& inputs) const {
  if (inputs.rows() != encoded_dim(spec_.encoding))
    throw std::invalid_argument("forward: input rows do not match the encoding");
  int x = tape.constant(inputs);
  if (spec_.kind == NetKind::Mlp) {
    const std::size_t last = layers_.size() - 1;
    for (std::size_t i = 0; i < last; ++i)
      x = tape.activation(spec_.activation, tape.affine(layers_[i].w, layers_[i].b, x));
    return tape.affine(layers_[last].w, layers_[last].b, x);
  }
  const std::size_t maps_per_block = spec_.block_dims.size() - 1;
  int r = tape.activation(spec_.activation_in, tape.affine(layers_[0].w, layers_[0].b, x));
  std::size_t k = 1;
  for (int m = 0; m < spec_.blocks; ++m) {
    int s = r;
    for (std::size_t j = 0; j < maps_per_block; ++j, ++k)
      s = tape.activation(spec_.activation, tape.affine(layers_[k].w, layers_[k].b, s));
    r = tape.add(r, s);
  }
  return tape.affine(layers_[k].w, layers_[k].b, r);
}

}  // namespace mcpde
