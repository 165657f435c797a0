#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mcpde/activations.hpp"
#include "mcpde/params.hpp"
#include "mcpde/rng.hpp"
#include "mcpde/tape.hpp"

namespace mcpde {

enum class NetKind { Mlp, Resnet };

// How a spatial point is presented to the first layer.
enum class InputEncoding {
  Coords,        // (x1, x2)
  CoordsOneHot,  // (x1, x2, 1, 0) in the inner region, (x1, x2, 0, 1) outside
  CoordsParam,   // (x1, x2, r)
};

inline int encoded_dim(InputEncoding e) {
  switch (e) {
    case InputEncoding::Coords: return 2;
    case InputEncoding::CoordsOneHot: return 4;
    case InputEncoding::CoordsParam: return 3;
  }
  return 2;
}

Eigen::VectorXd encode_point(InputEncoding e, const Eigen::Vector2d& x, int category, double r);

// Column k encodes (points[k], categories[k], params[k]); the optional spans
// may be empty when the encoding does not use them.
Eigen::MatrixXd encode_points(InputEncoding e, const std::vector<Eigen::Vector2d>& points,
                              const std::vector<int>& categories,
                              const std::vector<double>& params);

struct NetworkSpec {
  NetKind kind = NetKind::Mlp;
  InputEncoding encoding = InputEncoding::Coords;

  // MLP: layer widths [L0 .. LD]; L0 must equal the encoded input dim and LD = 1.
  std::vector<int> mlp_dims;

  // Resnet variant: input embedding L_in -> L0, `blocks` identical residual
  // blocks of widths block_dims = [L0 .. LD] with L0 == LD, affine readout to 1.
  int blocks = 0;
  std::vector<int> block_dims;

  ActivationSpec activation = ActivationSpec::tanh();  // hidden / block layers
  ActivationSpec activation_in = ActivationSpec::tanh();  // resnet input embedding

  void validate() const;
  std::size_t param_count() const;  // closed-form, cross-checked against the layout
};

// An evaluatable approximator u(x; theta). Construction freezes the segment
// layout; parameter vectors, gradients and checkpoints all share it.
class Network {
 public:
  explicit Network(NetworkSpec spec);

  const NetworkSpec& spec() const { return spec_; }
  std::shared_ptr<const ParamLayout> layout() const { return layout_; }

  // Fan-in-scaled uniform weights, zero biases; deterministic in the seed.
  ParamVector init(std::uint64_t seed) const;

  // Plain forward pass over encoded inputs (rows = encoded dim, cols = batch).
  Eigen::RowVectorXd forward_batch(const ParamVector& theta, const Eigen::MatrixXd& inputs) const;
  double forward(const ParamVector& theta, const Eigen::VectorXd& input) const;

  // Taped forward pass; returns the 1 x batch output node.
  int record_forward(GradTape& tape, const Eigen::MatrixXd& inputs) const;

 private:
  struct LayerRef {
    int w = -1;
    int b = -1;
  };

  NetworkSpec spec_;
  std::shared_ptr<const ParamLayout> layout_;
  // mlp: one entry per affine map; resnet: [in][block 0 maps...][block M-1 maps][out]
  std::vector<LayerRef> layers_;
};

}  // namespace mcpde
