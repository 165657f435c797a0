#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mcpde/activations.hpp"
#include "mcpde/params.hpp"

namespace mcpde {

// Reverse-mode tape over batched values. Every node value is a matrix whose
// rows are feature components and whose columns are batch members, so one
// affine node covers a whole mini-batch with a single GEMM.
//
// Gradients flow only into the bound parameter vector, never into constant
// inputs: there is deliberately no d(output)/d(input) surface.
//
// The tape borrows the bound parameters; they must stay unchanged between
// recording and the last backward() call. Rebuild the tape each iteration.
class GradTape {
 public:
  explicit GradTape(const ParamVector& theta) : theta_(&theta) {}

  // Value passes through; no adjoint reaches its producers.
  int stop_gradient(int a) { return constant(node(a).value); }

  int constant(Eigen::MatrixXd v);
  int param(int segment);
  int affine(int w_segment, int b_segment, int x);
  int activation(const ActivationSpec& act, int x);
  int add(int a, int b);
  int sub(int a, int b);
  int mul(int a, int b);  // elementwise
  int square(int a);
  int scale(int a, double c);
  int add_scalar(int a, double c);
  int sum(int a);  // 1x1 total over all entries

  const Eigen::MatrixXd& value(int id) const { return node(id).value; }
  double scalar(int id) const;
  std::size_t node_count() const { return nodes_.size(); }

  // Visits nodes in strict reverse recording order; adjoint buffers are local
  // to the call, so repeated backward passes return identical gradients.
  ParamVector backward(int loss_id) const;

  // Recompute every node value in recording order into fresh buffers and
  // return the requested node's value (forward replay check).
  Eigen::MatrixXd replay(int id) const;

 private:
  enum class Op { Constant, Param, Affine, Activation, Add, Sub, Mul, Square, Scale, AddScalar, Sum };

  struct Node {
    Op op;
    int a = -1;
    int b = -1;
    int w_seg = -1;
    int b_seg = -1;
    double c = 0.0;
    ActivationSpec act;
    Eigen::MatrixXd value;
  };

  const Node& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  int push(Node n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }
  Eigen::MatrixXd compute(const Node& n, const std::vector<Eigen::MatrixXd>& vals) const;

  const ParamVector* theta_;
  std::vector<Node> nodes_;
};

}  // namespace mcpde
