#include "mcpde/tape.hpp"

#include <stdexcept>

namespace mcpde {

namespace {

void require_same_shape(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument(std::string("tape: shape mismatch in ") + what);
}

Eigen::MatrixXd apply_act(const ActivationSpec& act, const Eigen::MatrixXd& x) {
  return x.unaryExpr([&act](double v) { return act_eval(act, v); });
}

Eigen::MatrixXd apply_act_deriv(const ActivationSpec& act, const Eigen::MatrixXd& x) {
  return x.unaryExpr([&act](double v) { return act_deriv(act, v); });
}

}  // namespace

int GradTape::constant(Eigen::MatrixXd v) {
  Node n;
  n.op = Op::Constant;
  n.value = std::move(v);
  return push(std::move(n));
}

int GradTape::param(int segment) {
  Node n;
  n.op = Op::Param;
  n.w_seg = segment;
  n.value = theta_->matrix(segment);
  return push(std::move(n));
}

int GradTape::affine(int w_segment, int b_segment, int x) {
  auto w = theta_->matrix(w_segment);
  auto b = theta_->flat(b_segment);
  const Eigen::MatrixXd& xv = node(x).value;
  if (w.cols() != xv.rows() || b.size() != w.rows())
    throw std::invalid_argument("tape: affine dimension mismatch");
  Node n;
  n.op = Op::Affine;
  n.a = x;
  n.w_seg = w_segment;
  n.b_seg = b_segment;
  n.value = (w * xv).colwise() + b;
  return push(std::move(n));
}

int GradTape::activation(const ActivationSpec& act, int x) {
  Node n;
  n.op = Op::Activation;
  n.a = x;
  n.act = act;
  n.value = apply_act(act, node(x).value);
  return push(std::move(n));
}

int GradTape::add(int a, int b) {
  require_same_shape(node(a).value, node(b).value, "add");
  Node n;
  n.op = Op::Add;
  n.a = a;
  n.b = b;
  n.value = node(a).value + node(b).value;
  return push(std::move(n));
}

int GradTape::sub(int a, int b) {
  require_same_shape(node(a).value, node(b).value, "sub");
  Node n;
  n.op = Op::Sub;
  n.a = a;
  n.b = b;
  n.value = node(a).value - node(b).value;
  return push(std::move(n));
}

int GradTape::mul(int a, int b) {
  require_same_shape(node(a).value, node(b).value, "mul");
  Node n;
  n.op = Op::Mul;
  n.a = a;
  n.b = b;
  n.value = node(a).value.cwiseProduct(node(b).value);
  return push(std::move(n));
}

int GradTape::square(int a) {
  Node n;
  n.op = Op::Square;
  n.a = a;
  n.value = node(a).value.array().square();
  return push(std::move(n));
}

int GradTape::scale(int a, double c) {
  Node n;
  n.op = Op::Scale;
  n.a = a;
  n.c = c;
  n.value = c * node(a).value;
  return push(std::move(n));
}

int GradTape::add_scalar(int a, double c) {
  Node n;
  n.op = Op::AddScalar;
  n.a = a;
  n.c = c;
  n.value = node(a).value.array() + c;
  return push(std::move(n));
}

int GradTape::sum(int a) {
  Node n;
  n.op = Op::Sum;
  n.a = a;
  n.value = Eigen::MatrixXd::Constant(1, 1, node(a).value.sum());
  return push(std::move(n));
}

double GradTape::scalar(int id) const {
  const Eigen::MatrixXd& v = node(id).value;
  if (v.rows() != 1 || v.cols() != 1) throw std::invalid_argument("tape: node is not scalar");
  return v(0, 0);
}

ParamVector GradTape::backward(int loss_id) const {
  const Eigen::MatrixXd& lv = node(loss_id).value;
  if (lv.rows() != 1 || lv.cols() != 1)
    throw std::invalid_argument("tape: backward requires a scalar loss node");

  ParamVector grad(theta_->layout_ptr());
  std::vector<Eigen::MatrixXd> adj(nodes_.size());
  auto touch = [&](int id) -> Eigen::MatrixXd& {
    Eigen::MatrixXd& m = adj[static_cast<std::size_t>(id)];
    if (m.size() == 0) m = Eigen::MatrixXd::Zero(node(id).value.rows(), node(id).value.cols());
    return m;
  };
  touch(loss_id)(0, 0) = 1.0;

  for (int id = loss_id; id >= 0; --id) {
    const Eigen::MatrixXd& a = adj[static_cast<std::size_t>(id)];
    if (a.size() == 0) continue;  // no adjoint ever reached this node
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    switch (n.op) {
      case Op::Constant:
        break;
      case Op::Param:
        grad.matrix(n.w_seg) += a;
        break;
      case Op::Affine: {
        const Eigen::MatrixXd& xv = node(n.a).value;
        grad.matrix(n.w_seg).noalias() += a * xv.transpose();
        grad.flat(n.b_seg) += a.rowwise().sum();
        touch(n.a).noalias() += theta_->matrix(n.w_seg).transpose() * a;
        break;
      }
      case Op::Activation:
        touch(n.a) += apply_act_deriv(n.act, node(n.a).value).cwiseProduct(a);
        break;
      case Op::Add:
        touch(n.a) += a;
        touch(n.b) += a;
        break;
      case Op::Sub:
        touch(n.a) += a;
        touch(n.b) -= a;
        break;
      case Op::Mul:
        touch(n.a) += a.cwiseProduct(node(n.b).value);
        touch(n.b) += a.cwiseProduct(node(n.a).value);
        break;
      case Op::Square:
        touch(n.a) += 2.0 * node(n.a).value.cwiseProduct(a);
        break;
      case Op::Scale:
        touch(n.a) += n.c * a;
        break;
      case Op::AddScalar:
        touch(n.a) += a;
        break;
      case Op::Sum:
        touch(n.a).array() += a(0, 0);
        break;
    }
  }
  return grad;
}

Eigen::MatrixXd GradTape::compute(const Node& n, const std::vector<Eigen::MatrixXd>& vals) const {
  auto va = [&](int id) -> const Eigen::MatrixXd& { return vals[static_cast<std::size_t>(id)]; };
  switch (n.op) {
    case Op::Constant: return n.value;
    case Op::Param: return theta_->matrix(n.w_seg);
    case Op::Affine: return (theta_->matrix(n.w_seg) * va(n.a)).colwise() + theta_->flat(n.b_seg);
    case Op::Activation: return apply_act(n.act, va(n.a));
    case Op::Add: return va(n.a) + va(n.b);
    case Op::Sub: return va(n.a) - va(n.b);
    case Op::Mul: return va(n.a).cwiseProduct(va(n.b));
    case Op::Square: return va(n.a).array().square();
    case Op::Scale: return n.c * va(n.a);
    case Op::AddScalar: return va(n.a).array() + n.c;
    case Op::Sum: return Eigen::MatrixXd::Constant(1, 1, va(n.a).sum());
  }
  return {};
}

Eigen::MatrixXd GradTape::replay(int id) const {
  std::vector<Eigen::MatrixXd> vals(nodes_.size());
  for (std::size_t k = 0; k <= static_cast<std::size_t>(id); ++k)
    vals[k] = compute(nodes_[k], vals);
  return vals[static_cast<std::size_t>(id)];
}

}  // namespace mcpde
