#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace mcpde {

enum class Activation { LeakyRelu, Elu, Tanh, Swish };

// `param` is the leak slope for LeakyRelu, alpha for Elu, beta for Swish.
struct ActivationSpec {
  Activation kind = Activation::Tanh;
  double param = 1.0;

  static ActivationSpec leaky_relu(double alpha = 0.1) { return {Activation::LeakyRelu, alpha}; }
  static ActivationSpec elu(double alpha = 1.0) { return {Activation::Elu, alpha}; }
  static ActivationSpec tanh() { return {Activation::Tanh, 1.0}; }
  static ActivationSpec swish(double beta = 1.0) { return {Activation::Swish, beta}; }
};

inline double act_eval(const ActivationSpec& a, double x) {
  switch (a.kind) {
    case Activation::LeakyRelu: return x > 0.0 ? x : a.param * x;
    case Activation::Elu: return x > 0.0 ? x : a.param * std::expm1(x);
    case Activation::Tanh: return std::tanh(x);
    case Activation::Swish: return x / (1.0 + std::exp(-a.param * x));
  }
  return x;
}

inline double act_deriv(const ActivationSpec& a, double x) {
  switch (a.kind) {
    case Activation::LeakyRelu: return x > 0.0 ? 1.0 : a.param;
    case Activation::Elu: return x > 0.0 ? 1.0 : a.param * std::exp(x);
    case Activation::Tanh: {
      double t = std::tanh(x);
      return 1.0 - t * t;
    }
    case Activation::Swish: {
      double s = 1.0 / (1.0 + std::exp(-a.param * x));
      return s * (1.0 + a.param * x * (1.0 - s));
    }
  }
  return 1.0;
}

inline std::string activation_name(Activation k) {
  switch (k) {
    case Activation::LeakyRelu: return "lrelu";
    case Activation::Elu: return "elu";
    case Activation::Tanh: return "tanh";
    case Activation::Swish: return "swish";
  }
  return "?";
}

inline Activation activation_from_name(const std::string& s) {
  if (s == "lrelu") return Activation::LeakyRelu;
  if (s == "elu") return Activation::Elu;
  if (s == "tanh") return Activation::Tanh;
  if (s == "swish") return Activation::Swish;
  throw std::invalid_argument("unknown activation: " + s);
}

}  // namespace mcpde
