#include "mcpde/problems.hpp"

#include <cmath>
#include <numbers>

namespace mcpde {

namespace {
constexpr double kPi = std::numbers::pi;
}

double exact_u1(const Vec2& x) {
  return x.x() * x.x() - x.y() * x.y() - 0.25 * x.x() * x.y();
}

double exact_u2(const Vec2& x) {
  const double r = x.norm();
  if (r == 0.0) return 0.0;
  const double th = std::atan2(x.y(), x.x());
  return std::pow(r, 2.0 / 3.0) * std::sin(2.0 * th / 3.0);
}

double exact_interface_inner(double r, const InterfaceParams& p) {
  return r * r / (4.0 * p.sigma0);
}

double exact_interface_outer(double r, const InterfaceParams& p) {
  return r * r / (4.0 * p.sigma1) + (1.0 - 1.0 / (4.0 * p.sigma1) + 1.0 / (4.0 * p.sigma0));
}

std::pair<double, Vec2> sigma_eps_and_grad(const Vec2& x, double sigma0, double sigma1,
                                           double epsilon) {
  const double r = x.norm();
  const double s = 1.0 / (1.0 + std::exp(-(r - 1.0) / epsilon));
  const double value = (sigma1 - sigma0) * s + sigma0;
  if (r == 0.0) return {value, Vec2::Zero()};
  const double dr = (sigma1 - sigma0) * s * (1.0 - s) / epsilon;
  return {value, (dr / r) * x};
}

double taxis_stimulus(const Vec2& x) {
  return 0.5 * std::sin(0.5 * kPi * (x.x() + 1.0)) * std::sin(0.5 * kPi * (x.y() + 1.0));
}

Vec2 taxis_stimulus_grad(const Vec2& x) {
  const double a = 0.5 * kPi;
  return {0.5 * a * std::cos(a * (x.x() + 1.0)) * std::sin(a * (x.y() + 1.0)),
          0.5 * a * std::sin(a * (x.x() + 1.0)) * std::cos(a * (x.y() + 1.0))};
}

double taxis_stimulus_laplacian(const Vec2& x) {
  return -0.5 * kPi * kPi * taxis_stimulus(x);
}

std::pair<Vec2, double> taxis_drift_reward(const Vec2& x, double u, const TaxisParams& p) {
  const double inv2d = 1.0 / (2.0 * p.diffusion);
  const Vec2 f = -p.chi * inv2d * taxis_stimulus_grad(x);
  const double h = p.r * u * (1.0 - u) + p.r0;
  const double g = (p.chi * u * taxis_stimulus_laplacian(x) - h) * inv2d;
  return {f, g};
}

namespace {

ProblemSpec make_laplace(std::string name, double (*target)(const Vec2&)) {
  ProblemSpec prob;
  prob.name = std::move(name);
  prob.domain = Domain::sector(1.0, kPi / 6.0);
  prob.encoding = InputEncoding::Coords;
  prob.drift = [](const Vec2&, double, double) { return Vec2::Zero().eval(); };
  prob.reward = [](const Vec2&, double, double) { return 0.0; };
  prob.boundary_value = [target](const Vec2& x) { return target(x); };
  prob.exact = [target](const Vec2& x, int) { return target(x); };
  return prob;
}

}  // namespace

ProblemSpec make_laplace_u1() { return make_laplace("laplace_u1", &exact_u1); }
ProblemSpec make_laplace_u2() { return make_laplace("laplace_u2", &exact_u2); }

ProblemSpec make_interface(const InterfaceParams& p) {
  ProblemSpec prob;
  prob.name = "interface";
  prob.domain = Domain::disc_with_interface(1.0, 2.0);
  prob.encoding = InputEncoding::CoordsOneHot;
  prob.drift = [p](const Vec2& x, double, double) {
    auto [sig, grad] = sigma_eps_and_grad(x, p.sigma0, p.sigma1, p.epsilon);
    return (grad / (2.0 * sig)).eval();
  };
  prob.reward = [p](const Vec2& x, double, double) {
    auto [sig, grad] = sigma_eps_and_grad(x, p.sigma0, p.sigma1, p.epsilon);
    (void)grad;
    return p.source / (2.0 * sig);
  };
  const double h = 1.0 + 1.0 / (4.0 * p.sigma0) + 3.0 / (4.0 * p.sigma1);
  prob.boundary_value = [h](const Vec2&) { return h; };
  prob.jump = p.delta_v;
  prob.exact = [p](const Vec2& x, int category) {
    const double r = x.norm();
    if (r < 1.0 || (r == 1.0 && category == 0)) return exact_interface_inner(r, p);
    return exact_interface_outer(r, p);
  };
  return prob;
}

ProblemSpec make_taxis(const TaxisParams& p) {
  ProblemSpec prob;
  prob.name = "taxis";
  prob.domain = Domain::square(-1.0, 1.0);
  prob.encoding = InputEncoding::Coords;
  prob.drift = [p](const Vec2& x, double u, double) { return taxis_drift_reward(x, u, p).first; };
  prob.reward = [p](const Vec2& x, double u, double) { return taxis_drift_reward(x, u, p).second; };
  prob.boundary_value = [](const Vec2&) { return 0.0; };
  prob.reward_depends_on_u = true;
  prob.r_fixed = p.r;
  return prob;
}

ProblemSpec make_taxis_family(TaxisParams p, double r_min, double r_max, double sigma_r) {
  ProblemSpec prob;
  prob.name = "taxis_family";
  prob.domain = Domain::square(-1.0, 1.0);
  prob.encoding = InputEncoding::CoordsParam;
  prob.drift = [p](const Vec2& x, double u, double r) {
    TaxisParams q = p;
    q.r = r;
    return taxis_drift_reward(x, u, q).first;
  };
  prob.reward = [p](const Vec2& x, double u, double r) {
    TaxisParams q = p;
    q.r = r;
    return taxis_drift_reward(x, u, q).second;
  };
  prob.boundary_value = [](const Vec2&) { return 0.0; };
  prob.reward_depends_on_u = true;
  prob.has_param = true;
  prob.r_min = r_min;
  prob.r_max = r_max;
  prob.sigma_r = sigma_r;
  return prob;
}

}  // namespace mcpde
