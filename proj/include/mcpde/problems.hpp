#pragma once

#include <utility>

#include "mcpde/problem.hpp"

namespace mcpde {

// Harmonic targets on the circular sector r <= 1, 0 <= theta <= pi/6.
double exact_u1(const Vec2& x);  // x1^2 - x2^2 - x1 x2 / 4
double exact_u2(const Vec2& x);  // r^(2/3) sin(2 theta / 3), singular derivatives at 0

struct InterfaceParams {
  double sigma0 = 0.2;
  double sigma1 = 0.7;
  double source = 1.0;   // g
  double delta_v = 1.0;  // prescribed jump across the interface
  double epsilon = 1e-2; // conductivity regularization width
};

// Piecewise exact solution of the interface problem as a function of radius;
// the two branches meet the jump and flux-continuity conditions at r = 1.
double exact_interface_inner(double r, const InterfaceParams& p);  // r < 1 branch
double exact_interface_outer(double r, const InterfaceParams& p);  // 1 < r < 2 branch

// Sigmoid-regularized conductivity and its (radial) gradient; the gradient is
// zero at the origin by symmetry.
std::pair<double, Vec2> sigma_eps_and_grad(const Vec2& x, double sigma0, double sigma1,
                                           double epsilon);

struct TaxisParams {
  double chi = 5.0;
  double diffusion = 0.1;  // D
  double r = 8.0;          // logistic growth rate
  double r0 = 0.5;         // constant growth rate
};

// Stimulus c(x) = sin(pi (x1+1)/2) sin(pi (x2+1)/2) / 2 and its derivatives.
double taxis_stimulus(const Vec2& x);
Vec2 taxis_stimulus_grad(const Vec2& x);
double taxis_stimulus_laplacian(const Vec2& x);

// First-order-form coefficients of the taxis equation for solution value u:
// F = -(chi / 2D) grad c,  G = (chi u lap c - H(u)) / 2D with
// H(u) = r u (1 - u) + r0.
std::pair<Vec2, double> taxis_drift_reward(const Vec2& x, double u, const TaxisParams& p);

ProblemSpec make_laplace_u1();
ProblemSpec make_laplace_u2();
ProblemSpec make_interface(const InterfaceParams& p);
ProblemSpec make_taxis(const TaxisParams& p);
ProblemSpec make_taxis_family(TaxisParams p, double r_min, double r_max, double sigma_r);

}  // namespace mcpde
