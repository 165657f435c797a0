#pragma once

#include <vector>

#include "mcpde/grid.hpp"
#include "mcpde/problems.hpp"

namespace mcpde {

struct FdOptions {
  double damping = 0.7;        // relaxation of the Picard update
  double pseudo_time = 0.5;    // implicit pseudo-time shift, 0 disables
  double tolerance = 1e-10;    // sup-norm of the discrete residual
  int max_iterations = 400;
};

// Raised when the Picard iteration fails to reach the tolerance; carries the
// residual history for diagnosis.
struct FdDivergence : std::runtime_error {
  explicit FdDivergence(const std::string& what, std::vector<double> hist)
      : std::runtime_error(what), residual_history(std::move(hist)) {}
  std::vector<double> residual_history;
};

// Second-order centered-difference solution of the steady taxis equation
//   div(D grad u - chi u grad c) + r u (1 - u) + r0 = 0 on [-1,1]^2, u = 0 on
// the boundary. The linear-in-u terms are implicit; the logistic u^2 is
// linearized against the previous iterate (damped Picard).
Grid2D fd_solve_taxis(const TaxisParams& params, int nx, const FdOptions& opts = {});

// Series solution of D lap u = -r0 on [-1,1]^2 with zero boundary values;
// reference for the chi = 0, r = 0 sub-case.
double poisson_square_series(double px, double py, double r0, double diffusion, int terms = 60);

}  // namespace mcpde
