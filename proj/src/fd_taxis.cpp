#include "mcpde/fd_taxis.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <numbers>
#include <sstream>

namespace mcpde {

namespace {

constexpr double kPi = std::numbers::pi;

struct Stencil {
  int n = 0;       // interior nodes per side
  double h = 0.0;
  std::vector<double> cx, cy, lap_c;  // stimulus derivatives at interior nodes

  int idx(int i, int j) const { return j * n + i; }
};

// sup-norm of the discrete operator
//   D lap_h u - chi grad c . grad_h u - chi lap c u + r u (1 - u) + r0
// with homogeneous Dirichlet values outside the interior block.
double residual_norm(const Stencil& st, const TaxisParams& p, const Eigen::VectorXd& u) {
  const double ih2 = 1.0 / (st.h * st.h);
  const double i2h = 1.0 / (2.0 * st.h);
  auto uat = [&](int i, int j) {
    return (i < 0 || j < 0 || i >= st.n || j >= st.n) ? 0.0 : u(st.idx(i, j));
  };
  double worst = 0.0;
  for (int j = 0; j < st.n; ++j) {
    for (int i = 0; i < st.n; ++i) {
      const int k = st.idx(i, j);
      const double uc = u(k);
      const double lap = (uat(i + 1, j) + uat(i - 1, j) + uat(i, j + 1) + uat(i, j - 1) - 4 * uc) * ih2;
      const double gx = (uat(i + 1, j) - uat(i - 1, j)) * i2h;
      const double gy = (uat(i, j + 1) - uat(i, j - 1)) * i2h;
      const double f = p.diffusion * lap - p.chi * (st.cx[k] * gx + st.cy[k] * gy) -
                       p.chi * st.lap_c[k] * uc + p.r * uc * (1.0 - uc) + p.r0;
      worst = std::max(worst, std::abs(f));
    }
  }
  return worst;
}

}  // namespace

double poisson_square_series(double px, double py, double r0, double diffusion, int terms) {
  double acc = 0.5 * (1.0 - px * px);
  double sign = 1.0;
  for (int n = 1; n < 2 * terms; n += 2) {
    const double k = n * kPi / 2.0;
    acc -= sign * (16.0 / (kPi * kPi * kPi * n * n * n)) * std::cos(k * px) * std::cosh(k * py) /
           std::cosh(k);
    sign = -sign;
  }
  return acc * r0 / diffusion;
}

Grid2D fd_solve_taxis(const TaxisParams& p, int nx, const FdOptions& opts) {
  if (nx < 3 || nx % 2 == 0) throw std::invalid_argument("fd_solve_taxis: nx must be odd and >= 3");

  Stencil st;
  st.n = nx - 2;
  st.h = 2.0 / (nx - 1);
  const long nn = static_cast<long>(st.n) * st.n;
  st.cx.resize(nn);
  st.cy.resize(nn);
  st.lap_c.resize(nn);
  for (int j = 0; j < st.n; ++j) {
    for (int i = 0; i < st.n; ++i) {
      const Vec2 x{-1.0 + (i + 1) * st.h, -1.0 + (j + 1) * st.h};
      const Vec2 g = taxis_stimulus_grad(x);
      st.cx[st.idx(i, j)] = g.x();
      st.cy[st.idx(i, j)] = g.y();
      st.lap_c[st.idx(i, j)] = taxis_stimulus_laplacian(x);
    }
  }

  const bool linear = (p.r == 0.0);
  const double ih2 = 1.0 / (st.h * st.h);
  const double i2h = 1.0 / (2.0 * st.h);

  Eigen::VectorXd u = Eigen::VectorXd::Zero(nn);
  double shift = linear ? 0.0 : opts.pseudo_time;
  const double omega = linear ? 1.0 : opts.damping;
  double res = residual_norm(st, p, u);
  std::vector<double> history{res};

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(5 * nn));

  for (int iter = 0; iter < opts.max_iterations && res >= opts.tolerance; ++iter) {
    trips.clear();
    Eigen::VectorXd rhs(nn);
    for (int j = 0; j < st.n; ++j) {
      for (int i = 0; i < st.n; ++i) {
        const int k = st.idx(i, j);
        const double diag = -4.0 * p.diffusion * ih2 - p.chi * st.lap_c[k] +
                            p.r * (1.0 - u(k)) - shift;
        trips.emplace_back(k, k, diag);
        if (i + 1 < st.n)
          trips.emplace_back(k, st.idx(i + 1, j), p.diffusion * ih2 - p.chi * st.cx[k] * i2h);
        if (i - 1 >= 0)
          trips.emplace_back(k, st.idx(i - 1, j), p.diffusion * ih2 + p.chi * st.cx[k] * i2h);
        if (j + 1 < st.n)
          trips.emplace_back(k, st.idx(i, j + 1), p.diffusion * ih2 - p.chi * st.cy[k] * i2h);
        if (j - 1 >= 0)
          trips.emplace_back(k, st.idx(i, j - 1), p.diffusion * ih2 + p.chi * st.cy[k] * i2h);
        rhs(k) = -p.r0 - shift * u(k);
      }
    }
    Eigen::SparseMatrix<double> a(nn, nn);
    a.setFromTriplets(trips.begin(), trips.end());
    lu.compute(a);
    if (lu.info() != Eigen::Success)
      throw FdDivergence("fd_solve_taxis: singular linearized system", history);

    const Eigen::VectorXd u_new = lu.solve(rhs);
    const Eigen::VectorXd u_next = (1.0 - omega) * u + omega * u_new;
    const double res_next = residual_norm(st, p, u_next);
    if (res_next <= res || shift == 0.0) {
      u = u_next;
      res = res_next;
      shift *= 0.5;               // relax toward a plain Picard step
      if (shift < 1e-8) shift = 0.0;
    } else {
      shift = (shift == 0.0 ? opts.pseudo_time : shift * 4.0);  // back off
    }
    history.push_back(res);
  }

  if (res >= opts.tolerance) {
    std::ostringstream msg;
    msg << "fd_solve_taxis: no convergence after " << opts.max_iterations
        << " iterations (residual " << res << ")";
    throw FdDivergence(msg.str(), history);
  }

  Grid2D g = Grid2D::make(nx, nx, -1.0, 1.0, -1.0, 1.0);
  for (int j = 0; j < st.n; ++j)
    for (int i = 0; i < st.n; ++i) g.at(i + 1, j + 1) = u(st.idx(i, j));
  return g;
}

}  // namespace mcpde
