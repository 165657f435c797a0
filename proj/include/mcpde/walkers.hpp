#pragma once

#include <cstdint>
#include <vector>

#include "mcpde/geometry.hpp"
#include "mcpde/rng.hpp"

namespace mcpde {

inline Vec2 gaussian_step(const Vec2& x, double dt, Rng& rng) {
  auto [zx, zy] = rng.normal2();
  const double s = std::sqrt(dt);
  return {x.x() + s * zx, x.y() + s * zy};
}

// N Brownian walkers, each owning its RNG stream; optional scalar parameter
// walkers ride along on separate streams for solution-family training.
struct WalkerEnsemble {
  std::vector<Vec2> positions;
  std::vector<int> categories;
  std::vector<Rng> streams;

  std::vector<double> params;        // empty unless family training
  std::vector<Rng> param_streams;

  static WalkerEnsemble init(const Domain& domain, int n, std::uint64_t seed);
  static WalkerEnsemble init_with_params(const Domain& domain, int n, std::uint64_t seed,
                                         double r_min, double r_max);

  int size() const { return static_cast<int>(positions.size()); }
  bool has_params() const { return !params.empty(); }
};

// One Gaussian step per walker; a walker landing outside the domain is
// re-drawn uniformly inside it. Categories follow the new positions.
void advance_ensemble(WalkerEnsemble& ens, double dt, const Domain& domain);

// Brownian step of the parameter walkers; values crossing the range are
// re-drawn uniformly in [r_min, r_max].
void advance_param_walkers(std::vector<double>& params, std::vector<Rng>& streams,
                           double sigma_r, double dt, double r_min, double r_max);

}  // namespace mcpde
