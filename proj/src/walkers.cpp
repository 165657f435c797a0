#include "mcpde/walkers.hpp"

namespace mcpde {

WalkerEnsemble WalkerEnsemble::init(const Domain& domain, int n, std::uint64_t seed) {
  WalkerEnsemble e;
  e.positions.resize(static_cast<std::size_t>(n));
  e.categories.resize(static_cast<std::size_t>(n));
  e.streams.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    e.streams.push_back(Rng::stream(seed, rng_stream::walker(static_cast<std::uint64_t>(i))));
    e.positions[static_cast<std::size_t>(i)] = domain.sample_interior(e.streams.back());
    e.categories[static_cast<std::size_t>(i)] = domain.category(e.positions[static_cast<std::size_t>(i)]);
  }
  return e;
}

WalkerEnsemble WalkerEnsemble::init_with_params(const Domain& domain, int n, std::uint64_t seed,
                                                double r_min, double r_max) {
  WalkerEnsemble e = init(domain, n, seed);
  e.params.resize(static_cast<std::size_t>(n));
  e.param_streams.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    e.param_streams.push_back(
        Rng::stream(seed, rng_stream::param_walker(static_cast<std::uint64_t>(i))));
    e.params[static_cast<std::size_t>(i)] = e.param_streams.back().uniform(r_min, r_max);
  }
  return e;
}

void advance_ensemble(WalkerEnsemble& ens, double dt, const Domain& domain) {
  for (std::size_t i = 0; i < ens.positions.size(); ++i) {
    Vec2 cand = gaussian_step(ens.positions[i], dt, ens.streams[i]);
    if (!domain.contains(cand)) cand = domain.sample_interior(ens.streams[i]);
    ens.positions[i] = cand;
    ens.categories[i] = domain.category(cand);
  }
}

void advance_param_walkers(std::vector<double>& params, std::vector<Rng>& streams,
                           double sigma_r, double dt, double r_min, double r_max) {
  const double s = sigma_r * std::sqrt(dt);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double r = params[i] + s * streams[i].normal2().first;
    params[i] = (r < r_min || r > r_max) ? streams[i].uniform(r_min, r_max) : r;
  }
}

}  // namespace mcpde
