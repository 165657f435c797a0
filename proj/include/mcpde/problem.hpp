#pragma once

#include <functional>
#include <optional>
#include <string>

#include "mcpde/geometry.hpp"
#include "mcpde/net.hpp"

namespace mcpde {

// One elliptic problem in first-order form: (1/2) lap u + F.grad u - G = 0
// with Dirichlet data h, optionally a prescribed jump across the internal
// interface and a known solution for error reporting. F and G receive the
// current solution value and the family parameter; unused arguments are
// simply ignored by problems that do not need them.
struct ProblemSpec {
  std::string name;
  Domain domain = Domain::square(-1.0, 1.0);
  InputEncoding encoding = InputEncoding::Coords;

  std::function<Vec2(const Vec2&, double u, double r)> drift;      // F
  std::function<double(const Vec2&, double u, double r)> reward;   // G
  std::function<double(const Vec2&)> boundary_value;               // h

  // Solution jump across the interface circle; category 0 is the inner side.
  std::optional<double> jump;

  // Known solution u(x) given the subdomain label (two-sided on the interface).
  std::function<double(const Vec2&, int category)> exact;

  bool drift_depends_on_u = false;
  bool reward_depends_on_u = false;

  bool has_param = false;  // family training over an extra scalar input
  double r_min = 0.0, r_max = 0.0, sigma_r = 0.0;
  double r_fixed = 0.0;  // parameter value baked into fixed-parameter problems

  bool has_exact() const { return static_cast<bool>(exact); }
};

}  // namespace mcpde
