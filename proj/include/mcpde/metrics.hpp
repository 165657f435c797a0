#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "mcpde/geometry.hpp"
#include "mcpde/grid.hpp"
#include "mcpde/net.hpp"
#include "mcpde/problem.hpp"

namespace mcpde {

using FieldFn = std::function<double(const Vec2&)>;

// Relative L2 distance sqrt(int (a - b)^2) / sqrt(int b^2) by midpoint
// quadrature on an n x n tensor grid masked to the domain.
double relative_l2(const FieldFn& u_approx, const FieldFn& u_ref, const Domain& domain,
                   int n = 256);
double relative_l2(const FieldFn& u_approx, const Grid2D& u_ref, const Domain& domain,
                   int n = 256);

// Average of u over T equispaced angles at radius r. `category` overrides the
// subdomain tag passed to the field (used to probe either side of the
// interface); by default the tag follows the position rule.
double radial_average(const std::function<double(const Vec2&, int)>& u, double r, int t = 10000,
                      std::optional<int> category = std::nullopt);

// Field view of a network: encodes each point with the problem's rule.
FieldFn network_field(const Network& net, const ParamVector& theta, const ProblemSpec& prob,
                      std::optional<double> r = std::nullopt);

// Exact-solution view with position-derived subdomain tags.
FieldFn exact_field(const ProblemSpec& prob);

// Slice of a solution family u(x; r): values[i][j] = u(points[j]; r_values[i]).
std::vector<std::vector<double>> family_slice(const Network& net, const ParamVector& theta,
                                              const ProblemSpec& prob,
                                              const std::vector<Vec2>& points,
                                              const std::vector<double>& r_values);

// Relative L2 error of the angular-averaged profile against the exact radial
// solution of the interface problem, over radii in (0, 2) excluding r = 1.
double interface_profile_error(const Network& net, const ParamVector& theta,
                               const ProblemSpec& prob, int n_radii = 100, int t = 10000);

// Learned jump at the interface: averaged outer-tag minus inner-tag values on
// the circle r = 1.
double interface_jump(const Network& net, const ParamVector& theta, const ProblemSpec& prob,
                      int t = 10000);

}  // namespace mcpde
