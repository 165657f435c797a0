#include "mcpde/metrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mcpde/parallel.hpp"

namespace mcpde {

namespace {

double relative_l2_impl(const FieldFn& a, const FieldFn& b, const Domain& domain, int n) {
  const auto bb = domain.bounding_box();
  const double hx = (bb[1] - bb[0]) / n;
  const double hy = (bb[3] - bb[2]) / n;
  std::vector<double> diff2(static_cast<std::size_t>(n), 0.0), ref2(static_cast<std::size_t>(n), 0.0);
  parallel_ranges(n, [&](long lo, long hi) {
    for (long j = lo; j < hi; ++j) {
      double d2 = 0.0, r2 = 0.0;
      for (int i = 0; i < n; ++i) {
        const Vec2 p{bb[0] + (i + 0.5) * hx, bb[2] + (j + 0.5) * hy};
        if (!domain.contains(p)) continue;
        const double va = a(p), vb = b(p);
        d2 += (va - vb) * (va - vb);
        r2 += vb * vb;
      }
      diff2[static_cast<std::size_t>(j)] = d2;
      ref2[static_cast<std::size_t>(j)] = r2;
    }
  });
  double d2 = 0.0, r2 = 0.0;
  for (int j = 0; j < n; ++j) {
    d2 += diff2[static_cast<std::size_t>(j)];
    r2 += ref2[static_cast<std::size_t>(j)];
  }
  if (r2 == 0.0) throw std::invalid_argument("relative_l2: reference is zero in L2");
  return std::sqrt(d2 / r2);
}

}  // namespace

double relative_l2(const FieldFn& u_approx, const FieldFn& u_ref, const Domain& domain, int n) {
  return relative_l2_impl(u_approx, u_ref, domain, n);
}

double relative_l2(const FieldFn& u_approx, const Grid2D& u_ref, const Domain& domain, int n) {
  return relative_l2_impl(
      u_approx, [&u_ref](const Vec2& p) { return u_ref.interpolate(p.x(), p.y()); }, domain, n);
}

double radial_average(const std::function<double(const Vec2&, int)>& u, double r, int t,
                      std::optional<int> category) {
  double acc = 0.0;
  for (int k = 1; k <= t; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / t;
    const Vec2 p{r * std::cos(phi), r * std::sin(phi)};
    const int cat = category ? *category : (p.norm() < 1.0 ? 0 : 1);
    acc += u(p, cat);
  }
  return acc / t;
}

FieldFn network_field(const Network& net, const ParamVector& theta, const ProblemSpec& prob,
                      std::optional<double> r) {
  const double rv = r.value_or(prob.r_fixed);
  return [&net, &theta, &prob, rv](const Vec2& p) {
    return net.forward(theta, encode_point(prob.encoding, p, prob.domain.category(p), rv));
  };
}

FieldFn exact_field(const ProblemSpec& prob) {
  if (!prob.has_exact()) throw std::invalid_argument("problem has no exact solution");
  return [&prob](const Vec2& p) { return prob.exact(p, prob.domain.category(p)); };
}

std::vector<std::vector<double>> family_slice(const Network& net, const ParamVector& theta,
                                              const ProblemSpec& prob,
                                              const std::vector<Vec2>& points,
                                              const std::vector<double>& r_values) {
  std::vector<std::vector<double>> table;
  table.reserve(r_values.size());
  for (double r : r_values) {
    std::vector<double> row;
    row.reserve(points.size());
    for (const Vec2& p : points)
      row.push_back(net.forward(theta, encode_point(prob.encoding, p, prob.domain.category(p), r)));
    table.push_back(std::move(row));
  }
  return table;
}

double interface_profile_error(const Network& net, const ParamVector& theta,
                               const ProblemSpec& prob, int n_radii, int t) {
  auto u = [&](const Vec2& p, int cat) {
    return net.forward(theta, encode_point(prob.encoding, p, cat, 0.0));
  };
  double d2 = 0.0, r2 = 0.0;
  for (int k = 0; k < n_radii; ++k) {
    const double r = 2.0 * (k + 0.5) / n_radii;  // stays off r = 1 for even n_radii
    const double prof = radial_average(u, r, t);
    const int cat = r < 1.0 ? 0 : 1;
    const double ref = prob.exact(Vec2{r, 0.0}, cat);
    d2 += (prof - ref) * (prof - ref);
    r2 += ref * ref;
  }
  return std::sqrt(d2 / r2);
}

double interface_jump(const Network& net, const ParamVector& theta, const ProblemSpec& prob,
                      int t) {
  auto u = [&](const Vec2& p, int cat) {
    return net.forward(theta, encode_point(prob.encoding, p, cat, 0.0));
  };
  return radial_average(u, 1.0, t, 1) - radial_average(u, 1.0, t, 0);
}

}  // namespace mcpde
