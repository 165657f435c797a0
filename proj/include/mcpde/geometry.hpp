#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>

#include "mcpde/rng.hpp"

namespace mcpde {

using Vec2 = Eigen::Vector2d;

struct ExitRecord {
  Vec2 point;       // on the boundary
  double fraction;  // lambda in [0, 1]: exit time ~ lambda * dt
};

enum class DomainKind {
  CircularSector,    // 0 <= r <= radius, 0 <= theta <= angle
  DiscWithInterface, // r < r_outer with an internal interface circle at r_interface
  Square,            // [lo, hi]^2
};

class Domain {
 public:
  static Domain sector(double radius, double angle);
  static Domain disc_with_interface(double r_interface, double r_outer);
  static Domain square(double lo, double hi);

  DomainKind kind() const { return kind_; }
  double radius() const { return radius_; }
  double angle() const { return angle_; }
  double interface_radius() const { return interface_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

  bool contains(const Vec2& p) const;
  bool on_boundary(const Vec2& p, double tol = 1e-12) const;

  // Subdomain label: 0 inside the interface circle (|x| < r_interface),
  // 1 otherwise; 0 for domains without an interface.
  int category(const Vec2& p) const;

  // First intersection of segment [a, b] with the boundary, for a inside and
  // b outside; returns nothing when b is inside (a within-step excursion is
  // not detected). Grazing ties resolve to the smaller fraction.
  std::optional<ExitRecord> detect_exit(const Vec2& a, const Vec2& b) const;

  Vec2 sample_interior(Rng& rng) const;            // uniform on the domain
  Vec2 sample_boundary(Rng& rng) const;            // uniform in arc length
  std::array<double, 4> bounding_box() const;      // {x0, x1, y0, y1}

 private:
  Domain() = default;

  DomainKind kind_ = DomainKind::Square;
  double radius_ = 1.0, angle_ = 0.0;   // sector
  double interface_ = 1.0;              // disc interface radius
  double lo_ = -1.0, hi_ = 1.0;         // square / disc outer radius reuses radius_
};

}  // namespace mcpde
