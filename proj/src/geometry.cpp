#include "mcpde/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mcpde {

namespace {

constexpr double kTiePad = 1e-12;

// Smallest root of the segment-circle crossing |a + t d| = R for t in (0, 1],
// assuming |a| <= R.
std::optional<double> circle_crossing(const Vec2& a, const Vec2& d, double R) {
  const double qa = d.squaredNorm();
  if (qa == 0.0) return std::nullopt;
  const double qb = a.dot(d);
  const double qc = a.squaredNorm() - R * R;
  const double disc = qb * qb - qa * qc;
  if (disc < 0.0) return std::nullopt;
  const double t = (-qb + std::sqrt(disc)) / qa;
  if (t > 0.0 && t <= 1.0 + kTiePad) return std::min(t, 1.0);
  return std::nullopt;
}

}  // namespace

Domain Domain::sector(double radius, double angle) {
  Domain d;
  d.kind_ = DomainKind::CircularSector;
  d.radius_ = radius;
  d.angle_ = angle;
  return d;
}

Domain Domain::disc_with_interface(double r_interface, double r_outer) {
  Domain d;
  d.kind_ = DomainKind::DiscWithInterface;
  d.interface_ = r_interface;
  d.radius_ = r_outer;
  return d;
}

Domain Domain::square(double lo, double hi) {
  Domain d;
  d.kind_ = DomainKind::Square;
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

bool Domain::contains(const Vec2& p) const {
  switch (kind_) {
    case DomainKind::CircularSector: {
      if (p.squaredNorm() > radius_ * radius_) return false;
      if (p.x() == 0.0 && p.y() == 0.0) return true;
      const double th = std::atan2(p.y(), p.x());
      return th >= 0.0 && th <= angle_;
    }
    case DomainKind::DiscWithInterface:
      return p.squaredNorm() <= radius_ * radius_;
    case DomainKind::Square:
      return p.x() >= lo_ && p.x() <= hi_ && p.y() >= lo_ && p.y() <= hi_;
  }
  return false;
}

bool Domain::on_boundary(const Vec2& p, double tol) const {
  switch (kind_) {
    case DomainKind::CircularSector: {
      const double r = p.norm();
      if (r > radius_ + tol) return false;
      const double th = (r == 0.0) ? 0.0 : std::atan2(p.y(), p.x());
      if (th < -tol || th > angle_ + tol) return false;
      if (std::abs(r - radius_) <= tol) return true;
      // distance to the two radial edges
      if (std::abs(p.y()) <= tol && p.x() >= -tol) return true;
      const double s = p.x() * std::sin(angle_) - p.y() * std::cos(angle_);
      return std::abs(s) <= tol;
    }
    case DomainKind::DiscWithInterface:
      return std::abs(p.norm() - radius_) <= tol;
    case DomainKind::Square: {
      const bool inx = p.x() >= lo_ - tol && p.x() <= hi_ + tol;
      const bool iny = p.y() >= lo_ - tol && p.y() <= hi_ + tol;
      if (!inx || !iny) return false;
      return std::abs(p.x() - lo_) <= tol || std::abs(p.x() - hi_) <= tol ||
             std::abs(p.y() - lo_) <= tol || std::abs(p.y() - hi_) <= tol;
    }
  }
  return false;
}

int Domain::category(const Vec2& p) const {
  if (kind_ != DomainKind::DiscWithInterface) return 0;
  return p.norm() < interface_ ? 0 : 1;
}

std::optional<ExitRecord> Domain::detect_exit(const Vec2& a, const Vec2& b) const {
  if (!contains(a)) throw std::invalid_argument("detect_exit: start point outside the domain");
  if (contains(b)) return std::nullopt;

  const Vec2 d = b - a;
  double best_t = std::numeric_limits<double>::infinity();
  Vec2 best_p = Vec2::Zero();

  auto consider = [&](double t, const Vec2& snapped) {
    if (t < best_t) {
      best_t = t;
      best_p = snapped;
    }
  };

  switch (kind_) {
    case DomainKind::CircularSector: {
      if (auto t = circle_crossing(a, d, radius_)) {
        Vec2 p = a + *t * d;
        const double th = std::atan2(p.y(), p.x());
        if (th >= -kTiePad && th <= angle_ + kTiePad) consider(*t, p * (radius_ / p.norm()));
      }
      if (d.y() != 0.0) {  // edge theta = 0: y = 0, x in [0, radius]
        const double t = -a.y() / d.y();
        if (t > 0.0 && t <= 1.0 + kTiePad) {
          Vec2 p = a + t * d;
          if (p.x() >= -kTiePad && p.x() <= radius_ + kTiePad)
            consider(std::min(t, 1.0), {std::clamp(p.x(), 0.0, radius_), 0.0});
        }
      }
      {  // edge theta = angle: n.p = 0 with inward side n.p < 0
        const Vec2 e{std::cos(angle_), std::sin(angle_)};
        const Vec2 n{-std::sin(angle_), std::cos(angle_)};
        const double dn = n.dot(d);
        if (dn != 0.0) {
          const double t = -n.dot(a) / dn;
          if (t > 0.0 && t <= 1.0 + kTiePad) {
            const double s = e.dot(a + t * d);
            if (s >= -kTiePad && s <= radius_ + kTiePad)
              consider(std::min(t, 1.0), std::clamp(s, 0.0, radius_) * e);
          }
        }
      }
      break;
    }
    case DomainKind::DiscWithInterface: {
      if (auto t = circle_crossing(a, d, radius_)) {
        Vec2 p = a + *t * d;
        consider(*t, p * (radius_ / p.norm()));
      }
      break;
    }
    case DomainKind::Square: {
      auto side = [&](int axis, double level) {
        if (d(axis) == 0.0) return;
        const double t = (level - a(axis)) / d(axis);
        if (t <= 0.0 || t > 1.0 + kTiePad) return;
        Vec2 p = a + t * d;
        const int other = 1 - axis;
        if (p(other) >= lo_ - kTiePad && p(other) <= hi_ + kTiePad) {
          p(axis) = level;
          p(other) = std::clamp(p(other), lo_, hi_);
          consider(std::min(t, 1.0), p);
        }
      };
      side(0, lo_);
      side(0, hi_);
      side(1, lo_);
      side(1, hi_);
      break;
    }
  }

  if (!std::isfinite(best_t)) {
    // Degenerate grazing case: bisect containment along the segment.
    double t0 = 0.0, t1 = 1.0;
    for (int i = 0; i < 200; ++i) {
      const double tm = 0.5 * (t0 + t1);
      (contains(a + tm * d) ? t0 : t1) = tm;
    }
    best_p = a + t0 * d;
  }

  const double seg = d.norm();
  ExitRecord rec;
  rec.point = best_p;
  rec.fraction = seg > 0.0 ? std::min((best_p - a).norm() / seg, 1.0) : 0.0;
  return rec;
}

std::array<double, 4> Domain::bounding_box() const {
  switch (kind_) {
    case DomainKind::CircularSector: {
      // angle <= pi/2 presets keep this simple; fall back to the full box.
      const double ymax = angle_ < std::numbers::pi / 2 ? radius_ * std::sin(angle_) : radius_;
      return {0.0, radius_, 0.0, ymax};
    }
    case DomainKind::DiscWithInterface:
      return {-radius_, radius_, -radius_, radius_};
    case DomainKind::Square:
      return {lo_, hi_, lo_, hi_};
  }
  return {0, 1, 0, 1};
}

Vec2 Domain::sample_interior(Rng& rng) const {
  const auto bb = bounding_box();
  for (;;) {
    Vec2 p{rng.uniform(bb[0], bb[1]), rng.uniform(bb[2], bb[3])};
    if (contains(p)) return p;
  }
}

Vec2 Domain::sample_boundary(Rng& rng) const {
  switch (kind_) {
    case DomainKind::CircularSector: {
      const double arc = radius_ * angle_;
      const double total = arc + 2.0 * radius_;
      const double u = rng.uniform(0.0, total);
      if (u < arc) {
        const double th = u / radius_;
        return {radius_ * std::cos(th), radius_ * std::sin(th)};
      }
      const double s = u - arc;
      if (s < radius_) return {s, 0.0};
      const double q = s - radius_;
      return {q * std::cos(angle_), q * std::sin(angle_)};
    }
    case DomainKind::DiscWithInterface: {
      const double th = rng.uniform(0.0, 2.0 * std::numbers::pi);
      return {radius_ * std::cos(th), radius_ * std::sin(th)};
    }
    case DomainKind::Square: {
      const double side = hi_ - lo_;
      const double u = rng.uniform(0.0, 4.0 * side);
      const int edge = std::min(3, static_cast<int>(u / side));
      const double s = lo_ + (u - edge * side);
      switch (edge) {
        case 0: return {s, lo_};
        case 1: return {s, hi_};
        case 2: return {lo_, s};
        default: return {hi_, s};
      }
    }
  }
  return Vec2::Zero();
}

}  // namespace mcpde
