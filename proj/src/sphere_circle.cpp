#include "pleat/sphere_circle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pleat/error.hpp"

namespace pleat {

namespace {

constexpr double kPi = std::numbers::pi;

Complex bracket(const SpherePoint& p, const SpherePoint& q) {
  auto [p0, p1] = p.coords();
  auto [q0, q1] = q.coords();
  return p0 * q1 - p1 * q0;
}

void require_distinct(const SpherePoint& p, const SpherePoint& q, const SpherePoint& r) {
  constexpr double tol = 1e-12;
  if (chordal_distance(p, q) < tol || chordal_distance(q, r) < tol ||
      chordal_distance(p, r) < tol) {
    throw Error(ErrorKind::CoincidentPoints, "points must be pairwise distinct");
  }
}

bool on_circle(const SphereCircle& c, const SpherePoint& p) {
  if (p.is_infinite()) return c.is_line();
  double scale = std::max({1.0, std::abs(p.value()), c.is_line() ? 0.0 : c.radius()});
  return c.distance(p) <= 1e-9 * scale;
}

}  // namespace

SphereCircle SphereCircle::circle(Complex center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius) || !std::isfinite(center.real()) ||
      !std::isfinite(center.imag())) {
    throw Error(ErrorKind::DegenerateCircle, "radius must be positive and finite");
  }
  SphereCircle c;
  c.center_ = center;
  c.radius_ = radius;
  return c;
}

SphereCircle SphereCircle::line(Complex point, Complex direction) {
  double n = std::abs(direction);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorKind::DegenerateCircle, "line direction must be nonzero");
  }
  SphereCircle c;
  c.line_ = true;
  c.direction_ = direction / n;
  // Store the foot of the perpendicular from the origin.
  c.center_ = point - c.direction_ * (std::conj(c.direction_) * point).real();
  return c;
}

double SphereCircle::distance(const SpherePoint& p) const {
  if (p.is_infinite()) return line_ ? 0.0 : std::numeric_limits<double>::infinity();
  Complex z = p.value();
  if (line_) return std::abs((std::conj(direction_) * (z - center_)).imag());
  return std::abs(std::abs(z - center_) - radius_);
}

Complex SphereCircle::tangent(const SpherePoint& p) const {
  if (line_) return direction_;
  Complex w = p.value() - center_;
  return Complex(0.0, 1.0) * w / std::abs(w);
}

void SphereCircle::sample(SpherePoint out[3]) const {
  if (line_) {
    out[0] = SpherePoint(center_);
    out[1] = SpherePoint(center_ + direction_);
    out[2] = SpherePoint::infinity();
    return;
  }
  out[0] = SpherePoint(center_ + radius_);
  out[1] = SpherePoint(center_ + Complex(0.0, radius_));
  out[2] = SpherePoint(center_ - radius_);
}

SphereCircle SphereCircle::transformed(const MoebiusMap& g) const {
  SpherePoint pts[3];
  sample(pts);
  return circle_through(g(pts[0]), g(pts[1]), g(pts[2]));
}

SphereCircle circle_through(const SpherePoint& p, const SpherePoint& q, const SpherePoint& r) {
  require_distinct(p, q, r);
  const SpherePoint* pts[3] = {&p, &q, &r};
  for (int i = 0; i < 3; ++i) {
    if (pts[i]->is_infinite()) {
      Complex u = pts[(i + 1) % 3]->value();
      Complex v = pts[(i + 2) % 3]->value();
      return SphereCircle::line(u, v - u);
    }
  }
  Complex z0 = p.value();
  Complex b = q.value() - z0;
  Complex c = r.value() - z0;
  double cross = (std::conj(b) * c).imag();
  if (std::abs(cross) <= 1e-13 * std::abs(b) * std::abs(c)) return SphereCircle::line(z0, b);
  Complex o = (std::norm(b) * c - std::norm(c) * b) / Complex(0.0, 2.0 * cross);
  return SphereCircle::circle(z0 + o, std::abs(o));
}

Complex cross_ratio(const SpherePoint& p, const SpherePoint& q, const SpherePoint& r,
                    const SpherePoint& s) {
  return bracket(s, p) * bracket(q, r) / (bracket(s, r) * bracket(q, p));
}

double concyclicity_residual(const SpherePoint& p, const SpherePoint& q, const SpherePoint& r,
                             const SpherePoint& s) {
  require_distinct(p, q, r);
  Complex num = bracket(s, p) * bracket(q, r);
  Complex den = bracket(s, r) * bracket(q, p);
  double scale = std::abs(den) * std::max(std::abs(den), std::abs(num));
  if (scale == 0.0) return 0.0;
  return std::abs((num * std::conj(den)).imag()) / scale;
}

MoebiusMap reflect_in_circle(const SphereCircle& c) {
  if (c.is_line()) {
    Complex u = c.direction();
    Complex p = c.point();
    return MoebiusMap::unimodular(u, (p - u * u * std::conj(p)) / u, 0.0, 1.0 / u,
                                  Orientation::antiholomorphic);
  }
  double r = c.radius();
  if (!(r > 0.0)) throw Error(ErrorKind::DegenerateCircle, "zero radius");
  Complex z0 = c.center();
  Complex ir(0.0, r);
  return MoebiusMap::unimodular(z0 / ir, (r * r - std::norm(z0)) / ir, 1.0 / ir,
                                -std::conj(z0) / ir, Orientation::antiholomorphic);
}

double angle_between_circles(const SphereCircle& c1, const SphereCircle& c2,
                             const SpherePoint& at) {
  if (!on_circle(c1, at) || !on_circle(c2, at)) {
    throw Error(ErrorKind::NoIntersectionAtPoint, "point is not on both circles");
  }
  double a = std::arg(c2.tangent(at) / c1.tangent(at));
  a = std::fmod(a, kPi);
  if (a < 0.0) a += kPi;
  if (a >= kPi - 1e-15) a = 0.0;
  return a;
}

}  // namespace pleat
