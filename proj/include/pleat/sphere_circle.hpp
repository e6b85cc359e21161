#pragma once

#include "pleat/moebius.hpp"

namespace pleat {

// Circle or line on the Riemann sphere. Lines are stored explicitly.
class SphereCircle {
 public:
  static SphereCircle circle(Complex center, double radius);
  // Line through `point` with direction `direction` (normalized internally).
  static SphereCircle line(Complex point, Complex direction);

  bool is_line() const { return line_; }
  Complex center() const { return center_; }
  double radius() const { return radius_; }
  Complex point() const { return center_; }
  Complex direction() const { return direction_; }

  // Euclidean distance from a finite point; for infinity, 0 on lines.
  double distance(const SpherePoint& p) const;
  // Unit tangent at a point of the circle (counterclockwise for circles).
  Complex tangent(const SpherePoint& p) const;
  // Three distinct points on the circle.
  void sample(SpherePoint out[3]) const;
  SphereCircle transformed(const MoebiusMap& g) const;

 private:
  Complex center_{};
  double radius_ = 0.0;
  Complex direction_{1.0};
  bool line_ = false;
};

SphereCircle circle_through(const SpherePoint& p, const SpherePoint& q, const SpherePoint& r);

Complex cross_ratio(const SpherePoint& p, const SpherePoint& q, const SpherePoint& r,
                    const SpherePoint& s);

double concyclicity_residual(const SpherePoint& p, const SpherePoint& q, const SpherePoint& r,
                             const SpherePoint& s);

MoebiusMap reflect_in_circle(const SphereCircle& c);

double angle_between_circles(const SphereCircle& c1, const SphereCircle& c2,
                             const SpherePoint& at);

}  // namespace pleat
