#include "pleat/lengthmap.hpp"

#include <cmath>
#include <numbers>

#include "pleat/error.hpp"

namespace pleat {

namespace {

constexpr double kPi = std::numbers::pi;

Complex commutator_of(const RepPair& r) {
  return (r.a * r.b * r.a.inverse() * r.b.inverse()).trace();
}

// d lambda / d trace for the branch measured by complex_length.
Complex length_derivative(const MoebiusMap& m) {
  ComplexLength cl = complex_length(m);
  return static_cast<double>(cl.lift_sign) / std::sinh(cl.value / 2.0);
}

void require_nondegenerate(const TraceCoords& t) {
  for (Complex v : {t.x, t.y}) {
    if (std::abs(v - 2.0) < 1e-6 || std::abs(v + 2.0) < 1e-6) {
      throw Error(ErrorKind::CoordinateDegeneracy, "trace of a or b within 1e-6 of +-2");
    }
  }
}

}  // namespace

const char* to_string(CoordinateKind k) { return k == CoordinateKind::length ? "length" : "trace"; }

double AngleVector::phi(Curve c) const {
  double th = c == Curve::a ? theta_a : c == Curve::b ? theta_b : theta_p;
  return 2.0 * (kPi - th);
}

LengthVector length_map(const TraceCoords& t, const Certification& cert) {
  TraceCoords s = normalize_lift(t);
  auto slot = [&](Curve c, Complex tr) {
    if (cert.curve(c).parabolic) {
      return LengthSlot{c, CoordinateKind::trace, tr.real(), std::abs(tr.imag())};
    }
    Complex l = 2.0 * std::acosh(tr / 2.0);
    return LengthSlot{c, CoordinateKind::length, l.real(), std::abs(l.imag())};
  };
  Complex k = commutator_trace(s);
  return {{{slot(Curve::a, s.x), slot(Curve::b, s.y),
            LengthSlot{Curve::commutator, CoordinateKind::trace, k.real(), std::abs(k.imag())}}}};
}

AngleVector angle_map(const Certification& cert) {
  return {cert.theta(Curve::a), cert.theta(Curve::b), cert.theta(Curve::commutator)};
}

Complex holo_length_determinant(const TraceCoords& t) {
  require_nondegenerate(t);
  RepPair r = matrices_from_traces(t);
  return length_derivative(r.a) * length_derivative(r.b) * (2.0 * t.z - t.x * t.y);
}

JacobianMatrix holo_length_jacobian(const TraceCoords& t) {
  require_nondegenerate(t);
  RepPair r = matrices_from_traces(t);
  Eigen::Matrix3cd cf = Eigen::Matrix3cd::Zero();
  cf(0, 0) = length_derivative(r.a);
  cf(1, 1) = length_derivative(r.b);
  cf(2, 0) = 2.0 * t.x - t.y * t.z;
  cf(2, 1) = 2.0 * t.y - t.x * t.z;
  cf(2, 2) = 2.0 * t.z - t.x * t.y;

  // Complex-step central differences through the matrices.
  const double h = 1e-6;
  Complex la0 = complex_length(r.a).value, lb0 = complex_length(r.b).value;
  auto eval = [&](const TraceCoords& s) {
    RepPair q = matrices_from_traces(s);
    return Eigen::Vector3cd(complex_length_near(q.a, la0), complex_length_near(q.b, lb0),
                            commutator_of(q));
  };
  Eigen::Matrix3cd fd;
  for (int j = 0; j < 3; ++j) {
    TraceCoords p = t, m = t;
    Complex step(0.0, h);
    Complex* pp = j == 0 ? &p.x : j == 1 ? &p.y : &p.z;
    Complex* mm = j == 0 ? &m.x : j == 1 ? &m.y : &m.z;
    *pp += step;
    *mm -= step;
    fd.col(j) = (eval(p) - eval(m)) / (2.0 * step);
  }
  JacobianMatrix out;
  out.values = cf;
  out.rows = {"lambda_a", "lambda_b", "kappa"};
  out.cols = {"x", "y", "z"};
  out.method = "closed-form";
  out.step = h;
  out.cross_check_discrepancy = (cf - fd).cwiseAbs().maxCoeff();
  return out;
}

std::array<double, 2> lengths_of(const TraceCoords& t) {
  TraceCoords s = normalize_lift(t);
  return {2.0 * std::acosh(std::max(1.0, s.x.real() / 2.0)),
          2.0 * std::acosh(std::max(1.0, s.y.real() / 2.0))};
}

bool lengths_feasible(double la, double lb) {
  if (!(la >= 0.0) || !(lb >= 0.0)) return false;
  double x = 2.0 * std::cosh(la / 2.0), y = 2.0 * std::cosh(lb / 2.0);
  return fuchsian_discriminant(x, y) < 0.0;
}

std::array<double, 2> angles_at_lengths(double la, double lb) {
  if (!lengths_feasible(la, lb)) {
    throw Error(ErrorKind::TargetOutsideImage, "lengths outside the quasifuchsian slice");
  }
  RepPair r = matrices_from_traces(pleating_point_from_lengths(la, lb));
  return {bending_angle_unchecked(r, Curve::a), bending_angle_unchecked(r, Curve::b)};
}

}  // namespace pleat
