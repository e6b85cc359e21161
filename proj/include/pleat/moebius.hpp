#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

namespace pleat {

using Complex = std::complex<double>;

// A point of the Riemann sphere. Lines and circles treat infinity explicitly.
class SpherePoint {
 public:
  SpherePoint() = default;
  SpherePoint(Complex z) : z_(z) {}  // NOLINT: implicit on purpose
  SpherePoint(double x) : z_(x) {}   // NOLINT

  static SpherePoint infinity() {
    SpherePoint p;
    p.infinite_ = true;
    return p;
  }
  // Point with homogeneous coordinates [u : v].
  static SpherePoint homogeneous(Complex u, Complex v);

  bool is_infinite() const { return infinite_; }
  // Finite value; throws InvalidArgument at infinity.
  Complex value() const;
  // Homogeneous coordinates, unit norm.
  std::pair<Complex, Complex> coords() const;

 private:
  Complex z_{};
  bool infinite_ = false;
};

// Chordal distance on the unit sphere, in [0, 2].
double chordal_distance(const SpherePoint& p, const SpherePoint& q);

enum class Orientation { holomorphic, antiholomorphic };

// Unimodular 2x2 matrix acting as z -> (az+b)/(cz+d), or on conj(z) when
// antiholomorphic.
class MoebiusMap {
 public:
  MoebiusMap() = default;
  // Normalizes to determinant 1. Throws InvalidArgument on a singular matrix.
  MoebiusMap(Complex a, Complex b, Complex c, Complex d,
             Orientation o = Orientation::holomorphic);

  static MoebiusMap identity() { return {}; }
  // No renormalization; the caller guarantees ad - bc = 1.
  static MoebiusMap unimodular(Complex a, Complex b, Complex c, Complex d,
                               Orientation o = Orientation::holomorphic);

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }
  Orientation orientation() const { return o_; }
  bool is_holomorphic() const { return o_ == Orientation::holomorphic; }

  Complex trace() const { return a_ + d_; }
  Complex det() const { return a_ * d_ - b_ * c_; }

  MoebiusMap inverse() const;
  MoebiusMap operator-() const;
  SpherePoint operator()(const SpherePoint& p) const;

  // Largest entry modulus of the difference; orientations must agree.
  double distance(const MoebiusMap& other) const;
  // min(distance(other), distance(-other)).
  double projective_distance(const MoebiusMap& other) const;
  double norm() const;

  friend MoebiusMap operator*(const MoebiusMap& l, const MoebiusMap& r);

 private:
  Complex a_{1.0}, b_{0.0}, c_{0.0}, d_{1.0};
  Orientation o_ = Orientation::holomorphic;
};

enum class IsometryKind { identity, parabolic, elliptic, purely_hyperbolic, loxodromic };

const char* to_string(IsometryKind kind);

struct IsometryClass {
  IsometryKind kind;
};

struct ComplexLength {
  Complex value;
  int lift_sign = 1;
};

constexpr double kClassifyTol = 1e-10;

IsometryClass classify(const MoebiusMap& m, double tol = kClassifyTol);

ComplexLength complex_length(const MoebiusMap& m);
// Holomorphic branch of 2 log(kappa) nearest to `reference` (no reduction of
// the imaginary part). Used for finite differences.
Complex complex_length_near(const MoebiusMap& m, Complex reference);

// Attracting point first for loxodromic and hyperbolic maps.
std::pair<SpherePoint, SpherePoint> fixed_points(const MoebiusMap& m);

// g with g m g^-1 = diag(kappa, 1/kappa), attracting point at infinity.
MoebiusMap normalize_to_axis(const MoebiusMap& m);

MoebiusMap parabolic_canonical_form(Complex u);

struct CanonicalPair {
  MoebiusMap a;
  MoebiusMap b;
  Complex v;
};

CanonicalPair commuting_canonical_pair(Complex u, Complex h);

MoebiusMap rotation_about_axis(const MoebiusMap& m, double psi);

// Plain matrix view, ignoring orientation.
Eigen::Matrix2cd to_matrix(const MoebiusMap& m);

}  // namespace pleat
