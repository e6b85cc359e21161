#include "pleat/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pleat/error.hpp"

namespace pleat {

namespace {

constexpr double kPi = std::numbers::pi;
// |Tr^2 - 4| below this is treated as parabolic by the length and axis code.
constexpr double kParabolicDisc = 1e-14;
// Modulus tie for the eigenvalue choice.
constexpr double kModulusTie = 1e-14;

void require_holomorphic(const MoebiusMap& m, const char* where) {
  if (!m.is_holomorphic()) {
    throw Error(ErrorKind::InvalidArgument, std::string(where) + " needs a holomorphic map");
  }
}

bool is_plus_minus_identity(const MoebiusMap& m, double tol) {
  return std::abs(m.b()) <= tol && std::abs(m.c()) <= tol && std::abs(m.a() - m.d()) <= tol;
}

// Eigenvector for eigenvalue k of [[a,b],[c,d]], the better-conditioned candidate.
std::pair<Complex, Complex> eigenvector(const MoebiusMap& m, Complex k) {
  Complex u1 = m.b(), v1 = k - m.a();
  Complex u2 = k - m.d(), v2 = m.c();
  if (std::norm(u1) + std::norm(v1) >= std::norm(u2) + std::norm(v2)) return {u1, v1};
  return {u2, v2};
}

// Eigenvalue with |k| >= 1; on modulus ties the one with arg in [0, pi].
Complex dominant_eigenvalue(Complex t) {
  Complex s = std::sqrt(t * t - 4.0);
  Complex k = std::abs(t + s) >= std::abs(t - s) ? (t + s) / 2.0 : (t - s) / 2.0;
  if (std::abs(std::log(std::abs(k))) < kModulusTie && std::arg(k) < 0.0) k = 1.0 / k;
  return k;
}

bool near_parabolic(const MoebiusMap& m) {
  Complex t = m.trace();
  return std::abs(t * t - 4.0) <= kParabolicDisc;
}

// Unit vector with its larger component real and positive.
std::pair<Complex, Complex> canonical_unit(std::pair<Complex, Complex> v) {
  double n = std::sqrt(std::norm(v.first) + std::norm(v.second));
  Complex big = std::abs(v.first) >= std::abs(v.second) ? v.first : v.second;
  Complex phase = std::abs(big) > 0.0 ? big / std::abs(big) : Complex(1.0);
  Complex scale = 1.0 / (n * phase);
  return {v.first * scale, v.second * scale};
}

}  // namespace

SpherePoint SpherePoint::homogeneous(Complex u, Complex v) {
  if (v == Complex(0.0)) return infinity();
  Complex z = u / v;
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return infinity();
  return SpherePoint(z);
}

Complex SpherePoint::value() const {
  if (infinite_) throw Error(ErrorKind::InvalidArgument, "point at infinity has no finite value");
  return z_;
}

std::pair<Complex, Complex> SpherePoint::coords() const {
  if (infinite_) return {1.0, 0.0};
  double n = std::sqrt(1.0 + std::norm(z_));
  return {z_ / n, 1.0 / n};
}

double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
  if (p.is_infinite() && q.is_infinite()) return 0.0;
  if (p.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(q.value()));
  if (q.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(p.value()));
  Complex a = p.value(), b = q.value();
  return 2.0 * std::abs(a - b) / std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d, Orientation o) : o_(o) {
  Complex det = a * d - b * c;
  double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (!(std::abs(det) > 1e-300) || !(std::abs(det) > 1e-28 * scale * scale)) {
    throw Error(ErrorKind::InvalidArgument, "singular matrix");
  }
  Complex s = std::sqrt(det);
  a_ = a / s;
  b_ = b / s;
  c_ = c / s;
  d_ = d / s;
}

MoebiusMap MoebiusMap::unimodular(Complex a, Complex b, Complex c, Complex d, Orientation o) {
  MoebiusMap m;
  m.a_ = a;
  m.b_ = b;
  m.c_ = c;
  m.d_ = d;
  m.o_ = o;
  return m;
}

MoebiusMap MoebiusMap::inverse() const {
  if (is_holomorphic()) return unimodular(d_, -b_, -c_, a_);
  return unimodular(std::conj(d_), -std::conj(b_), -std::conj(c_), std::conj(a_), o_);
}

MoebiusMap MoebiusMap::operator-() const { return unimodular(-a_, -b_, -c_, -d_, o_); }

SpherePoint MoebiusMap::operator()(const SpherePoint& p) const {
  auto [u, v] = p.coords();
  if (!is_holomorphic()) {
    u = std::conj(u);
    v = std::conj(v);
  }
  return SpherePoint::homogeneous(a_ * u + b_ * v, c_ * u + d_ * v);
}

double MoebiusMap::distance(const MoebiusMap& other) const {
  if (o_ != other.o_) return std::numeric_limits<double>::infinity();
  return std::max({std::abs(a_ - other.a_), std::abs(b_ - other.b_), std::abs(c_ - other.c_),
                   std::abs(d_ - other.d_)});
}

double MoebiusMap::projective_distance(const MoebiusMap& other) const {
  return std::min(distance(other), distance(-other));
}

double MoebiusMap::norm() const {
  return std::max({std::abs(a_), std::abs(b_), std::abs(c_), std::abs(d_)});
}

MoebiusMap operator*(const MoebiusMap& l, const MoebiusMap& r) {
  Complex ra = r.a_, rb = r.b_, rc = r.c_, rd = r.d_;
  if (!l.is_holomorphic()) {
    ra = std::conj(ra);
    rb = std::conj(rb);
    rc = std::conj(rc);
    rd = std::conj(rd);
  }
  Orientation o = (l.o_ == r.o_) ? Orientation::holomorphic : Orientation::antiholomorphic;
  return MoebiusMap::unimodular(l.a_ * ra + l.b_ * rc, l.a_ * rb + l.b_ * rd,
                                l.c_ * ra + l.d_ * rc, l.c_ * rb + l.d_ * rd, o);
}

const char* to_string(IsometryKind kind) {
  switch (kind) {
    case IsometryKind::identity: return "identity";
    case IsometryKind::parabolic: return "parabolic";
    case IsometryKind::elliptic: return "elliptic";
    case IsometryKind::purely_hyperbolic: return "purely-hyperbolic";
    case IsometryKind::loxodromic: return "loxodromic";
  }
  return "unknown";
}

IsometryClass classify(const MoebiusMap& m, double tol) {
  require_holomorphic(m, "classify");
  Complex t = m.trace();
  if (std::abs(t - 2.0) <= tol || std::abs(t + 2.0) <= tol) {
    if (is_plus_minus_identity(m, tol)) return {IsometryKind::identity};
    return {IsometryKind::parabolic};
  }
  if (std::abs(t.imag()) <= tol) {
    if (std::abs(t.real()) < 2.0) return {IsometryKind::elliptic};
    return {IsometryKind::purely_hyperbolic};
  }
  return {IsometryKind::loxodromic};
}

ComplexLength complex_length(const MoebiusMap& m) {
  require_holomorphic(m, "complex_length");
  if (near_parabolic(m)) {
    throw Error(ErrorKind::ParabolicOrIdentity, "complex length undefined for trace +-2");
  }
  Complex k = dominant_eigenvalue(m.trace());
  Complex lambda = 2.0 * std::log(k);
  int sign = 1;
  if (lambda.imag() > kPi) {
    lambda -= Complex(0.0, 2.0 * kPi);
    sign = -1;
  } else if (lambda.imag() <= -kPi) {
    lambda += Complex(0.0, 2.0 * kPi);
    sign = -1;
  }
  return {lambda, sign};
}

Complex complex_length_near(const MoebiusMap& m, Complex reference) {
  Complex base = complex_length(m).value;
  Complex best = base;
  double best_d = std::numeric_limits<double>::infinity();
  for (int s : {1, -1}) {
    Complex l = static_cast<double>(s) * base;
    double n = std::round((reference.imag() - l.imag()) / (2.0 * kPi));
    Complex cand = l + Complex(0.0, 2.0 * kPi * n);
    double dist = std::abs(cand - reference);
    if (dist < best_d) {
      best_d = dist;
      best = cand;
    }
  }
  return best;
}

std::pair<SpherePoint, SpherePoint> fixed_points(const MoebiusMap& m) {
  require_holomorphic(m, "fixed_points");
  double scale = std::max(1.0, m.norm());
  if (is_plus_minus_identity(m, 1e-14 * scale)) {
    throw Error(ErrorKind::IdentityInput, "every point is fixed");
  }
  if (near_parabolic(m)) {
    auto [u, v] = eigenvector(m, m.trace() / 2.0);
    SpherePoint p = SpherePoint::homogeneous(u, v);
    return {p, p};
  }
  Complex k = dominant_eigenvalue(m.trace());
  auto [u1, v1] = eigenvector(m, k);
  auto [u2, v2] = eigenvector(m, 1.0 / k);
  return {SpherePoint::homogeneous(u1, v1), SpherePoint::homogeneous(u2, v2)};
}

MoebiusMap normalize_to_axis(const MoebiusMap& m) {
  require_holomorphic(m, "normalize_to_axis");
  if (near_parabolic(m)) {
    throw Error(ErrorKind::ParabolicOrIdentity, "no axis for parabolic or identity map");
  }
  Complex k = dominant_eigenvalue(m.trace());
  auto v1 = canonical_unit(eigenvector(m, k));
  auto v2 = canonical_unit(eigenvector(m, 1.0 / k));
  // V = [v1 v2]; g = V^-1 scaled to determinant 1.
  Complex det = v1.first * v2.second - v2.first * v1.second;
  Complex s = std::sqrt(det);
  return MoebiusMap::unimodular(v2.second / s, -v2.first / s, -v1.second / s, v1.first / s);
}

MoebiusMap parabolic_canonical_form(Complex u) {
  return MoebiusMap::unimodular(u / 2.0, (u * u - 4.0) / 2.0, 0.5, u / 2.0);
}

CanonicalPair commuting_canonical_pair(Complex u, Complex h) {
  if (h == Complex(0.0)) throw Error(ErrorKind::ZeroMultiplier, "h must be nonzero");
  Complex v = std::sqrt(4.0 + h * h * (u * u - 4.0));
  if (v.real() < 0.0 || (v.real() == 0.0 && v.imag() < 0.0)) v = -v;
  MoebiusMap a = parabolic_canonical_form(u);
  MoebiusMap b = MoebiusMap::unimodular(v / 2.0, h * (u * u - 4.0) / 2.0, h / 2.0, v / 2.0);
  return {a, b, v};
}

MoebiusMap rotation_about_axis(const MoebiusMap& m, double psi) {
  MoebiusMap g = normalize_to_axis(m);
  Complex w = std::polar(1.0, psi / 2.0);
  return g.inverse() * MoebiusMap::unimodular(w, 0.0, 0.0, 1.0 / w) * g;
}

Eigen::Matrix2cd to_matrix(const MoebiusMap& m) {
  Eigen::Matrix2cd out;
  out << m.a(), m.b(), m.c(), m.d();
  return out;
}

}  // namespace pleat
