#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "pleat/error.hpp"
#include "pleat/moebius.hpp"

using namespace pleat;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex I(0.0, 1.0);

MoebiusMap diag(Complex k) { return MoebiusMap::unimodular(k, 0.0, 0.0, 1.0 / k); }

MoebiusMap random_sl2(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  for (;;) {
    Complex a(g(rng), g(rng)), b(g(rng), g(rng)), c(g(rng), g(rng));
    if (std::abs(a) < 0.2) continue;
    return MoebiusMap::unimodular(a, b, c, (1.0 + b * c) / a);
  }
}

bool same_up_to_sign(const MoebiusMap& m, const MoebiusMap& n, double tol) {
  return m.distance(n) < tol || m.distance(-n) < tol;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Classify, BasicKinds) {
  EXPECT_EQ(classify(MoebiusMap::identity()).kind, IsometryKind::identity);
  EXPECT_EQ(classify(-MoebiusMap::identity()).kind, IsometryKind::identity);
  EXPECT_EQ(classify(MoebiusMap(1, 1, 0, 1)).kind, IsometryKind::parabolic);
  EXPECT_EQ(classify(diag(std::exp(0.5))).kind, IsometryKind::purely_hyperbolic);
  EXPECT_EQ(classify(diag(std::exp(0.3 * I))).kind, IsometryKind::elliptic);
  EXPECT_EQ(classify(diag(std::exp(Complex(0.5, 0.3)))).kind, IsometryKind::loxodromic);
}

TEST(ComplexLength, Diagonal) {
  ComplexLength cl = complex_length(diag(std::exp(0.5)));
  EXPECT_NEAR(std::abs(cl.value - 1.0), 0.0, 1e-14);
  EXPECT_EQ(cl.lift_sign, 1);
}

TEST(ComplexLength, PureRotation) {
  Complex v = complex_length(diag(std::exp(0.3 * I))).value;
  EXPECT_NEAR(std::abs(v - 0.6 * I), 0.0, 1e-14);
}

TEST(ComplexLength, ParabolicRejected) {
  EXPECT_EQ(kind_of([] { complex_length(MoebiusMap(1, 1, 0, 1)); }), ErrorKind::ParabolicOrIdentity);
  EXPECT_EQ(kind_of([] { complex_length(MoebiusMap::identity()); }), ErrorKind::ParabolicOrIdentity);
}

TEST(ComplexLength, AgreesWithEigenvalues) {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 500; ++n) {
    MoebiusMap m = random_sl2(rng);
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(to_matrix(m));
    double big = std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(1)));
    ComplexLength cl = complex_length(m);
    EXPECT_NEAR(cl.value.real(), 2.0 * std::log(big), 1e-10);
    EXPECT_GT(cl.value.imag(), -kPi - 1e-12);
    EXPECT_LE(cl.value.imag(), kPi + 1e-12);
    EXPECT_LT(std::abs(2.0 * std::cosh(cl.value / 2.0) - double(cl.lift_sign) * m.trace()), 1e-10);
  }
}

TEST(FixedPoints, Examples) {
  auto [p, q] = fixed_points(MoebiusMap(2, 0, 0, 0.5));
  EXPECT_TRUE(p.is_infinite());
  EXPECT_NEAR(std::abs(q.value()), 0.0, 1e-15);

  auto [s, t] = fixed_points(MoebiusMap(1, 1, 0, 1));
  EXPECT_TRUE(s.is_infinite());
  EXPECT_TRUE(t.is_infinite());

  // Rotation by pi: both fixed points are neutral; ordered by the dominant eigenvalue.
  auto [u, v] = fixed_points(MoebiusMap(0, 1, -1, 0));
  EXPECT_LT(std::abs(u.value() + I), 1e-14);
  EXPECT_LT(std::abs(v.value() - I), 1e-14);

  EXPECT_EQ(kind_of([] { fixed_points(MoebiusMap::identity()); }), ErrorKind::IdentityInput);
}

TEST(FixedPoints, RandomAreFixedAndAttractingFirst) {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 200; ++n) {
    MoebiusMap m = random_sl2(rng);
    auto [p, q] = fixed_points(m);
    EXPECT_LT(chordal_distance(m(p), p), 1e-10);
    EXPECT_LT(chordal_distance(m(q), q), 1e-10);
    if (!p.is_infinite() && classify(m).kind == IsometryKind::loxodromic) {
      Complex w = m.c() * p.value() + m.d();
      EXPECT_LE(std::abs(1.0 / (w * w)), 1.0 + 1e-9);
    }
  }
}

TEST(NormalizeToAxis, Diagonal) {
  EXPECT_TRUE(same_up_to_sign(normalize_to_axis(MoebiusMap(2, 0, 0, 0.5)), MoebiusMap::identity(), 1e-14));
}

TEST(NormalizeToAxis, RandomDiagonalizes) {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 200; ++n) {
    MoebiusMap m = random_sl2(rng);
    if (std::abs(m.trace() * m.trace() - 4.0) < 1e-3) continue;
    MoebiusMap g = normalize_to_axis(m);
    MoebiusMap d = g * m * g.inverse();
    EXPECT_LT(std::abs(d.b()), 1e-10);
    EXPECT_LT(std::abs(d.c()), 1e-10);
  }
  EXPECT_EQ(kind_of([] { normalize_to_axis(MoebiusMap(1, 1, 0, 1)); }), ErrorKind::ParabolicOrIdentity);
}

TEST(ParabolicCanonicalForm, Examples) {
  MoebiusMap p2 = parabolic_canonical_form(2.0);
  EXPECT_LT(p2.distance(MoebiusMap::unimodular(1, 0, 0.5, 1)), 1e-15);
  EXPECT_EQ(classify(p2).kind, IsometryKind::parabolic);
  MoebiusMap p3 = parabolic_canonical_form(3.0);
  EXPECT_LT(p3.distance(MoebiusMap::unimodular(1.5, 2.5, 0.5, 1.5)), 1e-15);
  EXPECT_EQ(classify(p3).kind, IsometryKind::purely_hyperbolic);
  for (Complex u : {Complex(0.3, 2.0), Complex(-4.0, 1.0), Complex(17.0)}) {
    EXPECT_LT(std::abs(parabolic_canonical_form(u).det() - 1.0), 1e-12);
  }
}

TEST(CommutingCanonicalPair, Examples) {
  CanonicalPair p = commuting_canonical_pair(3.0, 2.0);
  EXPECT_NEAR(std::abs(p.v - std::sqrt(24.0)), 0.0, 1e-12);
  EXPECT_LT(std::abs(4.0 * (9.0 - 4.0) - (p.v * p.v - 4.0)), 1e-12);
  EXPECT_NEAR(std::abs(p.b.trace() - p.v), 0.0, 1e-12);

  CanonicalPair q = commuting_canonical_pair(2.0, 1.0);
  EXPECT_NEAR(std::abs(q.v - 2.0), 0.0, 1e-15);
  EXPECT_EQ(classify(q.b).kind, IsometryKind::parabolic);
  EXPECT_EQ(kind_of([] { commuting_canonical_pair(3.0, 0.0); }), ErrorKind::ZeroMultiplier);
}

TEST(CommutingCanonicalPair, Commutes) {
  for (Complex u : {Complex(2.0), Complex(2.5, 0.3), Complex(-1.0, 2.0)}) {
    for (Complex h : {Complex(1.0), Complex(0.2, -0.7), Complex(3.0, 1.0)}) {
      CanonicalPair p = commuting_canonical_pair(u, h);
      Eigen::Matrix2cd ab = to_matrix(p.a) * to_matrix(p.b), ba = to_matrix(p.b) * to_matrix(p.a);
      EXPECT_LT((ab - ba).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(RotationAboutAxis, Examples) {
  MoebiusMap m(2, 0, 0, 0.5);
  EXPECT_TRUE(same_up_to_sign(rotation_about_axis(m, kPi), MoebiusMap(I, 0, 0, -I), 1e-14));
  EXPECT_TRUE(same_up_to_sign(rotation_about_axis(m, 0.0), MoebiusMap::identity(), 1e-14));
  std::mt19937_64 rng(5);
  for (int n = 0; n < 50; ++n) {
    MoebiusMap r = random_sl2(rng);
    if (std::abs(r.trace() * r.trace() - 4.0) < 1e-3) continue;
    MoebiusMap e = rotation_about_axis(r, 0.1 * n);
    EXPECT_LT((e * r).distance(r * e), 1e-12);
  }
}

TEST(MoebiusMap, CompositionMatchesEvaluation) {
  std::mt19937_64 rng(9);
  MoebiusMap conj = MoebiusMap(1, 0, 0, 1, Orientation::antiholomorphic);
  for (int n = 0; n < 100; ++n) {
    MoebiusMap f = random_sl2(rng), g = random_sl2(rng);
    if (n % 2) f = f * conj;
    if (n % 3 == 0) g = conj * g;
    Complex z(0.3 * n - 2.0, 1.0 - 0.05 * n);
    EXPECT_LT(chordal_distance((f * g)(z), f(g(z))), 1e-10);
    EXPECT_LT(chordal_distance((f * f.inverse())(z), z), 1e-10);
  }
  EXPECT_LT(chordal_distance(conj(Complex(1.0, 2.0)), Complex(1.0, -2.0)), 1e-15);
}

TEST(SpherePoint, Infinity) {
  MoebiusMap inv(0, 1, 1, 0);
  EXPECT_TRUE(inv(SpherePoint(0.0)).is_infinite());
  EXPECT_LT(std::abs(inv(SpherePoint::infinity()).value()), 1e-15);
  EXPECT_TRUE(SpherePoint::homogeneous(1.0, 0.0).is_infinite());
  EXPECT_NEAR(chordal_distance(SpherePoint::infinity(), SpherePoint(0.0)), 2.0, 1e-15);
}
