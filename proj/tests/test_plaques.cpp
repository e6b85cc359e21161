#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pleat/error.hpp"
#include "pleat/plaques.hpp"

using namespace pleat;

namespace {

constexpr double kPi = std::numbers::pi;

// Concyclicity as |Im| of the cross ratio, written out directly.
double im_cross_ratio(Complex p, Complex q, Complex r, Complex s) {
  return std::abs((((s - p) * (q - r)) / ((s - r) * (q - p))).imag());
}

// Dihedral angle between the plaque circle and its translate, at a point on both.
double translate_angle(const RepPair& r, Side side) {
  Plaque pl = plaque_circle(r, side);
  MoebiusMap g = evaluate(r, pl.translate);
  SphereCircle other = pl.circle.transformed(g);
  MoebiusMap curve = side == Side::top ? r.a : r.b;
  for (const MoebiusMap& m : {curve, g * curve * g.inverse()}) {
    auto [p, q] = fixed_points(m);
    for (const SpherePoint& s : {p, q}) {
      if (pl.circle.distance(s) < 1e-8 && other.distance(s) < 1e-8) {
        return angle_between_circles(pl.circle, other, s);
      }
    }
  }
  ADD_FAILURE() << "no common fixed point";
  return -1.0;
}

}  // namespace

TEST(PlaqueCircle, FuchsianIsReal) {
  RepPair r = matrices_from_traces({3, 3, 3});
  Plaque p = plaque_circle(r, Side::top);
  EXPECT_LT(p.planarity_residual, 1e-12);
  for (const auto& s : p.points) {
    if (!s.is_infinite()) EXPECT_LT(std::abs(s.value().imag()), 1e-12);
  }
}

TEST(PlaqueCircle, CertifiedPointIsPlanar) {
  RepPair r = matrices_from_traces(pleating_point(2.2, 2.2));
  for (Side side : {Side::top, Side::bottom}) {
    Plaque p = plaque_circle(r, side);
    EXPECT_LT(p.planarity_residual, 1e-9);
    ASSERT_GE(p.points.size(), 4u);
    // Move every point off infinity first; Moebius maps preserve concyclicity.
    MoebiusMap g = MoebiusMap::unimodular(1.0, Complex(0.0, 0.3), Complex(0.2, 0.1), Complex(1.0, 0.06));
    std::vector<Complex> z;
    for (const auto& s : p.points) z.push_back(g(s).value());
    for (std::size_t k = 3; k < z.size(); ++k) EXPECT_LT(im_cross_ratio(z[0], z[1], z[2], z[k]), 1e-9);
  }
}

TEST(PlaqueCircle, NonRealTracesRejected) {
  RepPair r = matrices_from_traces({Complex(2.2, 0.1), 2.3, Complex(2.5, 1.0)});
  try {
    plaque_circle(r, Side::top);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonRealTraces);
  }
}

TEST(BendingAngle, FuchsianIsFlat) {
  RepPair r = matrices_from_traces({3, 3, 3});
  EXPECT_NEAR(bending_angle_unchecked(r, Curve::a), 0.0, 1e-10);
  EXPECT_NEAR(bending_angle_unchecked(r, Curve::b), 0.0, 1e-10);
}

TEST(BendingAngle, MatchesDihedralAngleOfTranslates) {
  for (double x : {2.1, 2.3, 2.6}) {
    for (double y : {2.15, 2.4}) {
      RepPair r = matrices_from_traces(pleating_point(x, y));
      double ta = bending_angle(r, Curve::a), tb = bending_angle(r, Curve::b);
      double alpha = translate_angle(r, Side::top), beta = translate_angle(r, Side::bottom);
      EXPECT_LT(std::min(std::abs(ta - alpha), std::abs(ta - (kPi - alpha))), 1e-8) << x << "," << y;
      EXPECT_LT(std::min(std::abs(tb - beta), std::abs(tb - (kPi - beta))), 1e-8) << x << "," << y;
    }
  }
}

TEST(BendingAngle, QuakebendAngleOnGenericFuchsianSeed) {
  // Bending (3,3,3) along a: the top plaque stays planar and bends by exactly t,
  // but b leaves the real-trace locus.
  RepPair r = quakebend_rep(matrices_from_traces({3, 3, 3}), Curve::a, 0.1);
  EXPECT_NEAR(std::abs(commutator_trace(r.traces) + 2.0), 0.0, 1e-12);
  EXPECT_NEAR(bending_angle_unchecked(r, Curve::a), 0.1, 1e-6);
  EXPECT_GT(std::abs(r.traces.y.imag()), 1e-3);
  EXPECT_FALSE(certify(r.traces).is_piecewise_geodesic);
}

TEST(BendingAngle, ExplicitBendOfRectangularSeed) {
  for (double t : {0.05, 0.1, 0.2, 0.3}) {
    TraceCoords q = quakebend(rectangular_seed(2.5), Curve::a, t);
    EXPECT_NEAR(std::abs(commutator_trace(q) + 2.0), 0.0, 1e-12);
    Certification c = certify(q);
    EXPECT_TRUE(c.is_piecewise_geodesic);
    EXPECT_TRUE(c.is_convex);
    EXPECT_NEAR(c.theta(Curve::a), t, 1e-6);
  }
}

TEST(BendingAngle, MirrorRootSwapsSides) {
  auto cands = pleating_candidates(2.3, 2.5);
  Certification top = certify(cands[0].coords), bottom = certify(cands[1].coords);
  ASSERT_TRUE(top.is_convex);
  ASSERT_TRUE(bottom.is_convex);
  EXPECT_NEAR(top.theta(Curve::a), bottom.theta(Curve::a), 1e-10);
  EXPECT_NEAR(top.theta(Curve::b), bottom.theta(Curve::b), 1e-10);
  EXPECT_EQ(top.curve(Curve::a).side, SideLabel::top);
  EXPECT_EQ(bottom.curve(Curve::a).side, SideLabel::bottom);
  EXPECT_EQ(top.curve(Curve::b).side, SideLabel::bottom);
  EXPECT_EQ(bottom.curve(Curve::b).side, SideLabel::top);
}

TEST(Certify, MaximalCusp) {
  Certification c = certify(maximal_cusp());
  EXPECT_TRUE(c.is_convex);
  EXPECT_NEAR(c.theta(Curve::a), kPi, 1e-12);
  EXPECT_NEAR(c.theta(Curve::b), kPi, 1e-12);
  EXPECT_NEAR(c.theta(Curve::commutator), kPi, 1e-12);
}

TEST(Certify, FuchsianBoundaryCase) {
  Certification c = certify({3, 3, 3});
  EXPECT_TRUE(c.real_traces);
  EXPECT_TRUE(c.is_fuchsian);
  EXPECT_FALSE(c.is_convex);
  EXPECT_NEAR(c.theta(Curve::a), 0.0, 1e-10);
  EXPECT_NE(c.reason.find("Fuchsian"), std::string::npos);
}

TEST(Certify, GenericPoint) {
  Certification c = certify({2.2, 2.2, Complex(2.42, std::sqrt(15.2944) / 2.0)});
  EXPECT_TRUE(c.is_convex);
  EXPECT_GT(c.theta(Curve::a), 0.0);
  EXPECT_LT(c.theta(Curve::a), kPi);
  EXPECT_NEAR(c.theta(Curve::a), c.theta(Curve::b), 1e-10);
  EXPECT_NEAR(c.theta(Curve::commutator), kPi, 1e-15);
}

TEST(Certify, OffLocusIsNotPiecewiseGeodesic) {
  Certification c = certify({Complex(2.2, 0.1), 2.3, Complex(2.5, 1.0)});
  EXPECT_FALSE(c.real_traces);
  EXPECT_FALSE(c.is_piecewise_geodesic);
  EXPECT_FALSE(c.is_convex);
}

TEST(Certify, FuchsianDegeneration) {
  double prev = kPi;
  for (int k = 1; k <= 8; ++k) {
    double s = std::sqrt(8.0 - std::pow(10.0, -k));
    double theta = certify(pleating_point(s, s)).theta(Curve::a);
    EXPECT_LT(theta, prev);
    prev = theta;
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(Certify, ThetaIncreasesTowardCusp) {
  double prev = 0.0;
  for (double s : {2.8, 2.6, 2.4, 2.2, 2.05, 2.001}) {
    double theta = certify(pleating_point(s, s)).theta(Curve::a);
    EXPECT_GT(theta, prev);
    prev = theta;
  }
}

TEST(Quakebend, ZeroIsIdentity) {
  TraceCoords s = rectangular_seed(2.8);
  TraceCoords q = quakebend(s, Curve::a, 0.0);
  EXPECT_NEAR(std::abs(q.x - s.x), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(q.y - s.y), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(q.z - s.z), 0.0, 1e-12);
}

TEST(Quakebend, RejectsNonFuchsian) {
  try {
    quakebend(pleating_point(2.2, 2.2), Curve::a, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFuchsian);
  }
}

TEST(Quakebend, RectangularSeedIsFuchsianWithDoubleRoot) {
  TraceCoords s = rectangular_seed(2.5);
  EXPECT_NEAR(fuchsian_discriminant(s.x.real(), s.y.real()), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(commutator_trace(s) + 2.0), 0.0, 1e-12);
}
