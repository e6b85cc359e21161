#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pleat/doubling.hpp"
#include "pleat/error.hpp"

using namespace pleat;

namespace {

constexpr double kPi = std::numbers::pi;

DoubledHolonomy double_at(const TraceCoords& t) {
  Certification c = certify(t);
  return doubled_holonomy(matrices_from_traces(c.coords), c);
}

double max_relation(const DoubledHolonomy& rho) {
  double worst = 0.0;
  for (const auto& r : build_presentation().relations) worst = std::max(worst, relation_residual(rho, r));
  return worst;
}

const MeridianData& meridian(const std::vector<MeridianData>& m, Curve c) {
  for (const auto& d : m) {
    if (d.curve == c) return d;
  }
  throw std::logic_error("missing meridian");
}

}  // namespace

TEST(Presentation, Combinatorics) {
  DoubledPresentation p = build_presentation();
  EXPECT_EQ(p.generators, "abcde");
  EXPECT_EQ(p.amalgam_relations, 2);
  EXPECT_EQ(p.hnn_relations, 2);
  EXPECT_EQ(p.relations.size(), 4u);
  const MeridianWords& ma = p.meridians[0];
  EXPECT_EQ(ma.curve, Curve::a);
  EXPECT_EQ(ma.dual, Word("b"));
  EXPECT_FALSE(ma.shared);
  // m = dual * mirror(dual)^-1 for an unshared curve
  EXPECT_EQ(ma.meridian, ma.dual * ma.mirror_dual.inverse());
  const MeridianWords& mp = p.meridians[2];
  EXPECT_EQ(mp.curve, Curve::commutator);
  EXPECT_TRUE(mp.shared);
  // The dual of the shared curve crosses it twice: its mirror is conjugated by the meridian.
  EXPECT_EQ(mp.mirror_dual, mp.meridian.inverse() * mp.dual * mp.meridian);
}

TEST(Tau, Involution) {
  EXPECT_EQ(tau(Word("a")), Word("c"));
  EXPECT_EQ(tau(Word("bD")), Word("dB"));
  EXPECT_EQ(tau(Word("e")), Word("E"));
  std::mt19937_64 rng(3);
  for (int n = 0; n < 50; ++n) {
    Word w = random_word(rng, "abcde", 8);
    EXPECT_EQ(tau(tau(w)), w);
  }
}

TEST(DoubledHolonomy, RelationsAtCertifiedPoint) {
  DoubledHolonomy rho = double_at(pleating_point(2.2, 2.2));
  EXPECT_LT(max_relation(rho), 1e-9);
  ASSERT_TRUE(rho.j.has_value());
  EXPECT_FALSE(rho.j->is_holomorphic());
  EXPECT_LT((*rho.j * *rho.j).projective_distance(MoebiusMap::identity()), 1e-12);
  EXPECT_LT((*rho.j1 * *rho.j1).projective_distance(MoebiusMap::identity()), 1e-12);
}

TEST(DoubledHolonomy, FuchsianIsMirrorTrivial) {
  DoubledHolonomy rho = double_at({3, 3, 3});
  EXPECT_LT(max_relation(rho), 1e-9);
  EXPECT_LT(rho(Word("c")).projective_distance(rho(Word("a"))), 1e-10);
  EXPECT_LT(rho(Word("d")).projective_distance(rho(Word("b"))), 1e-10);
  for (const auto& m : meridian_data(rho)) {
    EXPECT_TRUE(m.trivial);
    EXPECT_NEAR(m.cone_angle, 2.0 * kPi, 1e-12);
  }
}

TEST(DoubledHolonomy, MaximalCuspMeridiansParabolic) {
  DoubledHolonomy rho = double_at(maximal_cusp());
  EXPECT_LT(max_relation(rho), 1e-9);
  for (const auto& m : meridian_data(rho)) {
    EXPECT_TRUE(m.parabolic) << to_string(m.curve);
    EXPECT_NEAR(std::abs(m.trace * m.trace - 4.0), 0.0, 1e-8);
  }
}

TEST(MeridianData, ThirdOfPiBend) {
  TraceCoords q = quakebend(rectangular_seed(2.5), Curve::a, kPi / 3);
  Certification c = certify(q);
  ASSERT_TRUE(c.is_convex);
  ASSERT_NEAR(c.theta(Curve::a), kPi / 3, 1e-9);
  auto m = meridian_data(doubled_holonomy(matrices_from_traces(c.coords), c));
  EXPECT_NEAR(std::abs(meridian(m, Curve::a).trace), 1.0, 1e-8);
  EXPECT_NEAR(meridian(m, Curve::a).cone_angle, 4.0 * kPi / 3.0, 1e-8);
}

TEST(MeridianData, ConeAnglesAndTraces) {
  for (double x : {2.1, 2.4}) {
    for (double y : {2.2, 2.6}) {
      TraceCoords t = pleating_point(x, y);
      Certification c = certify(t);
      auto m = meridian_data(doubled_holonomy(matrices_from_traces(c.coords), c));
      for (Curve k : {Curve::a, Curve::b}) {
        const MeridianData& d = meridian(m, k);
        ASSERT_TRUE(d.mu.has_value());
        EXPECT_LT(std::abs(d.mu->value.real()), 1e-8);
        // Elliptic meridian of rotation angle 2(pi - theta).
        EXPECT_NEAR(std::abs(d.trace.real()), 2.0 * std::abs(std::cos(kPi - c.theta(k))), 1e-9);
        EXPECT_NEAR(d.cone_angle, 2.0 * (kPi - c.theta(k)), 1e-6);
        EXPECT_LT(d.commutation_residual, 1e-9);
      }
      const MeridianData& p = meridian(m, Curve::commutator);
      EXPECT_NEAR(std::abs(std::abs(p.trace.real()) - 2.0), 0.0, 1e-8);
      EXPECT_NEAR(p.trace.imag(), 0.0, 1e-8);
    }
  }
}

TEST(SymmetryAudit, RandomWords) {
  DoubledHolonomy rho = double_at(pleating_point(2.3, 2.5));
  std::mt19937_64 rng(12);
  std::vector<Word> words;
  for (int n = 0; n < 100; ++n) words.push_back(random_word(rng, "abcde", 1 + n % 10));
  EXPECT_LT(symmetry_audit(rho, words), 1e-8);
  // Direct check of a few words against the definition.
  for (int n = 0; n < 10; ++n) {
    Complex t = rho(words[n]).trace(), s = rho(tau(words[n])).trace();
    EXPECT_LT(std::abs(s - std::conj(t)), 1e-8);
  }
  EXPECT_LT(std::abs(rho(Word("a")).trace().imag()), 1e-9);
}

TEST(SymmetryAudit, FuchsianIsReal) {
  DoubledHolonomy rho = double_at({3, 3, 3});
  std::mt19937_64 rng(1);
  std::vector<Word> words;
  for (int n = 0; n < 50; ++n) words.push_back(random_word(rng, "abcde", 6));
  EXPECT_LT(symmetry_audit(rho, words), 1e-10);
}

TEST(LiftAudit, ConsistentLifts) {
  LiftReport r = lift_audit(double_at(pleating_point(2.2, 2.4)));
  EXPECT_TRUE(r.consistent);
  EXPECT_LT(r.max_residual, 1e-9);
  LiftReport f = lift_audit(double_at({3, 3, 3}));
  EXPECT_TRUE(f.consistent);
  EXPECT_EQ(f.signs, (std::array<int, 3>{1, 1, 1}));
}

TEST(ExtendHolonomy, MatchesGeometricDouble) {
  TraceCoords t = pleating_point(2.3, 2.5);
  DoubledHolonomy geo = double_at(t);
  DoubledHolonomy alg = extend_holonomy(matrices_from_traces(certify(t).coords), geo(Word("e")).trace());
  EXPECT_LT(max_relation(alg), 1e-9);
  std::mt19937_64 rng(6);
  for (int n = 0; n < 30; ++n) {
    Word w = random_word(rng, "abcde", 6);
    Complex g = geo(w).trace(), a = alg(w).trace();
    EXPECT_LT(std::min(std::abs(g - a), std::abs(g + a)), 1e-8 * (1.0 + std::abs(g)));
  }
}

TEST(ExtendHolonomy, ParabolicAxisRejected) {
  EXPECT_THROW(extend_holonomy(matrices_from_traces(maximal_cusp())), Error);
}
