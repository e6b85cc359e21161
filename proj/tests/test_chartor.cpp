#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pleat/chartor.hpp"
#include "pleat/error.hpp"

using namespace pleat;

namespace {

const Complex I(0.0, 1.0);

// Plain 2x2 products as the oracle for word evaluation.
Eigen::Matrix2cd word_matrix(const RepPair& r, const std::string& w) {
  Eigen::Matrix2cd a = to_matrix(r.a), b = to_matrix(r.b);
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Identity();
  for (char c : w) {
    switch (c) {
      case 'a': out = out * a; break;
      case 'A': out = out * a.inverse(); break;
      case 'b': out = out * b; break;
      case 'B': out = out * b.inverse(); break;
    }
  }
  return out;
}

double kappa_residual(const TraceCoords& t) {
  return std::abs(t.x * t.x + t.y * t.y + t.z * t.z - t.x * t.y * t.z - 2.0 + 2.0);
}

}  // namespace

TEST(CommutatorTrace, Examples) {
  EXPECT_NEAR(std::abs(commutator_trace({3, 3, 3}) + 2.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(commutator_trace({2, 2, Complex(2, 2)}) + 2.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(commutator_trace({0, 0, 0}) + 2.0), 0.0, 1e-14);
}

TEST(MatricesFromTraces, Fuchsian) {
  RepPair r = matrices_from_traces({3, 3, 3});
  EXPECT_NEAR(std::abs(word_matrix(r, "abAB").trace() + 2.0), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(word_matrix(r, "a").trace() - 3.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(word_matrix(r, "b").trace() - 3.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(word_matrix(r, "ab").trace() - 3.0), 0.0, 1e-12);
}

TEST(MatricesFromTraces, MaximalCusp) {
  RepPair r = matrices_from_traces({2, 2, Complex(2, 2)});
  EXPECT_NEAR(std::abs(r.a.trace() - 2.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(word_matrix(r, "abAB").trace() + 2.0), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(word_matrix(r, "ab").trace() - Complex(2, 2)), 0.0, 1e-12);
}

TEST(MatricesFromTraces, ReducibleRejected) {
  try {
    matrices_from_traces({2, 2, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ReducibleLocus);
  }
}

TEST(MatricesFromTraces, RandomTracesReproduced) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 2.0);
  for (int n = 0; n < 300; ++n) {
    TraceCoords t{Complex(g(rng), g(rng)), Complex(g(rng), g(rng)), Complex(g(rng), g(rng))};
    if (std::abs(commutator_trace(t) - 2.0) < 1e-3) continue;
    RepPair r = matrices_from_traces(t);
    double scale = 1.0 + std::abs(t.x) + std::abs(t.y) + std::abs(t.z);
    EXPECT_LT(std::abs(word_matrix(r, "a").trace() - t.x), 1e-10 * scale);
    EXPECT_LT(std::abs(word_matrix(r, "b").trace() - t.y), 1e-10 * scale);
    EXPECT_LT(std::abs(word_matrix(r, "ab").trace() - t.z), 1e-10 * scale * scale);
    EXPECT_LT(std::abs(r.a.det() - 1.0), 1e-12);
    EXPECT_LT(std::abs(r.b.det() - 1.0), 1e-12);
  }
}

TEST(MatricesFromTraces, NearParabolicUsesCompanionForm) {
  RepPair r = matrices_from_traces(pleating_point(2.05, 2.3));
  EXPECT_EQ(r.normalization, Normalization::companion);
  RepPair s = matrices_from_traces(pleating_point(2.5, 2.3));
  EXPECT_EQ(s.normalization, Normalization::axis_diagonal);
}

TEST(TraceOfWord, Examples) {
  RepPair f = matrices_from_traces({3, 3, 3});
  EXPECT_NEAR(std::abs(trace_of_word(f, Word("a")) - 3.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(trace_of_word(f, Word("abAB")) + 2.0), 0.0, 1e-10);
  RepPair c = matrices_from_traces({2, 2, Complex(2, 2)});
  EXPECT_NEAR(std::abs(trace_of_word(c, Word("ab")) - Complex(2, 2)), 0.0, 1e-12);
}

TEST(TraceOfWord, AgreesWithMatrixProducts) {
  std::mt19937_64 rng(8);
  RepPair r = matrices_from_traces(pleating_point(2.3, 2.6));
  for (int n = 0; n < 100; ++n) {
    Word w = random_word(rng, "ab", 1 + n % 9);
    Complex oracle = word_matrix(r, w.letters()).trace();
    EXPECT_LT(std::abs(trace_of_word(r, w) - oracle), 1e-9 * (1.0 + std::abs(oracle)));
  }
}

TEST(TraceOfWord, FrickeIdentity) {
  // tr(uv) + tr(uV) = tr(u) tr(v)
  RepPair r = matrices_from_traces({Complex(2.1, 0.4), Complex(1.3, -0.2), Complex(0.7, 1.1)});
  std::mt19937_64 rng(2);
  for (int n = 0; n < 50; ++n) {
    Word u = random_word(rng, "ab", 3), v = random_word(rng, "ab", 4);
    Complex lhs = trace_of_word(r, u * v) + trace_of_word(r, u * v.inverse());
    Complex rhs = trace_of_word(r, u) * trace_of_word(r, v);
    EXPECT_LT(std::abs(lhs - rhs), 1e-8 * (1.0 + std::abs(rhs)));
  }
}

TEST(PleatingCandidates, Examples) {
  auto f = pleating_candidates(3, 3);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_NEAR(std::abs(f[0].coords.z - 6.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(f[1].coords.z - 3.0), 0.0, 1e-12);

  auto p = pleating_candidates(2.2, 2.2);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_NEAR(p[0].coords.z.real(), 2.42, 1e-12);
  EXPECT_NEAR(p[0].coords.z.imag(), std::sqrt(15.2944) / 2.0, 1e-12);
  EXPECT_NEAR(p[1].coords.z.imag(), -std::sqrt(15.2944) / 2.0, 1e-12);
  EXPECT_EQ(p[0].marking, Marking::a_top);
  EXPECT_EQ(p[1].marking, Marking::a_bottom);

  auto c = pleating_candidates(2, 2);
  EXPECT_NEAR(std::abs(c[0].coords.z - Complex(2, 2)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(c[1].coords.z - Complex(2, -2)), 0.0, 1e-14);
}

TEST(PleatingCandidates, SolveTheParabolicCondition) {
  for (double x : {2.01, 2.3, 2.7, 3.5}) {
    for (double y : {2.05, 2.5, 3.1}) {
      for (const auto& c : pleating_candidates(x, y)) EXPECT_LT(kappa_residual(c.coords), 1e-11);
    }
  }
}

TEST(FuchsianDiscriminant, Examples) {
  EXPECT_NEAR(fuchsian_discriminant(3, 3), 9.0, 1e-12);
  EXPECT_NEAR(fuchsian_discriminant(2.2, 2.2), -15.2944, 1e-12);
  EXPECT_NEAR(fuchsian_discriminant(2, 2), -16.0, 1e-12);
}

TEST(MaximalCusp, Value) {
  TraceCoords c = maximal_cusp();
  EXPECT_EQ(c.x, Complex(2.0));
  EXPECT_EQ(c.y, Complex(2.0));
  EXPECT_NEAR(std::abs(c.z * c.z - 4.0 * c.z + 8.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(commutator_trace(c) + 2.0), 0.0, 1e-14);
  EXPECT_GT(c.z.imag(), 0.0);
}

TEST(PleatingPoint, FromLengths) {
  TraceCoords t = pleating_point_from_lengths(0.9, 1.3);
  EXPECT_NEAR(t.x.real(), 2.0 * std::cosh(0.45), 1e-14);
  EXPECT_NEAR(t.y.real(), 2.0 * std::cosh(0.65), 1e-14);
  EXPECT_LT(kappa_residual(t), 1e-12);
  EXPECT_THROW(pleating_point(3.0, 3.0), Error);
}

TEST(NormalizeLift, PositiveRealParts) {
  TraceCoords t = normalize_lift({-2.2, 2.3, Complex(1.0, 2.0)});
  EXPECT_GE(t.x.real(), 0.0);
  EXPECT_GE(t.y.real(), 0.0);
  EXPECT_NEAR(std::abs(t.z + Complex(1.0, 2.0)), 0.0, 1e-15);
}

TEST(CurveSystem, LabelsAndParabolicCommutator) {
  TraceCoords t = pleating_point(2.2, 2.4);
  CurveSystem s = curve_system(t);
  EXPECT_EQ(s.curves[2].side, SideLabel::annulus);
  EXPECT_TRUE(s.curves[2].parabolic);
  EXPECT_FALSE(s.curves[0].parabolic);
  EXPECT_NEAR(std::abs(trace_of_word(matrices_from_traces(t), s.curves[2].word) + 2.0), 0.0, 1e-10);
}

TEST(Word, Reduction) {
  EXPECT_EQ(Word("abBA").str(), "1");
  EXPECT_EQ(Word("aab").inverse(), Word("BAA"));
  EXPECT_EQ((Word("ab") * Word("Ba")).str(), "aa");
  EXPECT_EQ(Word("ab").substitute([](char c) { return c == 'a' ? Word("cd") : Word(std::string(1, c)); }),
            Word("cdb"));
}
