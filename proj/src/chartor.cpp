#include "pleat/chartor.hpp"

#include <cmath>

#include "pleat/error.hpp"

namespace pleat {

namespace {

// Below this |x^2 - 4| the diagonal normalization loses too many digits.
constexpr double kCompanionSwitch = 0.5;

RepPair axis_diagonal(const TraceCoords& t) {
  Complex s0 = std::sqrt(t.x * t.x - 4.0);
  Complex k = std::abs(t.x + s0) >= std::abs(t.x - s0) ? (t.x + s0) / 2.0 : (t.x - s0) / 2.0;
  Complex p = (t.z - t.y / k) / (k - 1.0 / k);
  Complex s = t.y - p;
  Complex q = std::sqrt(p * s - 1.0);
  return {MoebiusMap::unimodular(k, 0.0, 0.0, 1.0 / k), MoebiusMap::unimodular(p, q, q, s), t,
          Normalization::axis_diagonal};
}

RepPair companion(const TraceCoords& t) {
  // sigma + 1/sigma = -z, the root of larger modulus.
  Complex disc = std::sqrt(t.z * t.z - 4.0);
  Complex s1 = (-t.z + disc) / 2.0, s2 = (-t.z - disc) / 2.0;
  Complex sigma = std::abs(s1) >= std::abs(s2) ? s1 : s2;
  if (std::abs(sigma) == 0.0) {
    throw Error(ErrorKind::DegenerateNormalization, "companion normalization is singular");
  }
  return {MoebiusMap::unimodular(t.x, 1.0, -1.0, 0.0),
          MoebiusMap::unimodular(0.0, sigma, -1.0 / sigma, t.y), t, Normalization::companion};
}

}  // namespace

Complex commutator_trace(const TraceCoords& t) {
  return t.x * t.x + t.y * t.y + t.z * t.z - t.x * t.y * t.z - 2.0;
}

TraceCoords normalize_lift(const TraceCoords& t) {
  TraceCoords out = t;
  if (out.x.real() < 0.0) {
    out.x = -out.x;
    out.z = -out.z;
  }
  if (out.y.real() < 0.0) {
    out.y = -out.y;
    out.z = -out.z;
  }
  return out;
}

RepPair matrices_from_traces(const TraceCoords& t) {
  if (std::abs(commutator_trace(t) - 2.0) < kReducibleTol) {
    throw Error(ErrorKind::ReducibleLocus, "commutator trace is 2");
  }
  if (std::abs(t.x * t.x - 4.0) >= kCompanionSwitch) {
    RepPair r = axis_diagonal(t);
    if (std::isfinite(r.b.norm())) return r;
  }
  return companion(t);
}

MoebiusMap evaluate(const RepPair& r, const Word& w) {
  return evaluate_word(w, [&](char c) {
    if (c == 'a') return r.a;
    if (c == 'b') return r.b;
    throw Error(ErrorKind::InvalidArgument, std::string("letter outside {a,b}: ") + c);
  });
}

Complex trace_of_word(const RepPair& r, const Word& w) { return evaluate(r, w).trace(); }

const char* to_string(Marking m) {
  switch (m) {
    case Marking::a_top: return "a_top";
    case Marking::a_bottom: return "a_bottom";
    case Marking::fuchsian: return "fuchsian";
  }
  return "unknown";
}

double fuchsian_discriminant(double x, double y) { return x * x * y * y - 4.0 * (x * x + y * y); }

std::vector<PleatingCandidate> pleating_candidates(double x, double y) {
  double d = fuchsian_discriminant(x, y);
  double h = x * y / 2.0;
  if (d >= 0.0) {
    double r = std::sqrt(d) / 2.0;
    return {{{x, y, h + r}, Marking::fuchsian}, {{x, y, h - r}, Marking::fuchsian}};
  }
  double r = std::sqrt(-d) / 2.0;
  return {{{x, y, Complex(h, r)}, Marking::a_top}, {{x, y, Complex(h, -r)}, Marking::a_bottom}};
}

TraceCoords pleating_point(double x, double y) {
  double d = fuchsian_discriminant(x, y);
  if (d > 0.0) throw Error(ErrorKind::InvalidArgument, "Fuchsian pair: both roots real");
  return {x, y, Complex(x * y / 2.0, std::sqrt(-d) / 2.0)};
}

TraceCoords pleating_point_from_lengths(double la, double lb) {
  return pleating_point(2.0 * std::cosh(la / 2.0), 2.0 * std::cosh(lb / 2.0));
}

TraceCoords maximal_cusp() { return {2.0, 2.0, Complex(2.0, 2.0)}; }

const char* to_string(Curve c) {
  switch (c) {
    case Curve::a: return "a";
    case Curve::b: return "b";
    case Curve::commutator: return "commutator";
  }
  return "unknown";
}

const char* to_string(SideLabel s) {
  switch (s) {
    case SideLabel::top: return "top";
    case SideLabel::bottom: return "bottom";
    case SideLabel::annulus: return "annulus";
  }
  return "unknown";
}

CurveSystem curve_system(const TraceCoords& t, double parabolic_tol) {
  auto parabolic_trace = [&](Complex tr) {
    return std::abs(tr - 2.0) < parabolic_tol || std::abs(tr + 2.0) < parabolic_tol;
  };
  return {{{
      {Curve::a, Word("a"), SideLabel::top, parabolic_trace(t.x)},
      {Curve::b, Word("b"), SideLabel::bottom, parabolic_trace(t.y)},
      {Curve::commutator, Word("abAB"), SideLabel::annulus,
       std::abs(commutator_trace(t) + 2.0) < parabolic_tol},
  }}};
}

}  // namespace pleat
