#pragma once

#include <array>
#include <vector>

#include "pleat/moebius.hpp"
#include "pleat/word.hpp"

namespace pleat {

// Traces of sigma(a), sigma(b), sigma(ab).
struct TraceCoords {
  Complex x;
  Complex y;
  Complex z;
};

// x^2 + y^2 + z^2 - xyz - 2, the trace of the commutator.
Complex commutator_trace(const TraceCoords& t);

// Representative of the lift class with Re x >= 0 and Re y >= 0.
TraceCoords normalize_lift(const TraceCoords& t);

enum class Normalization {
  axis_diagonal,  // A = diag(k, 1/k), B symmetric
  companion,      // A = [[x,1],[-1,0]], B = [[0,s],[-1/s,y]]; used near Tr A = +-2
};

struct RepPair {
  MoebiusMap a;
  MoebiusMap b;
  TraceCoords traces;
  Normalization normalization;
};

constexpr double kReducibleTol = 1e-10;

RepPair matrices_from_traces(const TraceCoords& t);

MoebiusMap evaluate(const RepPair& r, const Word& w);
Complex trace_of_word(const RepPair& r, const Word& w);

enum class Marking { a_top, a_bottom, fuchsian };

const char* to_string(Marking m);

struct PleatingCandidate {
  TraceCoords coords;
  Marking marking;
};

// Roots z of kappa(x, y, z) = -2, Im z > 0 first.
std::vector<PleatingCandidate> pleating_candidates(double x, double y);

double fuchsian_discriminant(double x, double y);

// The Im z >= 0 root at (x, y); throws InvalidArgument when both roots are real
// and distinct.
TraceCoords pleating_point(double x, double y);

// The structure whose A and B curves have hyperbolic lengths la and lb.
TraceCoords pleating_point_from_lengths(double la, double lb);

TraceCoords maximal_cusp();

enum class Curve { a, b, commutator };
enum class SideLabel { top, bottom, annulus };

const char* to_string(Curve c);
const char* to_string(SideLabel s);

struct CurveEntry {
  Curve curve;
  Word word;
  SideLabel side;
  bool parabolic;
};

struct CurveSystem {
  std::array<CurveEntry, 3> curves;
};

constexpr double kParabolicTol = 1e-8;

CurveSystem curve_system(const TraceCoords& t, double parabolic_tol = kParabolicTol);

}  // namespace pleat
