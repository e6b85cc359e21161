#pragma once

#include <array>
#include <string>
#include <vector>

#include "pleat/chartor.hpp"
#include "pleat/sphere_circle.hpp"

namespace pleat {

struct Tolerances {
  double real_trace = 1e-6;   // |Im Tr| on the curve system
  double planarity = 1e-6;    // concyclicity of plaque fixed points
  double parabolic = 1e-8;    // |Tr[A,B] + 2|
  double convex = 1e-8;       // theta >= -convex
  double fuchsian = 1e-10;    // |Im z| below this (relative) marks the Fuchsian locus
};

enum class Side { top, bottom };

const char* to_string(Side s);

struct Plaque {
  SphereCircle circle;
  std::array<Word, 3> boundary_words;
  // The adjacent plaque across the bent curve is translate(base plaque).
  Word translate;
  std::vector<SpherePoint> points;
  double planarity_residual;
};

// top: pants group <a, bab^-1>, bottom: <b, aba^-1>.
Plaque plaque_circle(const RepPair& r, Side side, const Tolerances& tol = {});

// Signed bending angle along the a or b curve; pi when that curve is parabolic.
double bending_angle(const RepPair& r, Curve curve, const Tolerances& tol = {});

// Bending angle without the plaque precondition check. Used by solvers on
// structures already known to be real-trace.
double bending_angle_unchecked(const RepPair& r, Curve curve);

// True when the a or b trace is parabolic at the resolution of the axis code.
bool curve_is_parabolic(const RepPair& r, Curve curve);

struct CurveCertificate {
  Curve curve;
  SideLabel side;
  double real_trace_residual;
  double planarity_residual;
  double theta;
  bool parabolic;
};

struct Certification {
  TraceCoords coords;
  Marking marking = Marking::a_top;
  std::array<CurveCertificate, 3> curves{};
  double parabolic_residual = 0.0;
  bool real_traces = false;
  bool is_piecewise_geodesic = false;
  bool is_convex = false;
  bool is_fuchsian = false;
  std::string reason;

  const CurveCertificate& curve(Curve c) const { return curves[static_cast<int>(c)]; }
  double theta(Curve c) const { return curve(c).theta; }
};

Certification certify(const TraceCoords& t, const Tolerances& tol = {});

// Bend a Fuchsian structure along the a curve: A -> A, B -> E_t B with
// E_t = rotation_about_axis(A, t).
TraceCoords quakebend(const TraceCoords& t0, Curve curve, double t);
RepPair quakebend_rep(const RepPair& r, Curve curve, double t);

// Fuchsian structure with orthogonal a and b axes: y = 2x/sqrt(x^2-4), z = xy/2.
TraceCoords rectangular_seed(double x);

}  // namespace pleat
