#include "pleat/plaques.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pleat/error.hpp"

namespace pleat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDedupe = 1e-9;

void add_point(std::vector<SpherePoint>& pts, const SpherePoint& p) {
  for (const auto& q : pts) {
    if (chordal_distance(p, q) < kDedupe) return;
  }
  pts.push_back(p);
}

void add_fixed_points(std::vector<SpherePoint>& pts, const MoebiusMap& m) {
  Complex t = m.trace();
  if (std::abs(t * t - 4.0) < 1e-6) {
    // Near-parabolic: the midpoint of the two roots is stable.
    add_point(pts, SpherePoint::homogeneous(m.a() - m.d(), 2.0 * m.c()));
    return;
  }
  auto [p, q] = fixed_points(m);
  add_point(pts, p);
  add_point(pts, q);
}

// Sends the repelling point to 0 and the attracting point to infinity, up to scale.
Complex axis_coordinate(const SpherePoint& p, const SpherePoint& attracting,
                        const SpherePoint& repelling) {
  auto [p0, p1] = p.coords();
  auto [a0, a1] = attracting.coords();
  auto [r0, r1] = repelling.coords();
  return (p0 * r1 - p1 * r0) / (p0 * a1 - p1 * a0);
}

double wrap(double a) {
  a = std::fmod(a, 2.0 * kPi);
  return a < 0.0 ? a + 2.0 * kPi : a;
}

bool parabolic_trace(Complex t) { return std::abs(t * t - 4.0) <= 1e-14; }

// Bending along Ax(x) between the plaque of <x, y x y^-1> and its y^-1 translate.
double bend_along(const MoebiusMap& x, const MoebiusMap& y) {
  if (parabolic_trace(x.trace())) return kPi;
  auto [fa, fr] = fixed_points(x);
  double r1 = std::arg(axis_coordinate(y(fa), fa, fr));
  double r2 = std::arg(axis_coordinate(y.inverse()(fa), fa, fr));
  double delta = wrap(r2 - r1);

  const MoebiusMap tests[] = {y, y.inverse() * x.inverse(), x * y, x.inverse() * y};
  double best_margin = -1.0;
  bool inside = true;
  for (const auto& w : tests) {
    Complex tr = w.trace();
    if (std::abs(tr * tr - 4.0) < 1e-12) continue;
    auto [p, q] = fixed_points(w);
    for (const auto& pt : {p, q}) {
      Complex c = axis_coordinate(pt, fa, fr);
      if (!(std::abs(c) > 0.0) || !std::isfinite(std::abs(c))) continue;
      double ang = std::arg(c);
      double margin = std::min(std::abs(std::sin(ang - r1)), std::abs(std::sin(ang - r2)));
      if (margin > best_margin) {
        best_margin = margin;
        inside = wrap(ang - r1) < delta;
      }
    }
  }
  double psi = inside ? delta : 2.0 * kPi - delta;
  return kPi - psi;
}

double fit_residual(const std::vector<SpherePoint>& pts, SphereCircle& circle) {
  const std::size_t n = pts.size();
  if (n < 3) throw Error(ErrorKind::NonPlanar, "fewer than three distinct fixed points");
  std::size_t bi = 0, bj = 1, bk = 2;
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        double m = std::min({chordal_distance(pts[i], pts[j]), chordal_distance(pts[j], pts[k]),
                             chordal_distance(pts[i], pts[k])});
        if (m > best) {
          best = m;
          bi = i;
          bj = j;
          bk = k;
        }
      }
    }
  }
  circle = circle_through(pts[bi], pts[bj], pts[bk]);
  double res = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    if (s == bi || s == bj || s == bk) continue;
    res = std::max(res, concyclicity_residual(pts[bi], pts[bj], pts[bk], pts[s]));
  }
  return res;
}

}  // namespace

const char* to_string(Side s) { return s == Side::top ? "top" : "bottom"; }

Plaque plaque_circle(const RepPair& r, Side side, const Tolerances& tol) {
  const bool top = side == Side::top;
  const MoebiusMap& x = top ? r.a : r.b;
  const MoebiusMap& y = top ? r.b : r.a;
  MoebiusMap comm = r.a * r.b * r.a.inverse() * r.b.inverse();
  double res_trace = std::max(std::abs(x.trace().imag()), std::abs(comm.trace().imag()));
  if (res_trace > tol.real_trace) {
    throw Error(ErrorKind::NonRealTraces,
                "pants traces not real (residual " + std::to_string(res_trace) + ")");
  }
  MoebiusMap conj = y * x * y.inverse();
  std::vector<SpherePoint> pts;
  add_fixed_points(pts, x);
  auto [xa, xr] = fixed_points(x);
  add_point(pts, y(xa));
  add_point(pts, y(xr));
  add_fixed_points(pts, top ? comm : comm.inverse());
  add_fixed_points(pts, x * conj);

  Plaque p{SphereCircle::line(0.0, 1.0), {}, Word(), pts, 0.0};
  p.planarity_residual = fit_residual(pts, p.circle);
  if (top) {
    p.boundary_words = {Word("a"), Word("baB"), Word("abAB")};
    p.translate = Word("B");
  } else {
    p.boundary_words = {Word("b"), Word("abA"), Word("baBA")};
    p.translate = Word("A");
  }
  if (p.planarity_residual > tol.planarity) {
    throw Error(ErrorKind::NonPlanar,
                "planarity residual " + std::to_string(p.planarity_residual));
  }
  return p;
}

bool curve_is_parabolic(const RepPair& r, Curve curve) {
  if (curve == Curve::a) return parabolic_trace(r.a.trace());
  if (curve == Curve::b) return parabolic_trace(r.b.trace());
  return parabolic_trace((r.a * r.b * r.a.inverse() * r.b.inverse()).trace());
}

double bending_angle_unchecked(const RepPair& r, Curve curve) {
  switch (curve) {
    case Curve::a: return bend_along(r.a, r.b);
    case Curve::b: return bend_along(r.b, r.a);
    case Curve::commutator:
      if (curve_is_parabolic(r, curve)) return kPi;
      break;
  }
  throw Error(ErrorKind::InvalidArgument, "bending angle along a non-parabolic commutator");
}

double bending_angle(const RepPair& r, Curve curve, const Tolerances& tol) {
  if (curve == Curve::a && !curve_is_parabolic(r, curve)) plaque_circle(r, Side::top, tol);
  if (curve == Curve::b && !curve_is_parabolic(r, curve)) plaque_circle(r, Side::bottom, tol);
  return bending_angle_unchecked(r, curve);
}

Certification certify(const TraceCoords& t, const Tolerances& tol) {
  Certification c;
  c.coords = normalize_lift(t);
  const TraceCoords& s = c.coords;
  c.parabolic_residual = std::abs(commutator_trace(s) + 2.0);
  c.curves[0] = {Curve::a, SideLabel::top, std::abs(s.x.imag()), 0.0, 0.0, false};
  c.curves[1] = {Curve::b, SideLabel::bottom, std::abs(s.y.imag()), 0.0, 0.0, false};
  c.curves[2] = {Curve::commutator, SideLabel::annulus, std::abs(commutator_trace(s).imag()), 0.0,
                 kPi, c.parabolic_residual <= tol.parabolic};
  c.real_traces = c.curves[0].real_trace_residual <= tol.real_trace &&
                  c.curves[1].real_trace_residual <= tol.real_trace;
  c.is_fuchsian = c.real_traces && std::abs(s.z.imag()) <= tol.fuchsian * (1.0 + std::abs(s.z));
  if (c.is_fuchsian) {
    c.marking = Marking::fuchsian;
  } else if (s.z.imag() < 0.0) {
    c.marking = Marking::a_bottom;
    c.curves[0].side = SideLabel::bottom;
    c.curves[1].side = SideLabel::top;
  }
  if (!c.real_traces) {
    c.reason = "traces of a or b not real";
    return c;
  }
  if (!c.curves[2].parabolic) {
    c.reason = "commutator not parabolic";
    return c;
  }
  try {
    RepPair r = matrices_from_traces(s);
    for (int i = 0; i < 2; ++i) {
      Curve curve = i == 0 ? Curve::a : Curve::b;
      CurveCertificate& cc = c.curves[i];
      cc.parabolic = curve_is_parabolic(r, curve);
      Side side = i == 0 ? Side::top : Side::bottom;
      Tolerances loose = tol;
      loose.planarity = 1.0;
      Plaque p = plaque_circle(r, side, loose);
      cc.planarity_residual = p.planarity_residual;
      if (!cc.parabolic && p.planarity_residual > tol.planarity) {
        c.reason = std::string("plaque not planar along ") + to_string(curve);
        return c;
      }
      cc.theta = bending_angle_unchecked(r, curve);
    }
  } catch (const Error& e) {
    c.reason = e.what();
    return c;
  }
  c.is_piecewise_geodesic = true;
  bool nonneg = c.curves[0].theta >= -tol.convex && c.curves[1].theta >= -tol.convex;
  if (c.is_fuchsian) {
    c.reason = "Fuchsian boundary case";
  } else if (!nonneg) {
    c.reason = "negative bending angle";
  }
  c.is_convex = nonneg && !c.is_fuchsian;
  return c;
}

RepPair quakebend_rep(const RepPair& r, Curve curve, double t) {
  if (curve != Curve::a) {
    throw Error(ErrorKind::InvalidArgument, "quakebend is implemented along the a curve");
  }
  RepPair out = r;
  out.b = rotation_about_axis(r.a, t) * r.b;
  Complex x = out.a.trace(), y = out.b.trace(), z = (out.a * out.b).trace();
  out.traces = {x, y, z};
  return out;
}

TraceCoords quakebend(const TraceCoords& t0, Curve curve, double t) {
  double scale = 1.0 + std::abs(t0.x) + std::abs(t0.y) + std::abs(t0.z);
  bool real = std::abs(t0.x.imag()) <= 1e-10 * scale && std::abs(t0.y.imag()) <= 1e-10 * scale &&
              std::abs(t0.z.imag()) <= 1e-10 * scale;
  if (!real || std::abs(commutator_trace(t0) + 2.0) > kParabolicTol) {
    throw Error(ErrorKind::NotFuchsian, "quakebend needs a Fuchsian seed with parabolic commutator");
  }
  if (!(std::abs(t) < kPi)) throw Error(ErrorKind::InvalidArgument, "|t| must be below pi");
  RepPair r = quakebend_rep(matrices_from_traces(t0), curve, t);
  return normalize_lift(r.traces);
}

TraceCoords rectangular_seed(double x) {
  if (!(x > 2.0)) throw Error(ErrorKind::InvalidArgument, "rectangular seed needs x > 2");
  double y = 2.0 * x / std::sqrt(x * x - 4.0);
  return {x, y, x * y / 2.0};
}

}  // namespace pleat
