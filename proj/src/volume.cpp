#include <cmath>

#include "pleat/error.hpp"
#include "pleat/lengthmap.hpp"
#include "pleat/parallel.hpp"

namespace pleat {

namespace {

struct PathSample {
  std::array<double, 2> l;
  std::array<double, 2> theta;
};

double trapezoid(const std::vector<PathSample>& s, std::size_t stride) {
  double sum = 0.0;
  for (std::size_t k = 0; k + stride < s.size(); k += stride) {
    const auto& p = s[k];
    const auto& q = s[k + stride];
    for (int i = 0; i < 2; ++i) sum += 0.5 * (p.l[i] + q.l[i]) * (q.theta[i] - p.theta[i]);
  }
  return sum;
}

// Trapezoid over nodes [first, first + count] of g, corrected against the
// every-other-node rule; count must be even.
std::pair<double, double> richardson(const std::vector<double>& g, std::size_t first,
                                     std::size_t count, double h) {
  double fine = 0.0, coarse = 0.0;
  for (std::size_t k = first; k < first + count; ++k) fine += 0.5 * h * (g[k] + g[k + 1]);
  for (std::size_t k = first; k < first + count; k += 2) coarse += h * (g[k] + g[k + 2]);
  return {fine + (fine - coarse) / 3.0, std::abs(fine - coarse) / 3.0};
}

}  // namespace

VolumeResult schlafli_volume(const std::vector<TraceCoords>& path) {
  if (path.empty()) throw Error(ErrorKind::InvalidArgument, "empty path");
  std::vector<PathSample> samples = parallel_map(path.size(), [&](std::size_t i) {
    Certification c = certify(path[i]);
    if (!c.is_convex) {
      throw Error(ErrorKind::UncertifiedPathPoint,
                  "path point " + std::to_string(i) + " is not convex: " + c.reason);
    }
    return PathSample{lengths_of(c.coords), {c.theta(Curve::a), c.theta(Curve::b)}};
  });
  VolumeResult r;
  r.steps = static_cast<int>(path.size()) - 1;
  r.trapezoid = trapezoid(samples, 1);
  r.delta_volume = r.trapezoid;
  if (r.steps >= 2 && r.steps % 2 == 0) {
    double coarse = trapezoid(samples, 2);
    r.delta_volume = r.trapezoid + (r.trapezoid - coarse) / 3.0;
    r.error_estimate = std::abs(r.trapezoid - coarse) / 3.0;
  }
  return r;
}

std::vector<TraceCoords> polyline_path(const std::vector<std::array<double, 2>>& vertices,
                                       int steps_per_leg) {
  if (vertices.empty() || steps_per_leg < 1) {
    throw Error(ErrorKind::InvalidArgument, "polyline needs vertices and a positive step count");
  }
  std::vector<TraceCoords> out{pleating_point(vertices[0][0], vertices[0][1])};
  for (std::size_t v = 1; v < vertices.size(); ++v) {
    const auto& p = vertices[v - 1];
    const auto& q = vertices[v];
    for (int k = 1; k <= steps_per_leg; ++k) {
      double s = static_cast<double>(k) / steps_per_leg;
      out.push_back(pleating_point(p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])));
    }
  }
  return out;
}

ConcavityReport concavity_probe(const TraceCoords& seed, const std::array<double, 2>& direction,
                                double t_end, int samples, int substeps) {
  if (samples < 2 || substeps < 2 || substeps % 2 != 0 || !(t_end > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "concavity probe needs samples >= 2 and even substeps");
  }
  Certification c0 = certify(seed);
  if (!c0.is_convex) throw Error(ErrorKind::InvalidArgument, "seed is not convex");
  const double ta = c0.theta(Curve::a), tb = c0.theta(Curve::b);
  auto target = [&](double t) {
    return AngleVector{ta + t * direction[0], tb + t * direction[1]};
  };
  const std::size_t nodes = static_cast<std::size_t>(samples * substeps);
  const double h = t_end / static_cast<double>(nodes);
  std::vector<double> ts(nodes + 1);
  for (std::size_t m = 0; m <= nodes; ++m) ts[m] = h * static_cast<double>(m);
  std::vector<SolveResult> path = continue_angle_path(seed, target, ts);
  std::vector<double> g(nodes + 1);
  for (std::size_t m = 0; m <= nodes; ++m) {
    g[m] = direction[0] * path[m].lengths[0] + direction[1] * path[m].lengths[1];
  }

  ConcavityReport rep;
  std::vector<double> increments, errors;
  rep.t.push_back(0.0);
  rep.volume.push_back(0.0);
  rep.dvol_dt.push_back(g[0]);
  for (int k = 0; k < samples; ++k) {
    auto [inc, err] = richardson(g, static_cast<std::size_t>(k * substeps),
                                 static_cast<std::size_t>(substeps), h);
    increments.push_back(inc);
    errors.push_back(err);
    rep.t.push_back(ts[static_cast<std::size_t>((k + 1) * substeps)]);
    rep.volume.push_back(rep.volume.back() + inc);
    rep.dvol_dt.push_back(g[static_cast<std::size_t>((k + 1) * substeps)]);
  }
  rep.concave = true;
  for (int k = 1; k < samples; ++k) {
    double sd = increments[k] - increments[k - 1];
    double err = errors[k] + errors[k - 1];
    rep.second_difference.push_back(sd);
    rep.error.push_back(err);
    if (!(sd < 0.0 && std::abs(sd) > 3.0 * err)) rep.concave = false;
  }
  rep.increasing = true;
  for (double d : rep.dvol_dt) {
    if (!(d > 0.0)) rep.increasing = false;
  }
  return rep;
}

}  // namespace pleat
