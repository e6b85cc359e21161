#include <cmath>
#include <numbers>

#include "pleat/error.hpp"
#include "pleat/lengthmap.hpp"

namespace pleat {

namespace {

constexpr double kPi = std::numbers::pi;

using Vec2 = std::array<double, 2>;

double norm2(const Vec2& v) { return std::hypot(v[0], v[1]); }

class MixedProblem {
 public:
  explicit MixedProblem(const MixedTarget& t) : target_(t) {
    needs_angles_ = t.kinds[0] == TargetKind::angle || t.kinds[1] == TargetKind::angle;
  }

  Vec2 residual(const Vec2& u) const {
    Vec2 th{0.0, 0.0};
    if (needs_angles_) th = angles_at_lengths(u[0], u[1]);
    Vec2 f;
    for (int k = 0; k < 2; ++k) {
      double v = target_.kinds[k] == TargetKind::length ? u[k] : th[k];
      f[k] = v - target_.values[k];
    }
    return f;
  }

  Eigen::Matrix2d jacobian(const Vec2& u, const Vec2& f0, double rel_step) const {
    Eigen::Matrix2d j = Eigen::Matrix2d::Zero();
    for (int k = 0; k < 2; ++k) {
      if (target_.kinds[k] == TargetKind::length) j(k, k) = 1.0;
    }
    if (!needs_angles_) return j;
    for (int col = 0; col < 2; ++col) {
      double h = rel_step * std::max(1.0, u[col]);
      Vec2 up = u, um = u;
      up[col] += h;
      um[col] -= h;
      bool can_up = lengths_feasible(up[0], up[1]);
      bool can_down = lengths_feasible(um[0], um[1]);
      Vec2 fp, fm;
      double span;
      if (can_up && can_down) {
        fp = residual(up);
        fm = residual(um);
        span = 2.0 * h;
      } else if (can_up) {
        fp = residual(up);
        fm = f0;
        span = h;
      } else if (can_down) {
        fp = f0;
        fm = residual(um);
        span = h;
      } else {
        throw Error(ErrorKind::NewtonDivergence, "no feasible difference stencil");
      }
      for (int row = 0; row < 2; ++row) {
        if (target_.kinds[row] == TargetKind::angle) j(row, col) = (fp[row] - fm[row]) / span;
      }
    }
    return j;
  }

 private:
  MixedTarget target_;
  bool needs_angles_ = false;
};

void validate_target(const MixedTarget& t) {
  for (int k = 0; k < 2; ++k) {
    double v = t.values[k];
    if (!std::isfinite(v)) throw Error(ErrorKind::TargetOutsideImage, "non-finite target");
    if (t.kinds[k] == TargetKind::angle && !(v > 0.0 && v <= kPi)) {
      throw Error(ErrorKind::TargetOutsideImage, "bending angle targets must lie in (0, pi]");
    }
    if (t.kinds[k] == TargetKind::length && v < 0.0) {
      throw Error(ErrorKind::TargetOutsideImage, "length targets must be nonnegative");
    }
  }
}

SolveResult finish(const Vec2& u, int iterations, double residual) {
  SolveResult r;
  r.coords = pleating_point_from_lengths(u[0], u[1]);
  r.lengths = u;
  r.angles = angles_at_lengths(u[0], u[1]);
  r.iterations = iterations;
  r.residual = residual;
  return r;
}

}  // namespace

SolveResult solve_mixed(const MixedTarget& target, const TraceCoords& seed, const SolveOptions& opt) {
  validate_target(target);
  MixedProblem prob(target);
  Vec2 u = lengths_of(seed);
  if (!lengths_feasible(u[0], u[1])) {
    throw Error(ErrorKind::InvalidArgument, "seed is not a quasifuchsian pleating point");
  }
  const double noise_floor = std::max(1e-12, opt.tolerance);
  Vec2 f = prob.residual(u);
  for (int it = 0; it <= opt.max_iterations; ++it) {
    double n = norm2(f);
    if (n <= opt.tolerance) return finish(u, it, n);
    if (it == opt.max_iterations) break;
    Eigen::Matrix2d j = prob.jacobian(u, f, opt.fd_step);
    if (!(std::abs(j.determinant()) > 1e-14)) {
      throw Error(ErrorKind::NewtonDivergence, "singular Jacobian");
    }
    Eigen::Vector2d delta = -j.inverse() * Eigen::Vector2d(f[0], f[1]);
    double alpha = 1.0;
    bool accepted = false;
    for (int k = 0; k < 40; ++k, alpha /= 2.0) {
      Vec2 un{std::max(0.0, u[0] + alpha * delta(0)), std::max(0.0, u[1] + alpha * delta(1))};
      if (!lengths_feasible(un[0], un[1])) continue;
      Vec2 fn = prob.residual(un);
      if (norm2(fn) < (1.0 - 1e-4 * alpha) * n) {
        u = un;
        f = fn;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (n <= noise_floor) return finish(u, it, n);
      throw Error(ErrorKind::NewtonDivergence, "line search failed at residual " + std::to_string(n));
    }
  }
  throw Error(ErrorKind::NewtonDivergence, "iteration limit reached");
}

SolveResult solve_for_angles(const AngleVector& target, const TraceCoords& seed,
                             const SolveOptions& opt) {
  return solve_mixed({{TargetKind::angle, TargetKind::angle}, {target.theta_a, target.theta_b}},
                     seed, opt);
}

namespace {

SolveResult continue_step(const std::function<AngleVector(double)>& target, double t0, double t1,
                          const TraceCoords& from, const SolveOptions& opt, int depth) {
  constexpr int kMaxDepth = 12;
  try {
    SolveResult r = solve_for_angles(target(t1), from, opt);
    if (r.iterations <= 8 || depth >= kMaxDepth) return r;
  } catch (const Error& e) {
    if (depth >= kMaxDepth || e.kind() == ErrorKind::TargetOutsideImage) throw;
  }
  double mid = 0.5 * (t0 + t1);
  SolveResult half = continue_step(target, t0, mid, from, opt, depth + 1);
  return continue_step(target, mid, t1, half.coords, opt, depth + 1);
}

}  // namespace

std::vector<SolveResult> continue_angle_path(const TraceCoords& seed,
                                             const std::function<AngleVector(double)>& target,
                                             const std::vector<double>& ts,
                                             const SolveOptions& opt) {
  std::vector<SolveResult> out;
  if (ts.empty()) return out;
  out.push_back(solve_for_angles(target(ts[0]), seed, opt));
  for (std::size_t i = 1; i < ts.size(); ++i) {
    out.push_back(continue_step(target, ts[i - 1], ts[i], out.back().coords, opt, 0));
  }
  return out;
}

std::function<AngleVector(double)> pleating_ray(const AngleVector& theta0) {
  return [theta0](double t) {
    return AngleVector{theta0.theta_a + t * (kPi - theta0.theta_a),
                       theta0.theta_b + t * (kPi - theta0.theta_b)};
  };
}

JacobianMatrix dl_dphi(const TraceCoords& t, double h, const SolveOptions& opt) {
  Certification cert = certify(t);
  if (!cert.is_convex) throw Error(ErrorKind::InvalidArgument, "dl_dphi needs a convex structure");
  Vec2 th{cert.theta(Curve::a), cert.theta(Curve::b)};
  for (double v : th) {
    if (v < 10.0 * h || v > kPi - 10.0 * h) {
      throw Error(ErrorKind::InvalidArgument, "bending angle too close to 0 or pi");
    }
  }
  SolveOptions fine = opt;
  fine.tolerance = std::min(opt.tolerance, 1e-13);
  auto matrix = [&](double step) {
    Eigen::Matrix2d m;
    for (int j = 0; j < 2; ++j) {
      // phi = 2(pi - theta): phi + step <=> theta - step / 2.
      Vec2 plus = th, minus = th;
      plus[j] -= step / 2.0;
      minus[j] += step / 2.0;
      SolveResult rp = solve_for_angles({plus[0], plus[1]}, t, fine);
      SolveResult rm = solve_for_angles({minus[0], minus[1]}, t, fine);
      for (int i = 0; i < 2; ++i) m(i, j) = (rp.lengths[i] - rm.lengths[i]) / (2.0 * step);
    }
    return m;
  };
  Eigen::Matrix2d m1 = matrix(h);
  Eigen::Matrix2d m2 = matrix(h / 2.0);
  JacobianMatrix out;
  out.values = m1.cast<Complex>();
  out.rows = {"l_a", "l_b"};
  out.cols = {"phi_a", "phi_b"};
  out.method = "finite-difference";
  out.step = h;
  out.halving_discrepancy = (m1 - m2).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace pleat
