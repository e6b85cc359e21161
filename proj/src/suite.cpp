#include "pleat/suite.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "pleat/error.hpp"
#include "pleat/lengthmap.hpp"
#include "pleat/parallel.hpp"

namespace pleat {

namespace {

constexpr double kPi = std::numbers::pi;

using Tol = std::map<std::string, double>;

struct Context {
  Tol tol;
  std::uint64_t seed;
  unsigned threads;

  double operator[](const std::string& k) const { return tol.at(k); }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

// Random convex structures in [2.05, 2.7]^2, alternating root choice, led by the
// maximal cusp.
std::vector<TraceCoords> certified_sample(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(2.05, 2.7);
  std::vector<TraceCoords> out{maximal_cusp()};
  while (static_cast<int>(out.size()) < n) {
    double x = u(rng), y = u(rng);
    if (fuchsian_discriminant(x, y) > -0.5) continue;
    out.push_back(pleating_candidates(x, y)[out.size() % 2].coords);
  }
  return out;
}

std::vector<TraceCoords> grid_points(double lo, double hi, double step) {
  std::vector<TraceCoords> out;
  int n = static_cast<int>(std::lround((hi - lo) / step));
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) out.push_back(pleating_point(lo + i * step, lo + j * step));
  }
  return out;
}

CriterionResult round_trip(const Context& ctx) {
  CriterionResult r;
  std::mt19937_64 rng(ctx.seed);
  std::normal_distribution<double> g(0.0, 1.0);
  auto rc = [&] { return Complex(g(rng), g(rng)); };
  double worst = 0.0;
  int count = 0;
  while (count < 10000) {
    Complex a = rc(), b = rc(), c = rc();
    if (std::abs(a) < 0.1) continue;
    Complex d = (1.0 + b * c) / a;
    MoebiusMap m = MoebiusMap::unimodular(a, b, c, d);
    Complex t = m.trace();
    if (std::abs(t * t - 4.0) < 1e-6) continue;
    ComplexLength cl = complex_length(m);
    worst = std::max(worst, std::abs(2.0 * std::cosh(cl.value / 2.0) - double(cl.lift_sign) * t));
    ++count;
  }
  r.measured = worst;
  r.threshold = ctx["round_trip"];
  r.passed = worst < r.threshold;
  r.metrics["samples"] = count;
  r.detail = "max |2cosh(lambda/2) - sign Tr| over 10^4 matrices";
  return r;
}

CriterionResult local_pleating(const Context& ctx) {
  CriterionResult r;
  auto pts = grid_points(2.05, 2.6, 0.05);
  auto certs = parallel_map(pts.size(), [&](std::size_t i) { return certify(pts[i]); }, ctx.threads);
  double worst = 0.0;
  int bad = 0;
  double min_theta = kPi, max_theta = 0.0;
  for (const auto& c : certs) {
    double plan = std::max(c.curve(Curve::a).planarity_residual, c.curve(Curve::b).planarity_residual);
    worst = std::max(worst, plan);
    double ta = c.theta(Curve::a), tb = c.theta(Curve::b);
    min_theta = std::min({min_theta, ta, tb});
    max_theta = std::max({max_theta, ta, tb});
    bool ok = c.is_piecewise_geodesic && c.is_convex && plan < ctx["planarity"] && ta > 0.0 &&
              ta < kPi && tb > 0.0 && tb < kPi;
    if (!ok) ++bad;
  }
  r.measured = worst;
  r.threshold = ctx["planarity"];
  r.passed = bad == 0;
  r.metrics["points"] = static_cast<double>(pts.size());
  r.metrics["failures"] = bad;
  r.metrics["min_theta"] = min_theta;
  r.metrics["max_theta"] = max_theta;
  r.detail = "grid [2.05,2.6]^2 step 0.05; " + std::to_string(bad) + " failing points";
  return r;
}

CriterionResult real_trace(const Context& ctx) {
  CriterionResult r;
  const double seeds[] = {2.3, 2.5, 2.8, 3.2, 4.0};
  const double ts[] = {-0.3, -0.2, -0.1, 0.1, 0.2, 0.3};
  double worst = 0.0;
  int not_convex = 0, count = 0;
  for (double x : seeds) {
    for (double t : ts) {
      TraceCoords q = quakebend(rectangular_seed(x), Curve::a, t);
      worst = std::max({worst, std::abs(q.x.imag()), std::abs(q.y.imag()),
                        std::abs(commutator_trace(q).imag())});
      if (!certify(q).is_convex) ++not_convex;
      ++count;
    }
  }
  r.measured = worst;
  r.threshold = ctx["real_trace"];
  r.passed = worst < r.threshold && not_convex == 0;
  r.metrics["structures"] = count;
  r.metrics["not_convex"] = not_convex;
  r.detail = "quakebends |t| <= 0.3 from 5 rectangular Fuchsian seeds";
  return r;
}

struct DoubleAudit {
  double relation = 0.0;
  double lift = 0.0;
  double commutation = 0.0;
  bool consistent = true;
  double re_mu = 0.0;
  double cone = 0.0;
};

DoubleAudit audit_double(const TraceCoords& t) {
  Certification c = certify(t);
  if (!c.is_convex) throw Error(ErrorKind::NotPiecewiseGeodesic, "sample not convex: " + c.reason);
  DoubledHolonomy rho = doubled_holonomy(matrices_from_traces(c.coords), c);
  DoubleAudit a;
  for (const auto& rel : build_presentation().relations) {
    a.relation = std::max(a.relation, relation_residual(rho, rel));
  }
  LiftReport lift = lift_audit(rho, 1.0);
  a.lift = lift.max_residual;
  a.consistent = lift.consistent;
  for (const auto& m : meridian_data(rho)) {
    a.commutation = std::max(a.commutation, m.commutation_residual);
    if (m.mu) a.re_mu = std::max(a.re_mu, std::abs(m.mu->value.real()));
    double theta = m.curve == Curve::commutator ? kPi : c.theta(m.curve);
    a.cone = std::max(a.cone, std::abs(m.cone_angle - 2.0 * (kPi - theta)));
  }
  return a;
}

CriterionResult doubling(const Context& ctx) {
  CriterionResult r;
  auto pts = certified_sample(ctx.seed, 20);
  auto audits = parallel_map(pts.size(), [&](std::size_t i) { return audit_double(pts[i]); }, ctx.threads);
  double rel = 0.0, lift = 0.0, comm = 0.0;
  bool consistent = true;
  for (const auto& a : audits) {
    rel = std::max(rel, a.relation);
    lift = std::max(lift, a.lift);
    comm = std::max(comm, a.commutation);
    consistent = consistent && a.consistent;
  }
  double tol = ctx["relation"];
  r.measured = std::max({rel, lift, comm});
  r.threshold = tol;
  r.passed = consistent && rel < tol && lift < tol && comm < tol;
  r.metrics["relation_residual"] = rel;
  r.metrics["lift_residual"] = lift;
  r.metrics["commutation_residual"] = comm;
  r.metrics["structures"] = static_cast<double>(pts.size());
  r.detail = consistent ? "consistent SL(2,C) lift at every structure" : "no consistent lift";
  return r;
}

CriterionResult cone(const Context& ctx) {
  CriterionResult r;
  auto pts = certified_sample(ctx.seed, 20);
  auto audits = parallel_map(pts.size(), [&](std::size_t i) { return audit_double(pts[i]); }, ctx.threads);
  double re = 0.0, angle = 0.0;
  for (const auto& a : audits) {
    re = std::max(re, a.re_mu);
    angle = std::max(angle, a.cone);
  }
  r.measured = angle;
  r.threshold = ctx["cone_angle"];
  r.passed = re < ctx["re_mu"] && angle < ctx["cone_angle"];
  r.metrics["max_abs_re_mu"] = re;
  r.metrics["max_cone_angle_error"] = angle;
  r.detail = "|Re mu| bound " + fmt(ctx["re_mu"]) + ", cone angle vs 2(pi - theta)";
  return r;
}

CriterionResult symmetry(const Context& ctx) {
  CriterionResult r;
  auto pts = certified_sample(ctx.seed, 10);
  auto res = parallel_map(pts.size(), [&](std::size_t i) {
    std::mt19937_64 rng(ctx.seed + 17 * i);
    std::uniform_int_distribution<int> len(1, 10);
    std::vector<Word> words;
    for (int k = 0; k < 100; ++k) words.push_back(random_word(rng, "abcde", len(rng)));
    Certification c = certify(pts[i]);
    DoubledHolonomy rho = doubled_holonomy(matrices_from_traces(c.coords), c);
    double boundary = std::abs(rho(Word("a")).trace().imag());
    return std::max(symmetry_audit(rho, words), boundary);
  }, ctx.threads);
  double worst = 0.0;
  for (double v : res) worst = std::max(worst, v);
  r.measured = worst;
  r.threshold = ctx["symmetry"];
  r.passed = worst < r.threshold;
  r.detail = "100 random words over a,b,c,d,e at 10 structures";
  return r;
}

CriterionResult jacobian(const Context& ctx) {
  CriterionResult r;
  auto pts = grid_points(2.05, 2.6, 0.05);
  double min_det = std::numeric_limits<double>::infinity();
  int sampled = 0;
  for (const auto& p : pts) {
    if (fuchsian_discriminant(p.x.real(), p.y.real()) >= -1.0) continue;
    min_det = std::min(min_det, std::abs(holo_length_jacobian(p).determinant()));
    ++sampled;
  }
  // Diagonal path x = y = s with discriminant s^2(s^2 - 8) -> 0-.
  std::vector<double> dets;
  bool monotone = true;
  for (int k = 0; k <= 10; ++k) {
    double s = std::sqrt(8.0 - std::pow(10.0, -k));
    double d = std::abs(holo_length_jacobian(pleating_point(s, s)).determinant());
    if (!dets.empty() && !(d < dets.back())) monotone = false;
    dets.push_back(d);
  }
  r.measured = min_det;
  r.threshold = ctx["det_min"];
  r.passed = min_det > ctx["det_min"] && monotone && dets.back() < ctx["det_limit"];
  r.metrics["grid_samples"] = sampled;
  r.metrics["path_final_det"] = dets.back();
  r.metrics["path_monotone"] = monotone ? 1.0 : 0.0;
  r.detail = "min |det| on grid; path to discriminant 0 ends at |det| = " + fmt(dets.back());
  return r;
}

std::vector<TraceCoords> posdef_sample() {
  std::vector<TraceCoords> out;
  for (double x : {2.1, 2.3, 2.5, 2.7}) {
    for (double y : {2.1, 2.3, 2.5, 2.7}) out.push_back(pleating_point(x, y));
  }
  // Near the Fuchsian boundary: small bending angles.
  out.push_back(quakebend(rectangular_seed(2.5), Curve::a, 0.05));
  out.push_back(quakebend(rectangular_seed(3.0), Curve::a, 0.1));
  out.push_back(quakebend(rectangular_seed(2.2), Curve::a, 0.08));
  out.push_back(quakebend(rectangular_seed(3.5), Curve::a, -0.06));
  return out;
}

CriterionResult posdef(const Context& ctx) {
  CriterionResult r;
  auto pts = posdef_sample();
  auto mats = parallel_map(pts.size(), [&](std::size_t i) { return dl_dphi(pts[i]).real(); }, ctx.threads);
  double asym = 0.0, min_eig = std::numeric_limits<double>::infinity(),
         min_diag = std::numeric_limits<double>::infinity();
  for (const auto& m : mats) {
    asym = std::max(asym, std::abs(m(0, 1) - m(1, 0)));
    Eigen::EigenSolver<Eigen::Matrix2d> es(m);
    for (int k = 0; k < 2; ++k) {
      Complex ev = es.eigenvalues()(k);
      min_eig = std::min(min_eig, std::abs(ev.imag()) > 1e-12 ? -1.0 : ev.real());
    }
    min_diag = std::min({min_diag, m(0, 0), m(1, 1)});
  }
  r.measured = asym;
  r.threshold = ctx["hessian_symmetry"];
  r.passed = asym < r.threshold && min_eig > 0.0 && min_diag > 0.0;
  r.metrics["structures"] = static_cast<double>(pts.size());
  r.metrics["min_eigenvalue"] = min_eig;
  r.metrics["min_diagonal"] = min_diag;
  r.detail = "d l / d phi by central differences over Newton solves, h = 1e-5";
  return r;
}

CriterionResult schlafli(const Context& ctx) {
  CriterionResult r;
  std::mt19937_64 rng(ctx.seed);
  std::uniform_real_distribution<double> u(2.08, 2.6);
  std::vector<std::array<double, 4>> ends;
  while (ends.size() < 10) {
    double x0 = u(rng), y0 = u(rng), x1 = u(rng), y1 = u(rng);
    if (std::abs(x1 - x0) < 0.05 || std::abs(y1 - y0) < 0.05) continue;
    ends.push_back({x0, y0, x1, y1});
  }
  auto diffs = parallel_map(ends.size(), [&](std::size_t i) {
    const auto& e = ends[i];
    VolumeResult v1 = schlafli_volume(polyline_path({{e[0], e[1]}, {e[2], e[1]}, {e[2], e[3]}}, 64));
    VolumeResult v2 = schlafli_volume(polyline_path({{e[0], e[1]}, {e[0], e[3]}, {e[2], e[3]}}, 64));
    return std::abs(v1.delta_volume - v2.delta_volume);
  }, ctx.threads);
  double path_gap = 0.0;
  for (double d : diffs) path_gap = std::max(path_gap, d);

  // Linear angle paths: two rays toward (pi, pi) and three other directions.
  struct Probe {
    double x, y;
    std::array<double, 2> c;
    double t_end;
    bool ray;
  };
  std::vector<Probe> probes;
  for (auto [x, y] : {std::pair{2.3, 2.3}, std::pair{2.2, 2.5}}) {
    Certification c = certify(pleating_point(x, y));
    probes.push_back({x, y, {kPi - c.theta(Curve::a), kPi - c.theta(Curve::b)}, 0.9, true});
  }
  probes.push_back({2.4, 2.4, {0.6, 0.0}, 1.0, false});
  probes.push_back({2.4, 2.4, {0.0, 0.6}, 1.0, false});
  probes.push_back({2.3, 2.5, {0.5, -0.3}, 1.0, false});
  auto reports = parallel_map(probes.size(), [&](std::size_t i) {
    const auto& p = probes[i];
    return concavity_probe(pleating_point(p.x, p.y), p.c, p.t_end);
  }, ctx.threads);
  double margin = ctx["concavity_margin"];
  bool concave = true, increasing = true;
  double worst_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& rep = reports[i];
    for (std::size_t k = 0; k < rep.second_difference.size(); ++k) {
      double sd = rep.second_difference[k], err = rep.error[k];
      if (!(sd < 0.0 && std::abs(sd) > margin * err)) concave = false;
      worst_ratio = std::min(worst_ratio, err > 0.0 ? -sd / err : (sd < 0.0 ? 1e300 : -1.0));
    }
    if (probes[i].ray && !rep.increasing) increasing = false;
  }
  r.measured = path_gap;
  r.threshold = ctx["volume_path"];
  r.passed = path_gap < r.threshold && concave && increasing;
  r.metrics["path_pairs"] = static_cast<double>(ends.size());
  r.metrics["concave"] = concave ? 1.0 : 0.0;
  r.metrics["min_second_difference_over_error"] = worst_ratio;
  r.metrics["ray_increasing"] = increasing ? 1.0 : 0.0;
  r.detail = "path independence over 10 pairs; concavity along 5 angle paths";
  return r;
}

double coord_distance(const TraceCoords& a, const TraceCoords& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

CriterionResult injectivity(const Context& ctx) {
  CriterionResult r;
  std::mt19937_64 rng(ctx.seed);
  std::uniform_real_distribution<double> u(2.08, 2.65);
  const std::vector<TraceCoords> seeds = {pleating_point(2.15, 2.2), pleating_point(2.5, 2.3),
                                          pleating_point(2.25, 2.6)};
  std::vector<MixedTarget> targets;
  while (targets.size() < 20) {
    double x = u(rng), y = u(rng);
    if (fuchsian_discriminant(x, y) > -0.5) continue;
    TraceCoords t = pleating_point(x, y);
    auto l = lengths_of(t);
    if (targets.size() < 10) {
      targets.push_back({{TargetKind::length, TargetKind::length}, l});
    } else {
      Certification c = certify(t);
      targets.push_back({{TargetKind::length, TargetKind::angle}, {l[0], c.theta(Curve::b)}});
    }
  }
  auto spreads = parallel_map(targets.size(), [&](std::size_t i) {
    std::vector<TraceCoords> sols;
    for (const auto& s : seeds) {
      SolveResult res = solve_mixed(targets[i], s);
      if (!certify(res.coords).is_convex) throw Error(ErrorKind::NewtonDivergence, "non-convex solution");
      sols.push_back(res.coords);
    }
    return std::max(coord_distance(sols[0], sols[1]), coord_distance(sols[0], sols[2]));
  }, ctx.threads);
  double spread = 0.0;
  for (double s : spreads) spread = std::max(spread, s);

  double cusp_gap = 0.0;
  for (auto [x, y] : {std::pair{2.2, 2.2}, std::pair{2.6, 2.3}, std::pair{2.05, 2.5},
                      std::pair{2.4, 2.6}, std::pair{2.1, 2.1}}) {
    SolveResult res = solve_for_angles({kPi, kPi}, pleating_point(x, y));
    cusp_gap = std::max(cusp_gap, coord_distance(res.coords, maximal_cusp()));
  }
  double tol = ctx["injectivity"];
  r.measured = std::max(spread, cusp_gap);
  r.threshold = tol;
  r.passed = spread < tol && cusp_gap < tol;
  r.metrics["seed_spread"] = spread;
  r.metrics["cusp_distance"] = cusp_gap;
  r.detail = "10 length + 10 mixed targets from 3 seeds; (pi, pi) from 5 seeds";
  return r;
}

CriterionResult cusp(const Context& ctx) {
  CriterionResult r;
  double relation = 0.0, model = 0.0;
  for (Complex u : {Complex(2.0), Complex(2.3), Complex(3.0), Complex(1.7, 0.4)}) {
    for (Complex h : {Complex(2.0), Complex(0.5, 0.3), Complex(-1.1, 0.2)}) {
      CanonicalPair p = commuting_canonical_pair(u, h);
      relation = std::max(relation, std::abs(h * h * (u * u - 4.0) - (p.v * p.v - 4.0)));
    }
  }
  // dv/du at u = 2 in the canonical model equals h^2.
  for (Complex h : {Complex(0.7), Complex(0.4, 0.5)}) {
    const double du = 1e-6;
    Complex vp = commuting_canonical_pair(2.0 + du, h).v;
    Complex vm = commuting_canonical_pair(2.0 - du, h).v;
    model = std::max(model, std::abs((vp - vm) / (2.0 * du) - h * h));
  }
  double d_open = std::numeric_limits<double>::infinity(), cross = 0.0, h2_imag = 0.0;
  bool negative = true;
  for (auto [x, y] : {std::pair{2.05, 2.05}, std::pair{2.02, 2.1}, std::pair{2.1, 2.03}}) {
    CuspDerivativeReport rep = cusp_derivative_check(pleating_point(x, y));
    d_open = std::min(d_open, std::abs(rep.d_kappa_d_zp));
    cross = std::max({cross, std::abs(rep.d_kappa_d_za), std::abs(rep.d_kappa_d_zb)});
    h2_imag = std::max(h2_imag, std::abs(rep.h_squared.imag()) / std::abs(rep.h_squared));
    if (!(rep.h_squared.real() < 0.0)) negative = false;
  }
  r.measured = d_open;
  r.threshold = ctx["cusp_derivative"];
  r.passed = relation < ctx["cusp_relation"] && model < 1e-6 && d_open > ctx["cusp_derivative"] &&
             cross < ctx["cusp_cross"] && negative;
  r.metrics["canonical_relation_residual"] = relation;
  r.metrics["canonical_slope_error"] = model;
  r.metrics["cross_derivative"] = cross;
  r.metrics["h_squared_relative_imag"] = h2_imag;
  r.metrics["h_squared_negative"] = negative ? 1.0 : 0.0;
  r.detail = "near (2,2,2+2i); meridian coordinates through the holomorphic extension";
  return r;
}

CriterionResult cocycle(const Context& ctx) {
  CriterionResult r;
  std::mt19937_64 rng(ctx.seed);
  std::uniform_int_distribution<int> len(1, 4);
  std::vector<std::pair<Word, Word>> pairs;
  for (int k = 0; k < 20; ++k) {
    pairs.push_back({random_word(rng, "ab", len(rng)), random_word(rng, "ab", len(rng))});
  }
  double worst = std::numeric_limits<double>::infinity();
  for (auto [x, t0] : {std::pair{2.5, 0.2}, std::pair{3.0, 0.1}, std::pair{2.3, 0.3}}) {
    RepFamily fam = quakebend_family(matrices_from_traces(rectangular_seed(x)), t0);
    worst = std::min(worst, cocycle_convergence(fam, pairs, 1e-2, 3).exponent);
  }
  r.measured = worst;
  r.threshold = ctx["cocycle_exponent"];
  r.passed = worst >= r.threshold;
  r.detail = "fitted step-halving exponent, quakebend families from 3 seeds";
  return r;
}

struct Entry {
  const char* name;
  const char* title;
  CriterionResult (*run)(const Context&);
};

const Entry kCriteria[] = {
    {"round-trip", "Trace-length round trip", round_trip},
    {"local-pleating", "Local pleating on the grid", local_pleating},
    {"real-trace", "Convex implies real trace", real_trace},
    {"doubling", "Doubling soundness", doubling},
    {"cone", "Cone characterization", cone},
    {"symmetry", "Mirror symmetry of traces", symmetry},
    {"jacobian", "Jacobian nonsingularity and Fuchsian degeneration", jacobian},
    {"posdef", "Hessian structure of d l / d phi", posdef},
    {"schlafli", "Schlafli exactness and concavity", schlafli},
    {"injectivity", "Injectivity probes", injectivity},
    {"cusp", "Cusp derivatives", cusp},
    {"cocycle", "Cocycle condition", cocycle},
};

}  // namespace

std::map<std::string, double> suite_tolerances() {
  return {
      {"round_trip", 1e-10},    {"planarity", 1e-8},       {"real_trace", 1e-9},
      {"relation", 1e-9},       {"re_mu", 1e-8},           {"cone_angle", 1e-6},
      {"symmetry", 1e-8},       {"det_min", 1e-3},         {"det_limit", 1e-4},
      {"hessian_symmetry", 1e-4}, {"volume_path", 1e-5},   {"concavity_margin", 3.0},
      {"injectivity", 1e-8},    {"cusp_relation", 1e-12},  {"cusp_derivative", 1e-3},
      {"cusp_cross", 1e-6},     {"cocycle_exponent", 1.8},
  };
}

std::vector<std::string> suite_criteria() {
  std::vector<std::string> out;
  for (const auto& e : kCriteria) out.emplace_back(e.name);
  return out;
}

std::vector<CriterionResult> run_suite(const SuiteConfig& config,
                                       const std::function<void(const CriterionResult&)>& on_result) {
  Context ctx{suite_tolerances(), config.seed, config.threads};
  for (const auto& [k, v] : config.tolerances) {
    if (!ctx.tol.count(k)) throw Error(ErrorKind::InvalidArgument, "unknown tolerance " + k);
    ctx.tol[k] = v;
  }
  std::vector<CriterionResult> out;
  for (const auto& e : kCriteria) {
    if (!config.filter.empty() && std::string(e.name).find(config.filter) == std::string::npos) continue;
    auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = e.run(ctx);
    } catch (const std::exception& ex) {
      r.passed = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.name = e.name;
    r.title = e.title;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (on_result) on_result(r);
    out.push_back(r);
  }
  return out;
}

}  // namespace pleat
