#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "csv.hpp"
#include "pleat/doubling.hpp"
#include "pleat/error.hpp"
#include "pleat/lengthmap.hpp"
#include "pleat/parallel.hpp"
#include "pleat/suite.hpp"

using namespace pleat;
using namespace pleatlab;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSafeMin = 2.0;
constexpr double kSafeMax = 4.0;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Settings = std::map<std::string, std::vector<std::string>>;

// ---- parsing helpers ----

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

double to_double(const std::string& key, const std::string& s) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a number: '" + s + "'");
  }
}

long to_long(const std::string& key, const std::string& s) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": not an integer: '" + s + "'");
  }
}

bool to_bool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError(key + ": not a boolean: '" + s + "'");
}

std::array<double, 2> to_pair(const std::string& key, const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 2) throw ConfigError(key + ": expected X,Y but got '" + s + "'");
  return {to_double(key, parts[0]), to_double(key, parts[1])};
}

struct Axis {
  double lo, hi, step;

  std::vector<double> values() const {
    std::vector<double> out;
    long n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
    return out;
  }
};

Axis to_axis(const std::string& s) {
  auto parts = split(s, ':');
  if (parts.size() != 3) throw ConfigError("grid: expected MIN:MAX:STEP but got '" + s + "'");
  Axis a{to_double("grid", parts[0]), to_double("grid", parts[1]), to_double("grid", parts[2])};
  if (!(a.step > 0.0) || a.hi < a.lo) throw ConfigError("grid: need MIN <= MAX and STEP > 0");
  return a;
}

// Flat "key = value" lines; '#' starts a comment.
Settings read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  Settings out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    out[key].push_back(value);
  }
  return out;
}

const std::set<std::string> kKeys = {"out",   "grid",  "point", "root",    "assert",  "threads",
                                     "force", "seed",  "filter", "samples", "t-end",  "path",
                                     "steps", "words", "fd-step"};

// ---- run configuration ----

struct RunConfig {
  std::string command;
  std::optional<std::string> out;
  std::vector<std::array<double, 2>> points;
  bool have_points = false;
  int root = 0;
  std::vector<std::string> asserts;
  unsigned threads = 0;
  bool force = false;
  std::uint64_t seed = 20240601;
  std::string filter;
  int samples = 20;
  double t_end = 0.9;
  std::vector<std::array<double, 2>> path;
  int steps = 32;
  int words = 100;
  double fd_step = 1e-5;
  Tolerances plaque_tol;
  std::map<std::string, double> suite_tol;
};

double& plaque_tol_slot(Tolerances& t, const std::string& name) {
  if (name == "real_trace") return t.real_trace;
  if (name == "planarity") return t.planarity;
  if (name == "parabolic") return t.parabolic;
  if (name == "convex") return t.convex;
  if (name == "fuchsian") return t.fuchsian;
  throw ConfigError("unknown tolerance '" + name + "'");
}

void check_safe(const RunConfig& cfg, double x, double y) {
  if (cfg.force) return;
  auto inside = [](double v) { return v > kSafeMin && v <= kSafeMax; };
  if (!inside(x) || !inside(y)) {
    throw ConfigError("point (" + num(x) + ", " + num(y) +
                      ") outside the safe region (2, 4]^2; pass --force to override");
  }
}

RunConfig build_config(const std::string& command, Settings s) {
  RunConfig cfg;
  cfg.command = command;
  auto last = [&](const std::string& k) -> std::optional<std::string> {
    auto it = s.find(k);
    if (it == s.end() || it->second.empty()) return std::nullopt;
    return it->second.back();
  };
  if (auto v = last("force")) cfg.force = to_bool("force", *v);
  if (auto v = last("out")) cfg.out = *v;
  if (auto v = last("threads")) {
    long n = to_long("threads", *v);
    if (n < 0) throw ConfigError("threads must be nonnegative");
    cfg.threads = static_cast<unsigned>(n);
  }
  if (auto v = last("seed")) {
    long n = to_long("seed", *v);
    if (n < 0) throw ConfigError("seed must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(n);
  }
  if (auto v = last("filter")) cfg.filter = *v;
  if (auto v = last("root")) {
    if (*v == "top") cfg.root = 0;
    else if (*v == "bottom") cfg.root = 1;
    else throw ConfigError("root must be top or bottom");
  }
  if (auto v = last("samples")) {
    cfg.samples = static_cast<int>(to_long("samples", *v));
    if (cfg.samples < 1) throw ConfigError("samples must be positive");
  }
  if (auto v = last("t-end")) {
    cfg.t_end = to_double("t-end", *v);
    if (!(cfg.t_end > 0.0 && cfg.t_end < 1.0)) throw ConfigError("t-end must lie in (0, 1)");
  }
  if (auto v = last("steps")) {
    cfg.steps = static_cast<int>(to_long("steps", *v));
    if (cfg.steps < 1) throw ConfigError("steps must be positive");
  }
  if (auto v = last("words")) {
    cfg.words = static_cast<int>(to_long("words", *v));
    if (cfg.words < 1) throw ConfigError("words must be positive");
  }
  if (auto v = last("fd-step")) {
    cfg.fd_step = to_double("fd-step", *v);
    if (!(cfg.fd_step > 0.0)) throw ConfigError("fd-step must be positive");
  }
  for (const auto& a : s["assert"]) {
    for (const auto& name : split(a, ',')) {
      if (name != "convex" && name != "piecewise-geodesic" && name != "planar" && name != "fuchsian") {
        throw ConfigError("unknown assertion '" + name + "'");
      }
      cfg.asserts.push_back(name);
    }
  }

  // Tolerances: "tol.NAME" config keys and --tol NAME=VALUE.
  cfg.suite_tol = suite_tolerances();
  for (const auto& [key, values] : s) {
    if (key.rfind("tol.", 0) != 0) continue;
    std::string name = key.substr(4);
    for (const auto& v : values) {
      double val = to_double(key, v);
      if (!(val > 0.0)) throw ConfigError("tolerance " + name + " must be positive");
      if (command == "verify-suite") {
        if (!cfg.suite_tol.count(name)) throw ConfigError("unknown tolerance '" + name + "'");
        cfg.suite_tol[name] = val;
      } else {
        plaque_tol_slot(cfg.plaque_tol, name) = val;
      }
    }
  }

  if (auto v = last("point")) {
    cfg.points.push_back(to_pair("point", *v));
    cfg.have_points = true;
  }
  if (auto v = last("grid")) {
    if (cfg.have_points) throw ConfigError("give either point or grid, not both");
    auto axes = split(*v, ',');
    if (axes.size() != 2) throw ConfigError("grid: expected XMIN:XMAX:STEP,YMIN:YMAX:STEP");
    Axis ax = to_axis(axes[0]), ay = to_axis(axes[1]);
    for (double x : ax.values()) {
      for (double y : ay.values()) cfg.points.push_back({x, y});
    }
    cfg.have_points = true;
  }
  if (auto v = last("path")) {
    for (const auto& vertex : split(*v, ';')) cfg.path.push_back(to_pair("path", vertex));
    if (cfg.path.empty()) throw ConfigError("path needs at least one vertex");
  }
  for (const auto& p : cfg.points) check_safe(cfg, p[0], p[1]);
  for (const auto& p : cfg.path) check_safe(cfg, p[0], p[1]);
  return cfg;
}

// ---- rows ----

TraceCoords coords_at(double x, double y, int root) {
  auto cands = pleating_candidates(x, y);
  return cands[static_cast<std::size_t>(root) % cands.size()].coords;
}

void add_note(std::string& note, const std::string& s) {
  if (s.empty()) return;
  if (!note.empty()) note += "; ";
  note += s;
}

const std::vector<std::string> kCertifyColumns = {
    "x", "y", "z_re", "z_im", "marking", "real_trace_residual", "planarity_a", "planarity_b",
    "parabolic_residual", "theta_a", "theta_b", "l_a", "l_b", "m_a_trace_re", "m_a_trace_im",
    "m_b_trace_re", "m_b_trace_im", "m_p_trace_re", "m_p_trace_im", "cone_a", "cone_b",
    "jacobian_det_abs", "piecewise_geodesic", "convex", "fuchsian", "degenerate", "note"};

struct CertifyRow {
  Row cells;
  Certification cert;
  bool degenerate = false;
};

CertifyRow certify_row(const TraceCoords& t, const Tolerances& tol) {
  CertifyRow out;
  Row& r = out.cells;
  std::string note;
  r = {num(t.x.real()), num(t.y.real()), num(t.z.real()), num(t.z.imag())};
  Certification c;
  try {
    c = certify(t, tol);
  } catch (const Error& e) {
    out.degenerate = true;
    r.resize(kCertifyColumns.size());
    r[22] = r[23] = r[24] = flag(false);
    r[25] = flag(true);
    r[26] = e.what();
    return out;
  }
  out.cert = c;
  double real_res = 0.0;
  for (const auto& cc : c.curves) real_res = std::max(real_res, cc.real_trace_residual);
  r.push_back(to_string(c.marking));
  r.push_back(num(real_res));
  r.push_back(num(c.curve(Curve::a).planarity_residual));
  r.push_back(num(c.curve(Curve::b).planarity_residual));
  r.push_back(num(c.parabolic_residual));
  bool thetas = c.is_piecewise_geodesic;
  r.push_back(thetas ? num(c.theta(Curve::a)) : "");
  r.push_back(thetas ? num(c.theta(Curve::b)) : "");
  try {
    auto l = lengths_of(t);
    r.push_back(num(l[0]));
    r.push_back(num(l[1]));
  } catch (const Error& e) {
    r.insert(r.end(), 2, "");
    out.degenerate = true;
    add_note(note, e.what());
  }
  std::optional<std::vector<MeridianData>> mer;
  if (c.is_convex || c.is_fuchsian) {
    try {
      mer = meridian_data(doubled_holonomy(matrices_from_traces(c.coords), c));
    } catch (const Error& e) {
      add_note(note, e.what());
    }
  }
  if (mer) {
    for (const auto& m : *mer) {
      r.push_back(num(m.trace.real()));
      r.push_back(num(m.trace.imag()));
    }
    r.push_back(num((*mer)[0].cone_angle));
    r.push_back(num((*mer)[1].cone_angle));
  } else {
    r.insert(r.end(), 8, "");
  }
  try {
    r.push_back(num(std::abs(holo_length_jacobian(t).determinant())));
  } catch (const Error& e) {
    r.push_back("");
    add_note(note, e.what());
  }
  r.push_back(flag(c.is_piecewise_geodesic));
  r.push_back(flag(c.is_convex));
  r.push_back(flag(c.is_fuchsian));
  r.push_back(flag(out.degenerate));
  add_note(note, c.reason);
  r.push_back(note);
  return out;
}

bool row_satisfies(const CertifyRow& row, const std::string& name, const Tolerances& tol) {
  const Certification& c = row.cert;
  if (row.degenerate) return false;
  if (name == "convex") return c.is_convex;
  if (name == "piecewise-geodesic") return c.is_piecewise_geodesic;
  if (name == "fuchsian") return c.is_fuchsian;
  return c.is_piecewise_geodesic && c.curve(Curve::a).planarity_residual < tol.planarity &&
         c.curve(Curve::b).planarity_residual < tol.planarity;
}

// ---- output ----

struct Output {
  std::ofstream file;
  std::ostream* os = &std::cout;

  explicit Output(const std::optional<std::string>& path) {
    if (path) {
      file.open(*path, std::ios::binary);
      if (!file) throw ConfigError("cannot write " + *path);
      os = &file;
    }
  }
};

void write_table(const RunConfig& cfg, const std::vector<std::string>& header,
                 const std::vector<Row>& rows) {
  Output out(cfg.out);
  write_row(*out.os, header);
  for (const auto& r : rows) write_row(*out.os, r);
}

int finish_asserts(const RunConfig& cfg, const std::vector<CertifyRow>& rows) {
  int failures = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& a : cfg.asserts) {
      if (!row_satisfies(rows[i], a, cfg.plaque_tol)) {
        std::cerr << "assertion " << a << " failed at row " << i + 1 << "\n";
        ++failures;
      }
    }
  }
  return failures == 0 ? 0 : 1;
}

// ---- commands ----

std::vector<CertifyRow> certify_points(const RunConfig& cfg) {
  return parallel_map(cfg.points.size(), [&](std::size_t i) {
    const auto& p = cfg.points[i];
    TraceCoords t;
    try {
      t = coords_at(p[0], p[1], cfg.root);
    } catch (const Error& e) {
      CertifyRow row;
      row.degenerate = true;
      row.cells.assign(kCertifyColumns.size(), "");
      row.cells[0] = num(p[0]);
      row.cells[1] = num(p[1]);
      row.cells[22] = row.cells[23] = row.cells[24] = flag(false);
      row.cells[25] = flag(true);
      row.cells[26] = e.what();
      return row;
    }
    return certify_row(t, cfg.plaque_tol);
  }, cfg.threads);
}

int cmd_certify(const RunConfig& cfg, bool sweep) {
  RunConfig run = cfg;
  if (!run.have_points) {
    if (!sweep) throw ConfigError("certify needs --point or --grid");
    for (double x : Axis{2.05, 2.6, 0.05}.values()) {
      for (double y : Axis{2.05, 2.6, 0.05}.values()) run.points.push_back({x, y});
    }
  }
  auto rows = certify_points(run);
  std::vector<Row> cells;
  for (const auto& r : rows) cells.push_back(r.cells);
  write_table(run, kCertifyColumns, cells);
  int status = finish_asserts(run, rows);
  if (sweep && std::all_of(rows.begin(), rows.end(), [](const CertifyRow& r) { return r.degenerate; })) {
    std::cerr << "every sweep row is degenerate\n";
    status = 1;
  }
  return status;
}

std::vector<std::string> with_path_columns() {
  std::vector<std::string> h = {"t"};
  h.insert(h.end(), kCertifyColumns.begin(), kCertifyColumns.end());
  h.push_back("delta_volume");
  return h;
}

int cmd_trace_ray(const RunConfig& cfg) {
  std::array<double, 2> start = cfg.points.empty() ? std::array<double, 2>{2.3, 2.3} : cfg.points[0];
  TraceCoords seed = pleating_point(start[0], start[1]);
  Certification c0 = certify(seed, cfg.plaque_tol);
  if (!c0.is_convex) throw Error(ErrorKind::InvalidArgument, "ray seed is not convex");
  std::array<double, 2> dir{kPi - c0.theta(Curve::a), kPi - c0.theta(Curve::b)};
  ConcavityReport rep = concavity_probe(seed, dir, cfg.t_end, cfg.samples, 8);
  auto path = continue_angle_path(seed, pleating_ray({c0.theta(Curve::a), c0.theta(Curve::b)}), rep.t);
  std::vector<Row> rows;
  bool monotone = true;
  for (std::size_t k = 0; k < path.size(); ++k) {
    Row r = {num(rep.t[k])};
    Row body = certify_row(path[k].coords, cfg.plaque_tol).cells;
    r.insert(r.end(), body.begin(), body.end());
    r.push_back(num(rep.volume[k]));
    if (k > 0 && !(rep.volume[k] > rep.volume[k - 1])) monotone = false;
    rows.push_back(r);
  }
  write_table(cfg, with_path_columns(), rows);
  if (!monotone) {
    std::cerr << "cumulative volume change is not increasing along the ray\n";
    return 1;
  }
  return 0;
}

int cmd_volume(const RunConfig& cfg) {
  if (cfg.path.empty()) throw ConfigError("volume needs --path X0,Y0;X1,Y1;...");
  std::vector<std::array<double, 2>> vertices{cfg.path[0]};
  for (const auto& v : cfg.path) {
    if (v != vertices.back()) vertices.push_back(v);
  }
  std::vector<TraceCoords> pts = vertices.size() == 1
                                     ? std::vector<TraceCoords>{pleating_point(vertices[0][0], vertices[0][1])}
                                     : polyline_path(vertices, cfg.steps);
  auto certs = parallel_map(pts.size(), [&](std::size_t i) { return certify_row(pts[i], cfg.plaque_tol); },
                            cfg.threads);
  std::vector<Row> rows;
  double vol = 0.0;
  std::array<double, 2> prev_l{}, prev_theta{};
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Certification& c = certs[k].cert;
    if (!c.is_convex) {
      throw Error(ErrorKind::UncertifiedPathPoint, "path leaves the convex locus at sample " + std::to_string(k));
    }
    auto l = lengths_of(pts[k]);
    std::array<double, 2> th{c.theta(Curve::a), c.theta(Curve::b)};
    if (k > 0) {
      for (int i = 0; i < 2; ++i) vol += 0.5 * (l[i] + prev_l[i]) * (th[i] - prev_theta[i]);
    }
    prev_l = l;
    prev_theta = th;
    double t = pts.size() == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(pts.size() - 1);
    Row r = {num(t)};
    r.insert(r.end(), certs[k].cells.begin(), certs[k].cells.end());
    r.push_back(num(vol));
    rows.push_back(r);
  }
  write_table(cfg, with_path_columns(), rows);
  return 0;
}

int cmd_double(const RunConfig& cfg) {
  if (!cfg.have_points) throw ConfigError("double needs --point or --grid");
  std::vector<std::string> header = {"x", "y", "z_re", "z_im", "marking", "theta_a", "theta_b",
                                     "relation_residual", "lift_residual", "lift_consistent",
                                     "commutation_residual", "symmetry_residual"};
  for (const char* m : {"a", "b", "p"}) {
    for (const char* f : {"trace_re", "trace_im", "mu_re", "mu_im", "cone_angle"}) {
      header.push_back(std::string("m_") + m + "_" + f);
    }
  }
  header.push_back("degenerate");
  header.push_back("note");
  const DoubledPresentation pres = build_presentation();
  auto rows = parallel_map(cfg.points.size(), [&](std::size_t i) {
    const auto& p = cfg.points[i];
    Row r = {num(p[0]), num(p[1])};
    try {
      TraceCoords t = coords_at(p[0], p[1], cfg.root);
      Certification c = certify(t, cfg.plaque_tol);
      if (!c.is_convex && !c.is_fuchsian) throw Error(ErrorKind::NotPiecewiseGeodesic, c.reason);
      DoubledHolonomy rho = doubled_holonomy(matrices_from_traces(c.coords), c);
      double rel = 0.0;
      for (const auto& rl : pres.relations) rel = std::max(rel, relation_residual(rho, rl));
      LiftReport lift = lift_audit(rho);
      auto mer = meridian_data(rho);
      double comm = 0.0;
      for (const auto& m : mer) comm = std::max(comm, m.commutation_residual);
      std::mt19937_64 rng(cfg.seed + i);
      std::uniform_int_distribution<int> len(1, 10);
      std::vector<Word> words;
      for (int k = 0; k < cfg.words; ++k) words.push_back(random_word(rng, "abcde", len(rng)));
      r.insert(r.end(), {num(t.z.real()), num(t.z.imag()), to_string(c.marking),
                         num(c.theta(Curve::a)), num(c.theta(Curve::b)), num(rel),
                         num(lift.max_residual), flag(lift.consistent), num(comm),
                         num(symmetry_audit(rho, words))});
      for (const auto& m : mer) {
        r.push_back(num(m.trace.real()));
        r.push_back(num(m.trace.imag()));
        r.push_back(m.mu ? num(m.mu->value.real()) : "");
        r.push_back(m.mu ? num(m.mu->value.imag()) : "");
        r.push_back(num(m.cone_angle));
      }
      r.push_back(flag(false));
      r.push_back(c.reason);
    } catch (const Error& e) {
      r.resize(header.size());
      r[header.size() - 2] = flag(true);
      r[header.size() - 1] = e.what();
    }
    return r;
  }, cfg.threads);
  write_table(cfg, header, rows);
  return 0;
}

int cmd_jacobian(const RunConfig& cfg) {
  if (!cfg.have_points) throw ConfigError("jacobian needs --point or --grid");
  const std::vector<std::string> header = {
      "x", "y", "z_re", "z_im", "det_re", "det_im", "det_abs", "closed_form_gap",
      "cross_check_discrepancy", "dl_dphi_11", "dl_dphi_12", "dl_dphi_21", "dl_dphi_22",
      "dl_dphi_asymmetry", "dl_dphi_min_eigenvalue", "halving_discrepancy", "degenerate", "note"};
  auto rows = parallel_map(cfg.points.size(), [&](std::size_t i) {
    const auto& p = cfg.points[i];
    Row r = {num(p[0]), num(p[1])};
    std::string note;
    try {
      TraceCoords t = coords_at(p[0], p[1], cfg.root);
      JacobianMatrix j = holo_length_jacobian(t);
      Complex det = j.determinant();
      r.insert(r.end(), {num(t.z.real()), num(t.z.imag()), num(det.real()), num(det.imag()),
                         num(std::abs(det)), num(std::abs(det - holo_length_determinant(t))),
                         num(j.cross_check_discrepancy)});
      try {
        JacobianMatrix h = dl_dphi(t, cfg.fd_step);
        Eigen::Matrix2d m = h.real();
        Eigen::Matrix2d sym = 0.5 * (m + m.transpose());
        double eig = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(sym).eigenvalues()(0);
        r.insert(r.end(), {num(m(0, 0)), num(m(0, 1)), num(m(1, 0)), num(m(1, 1)),
                           num(std::abs(m(0, 1) - m(1, 0))), num(eig), num(h.halving_discrepancy)});
      } catch (const Error& e) {
        r.insert(r.end(), 7, "");
        note = e.what();
      }
      r.push_back(flag(!note.empty()));
      r.push_back(note);
    } catch (const Error& e) {
      r.resize(header.size());
      r[header.size() - 2] = flag(true);
      r[header.size() - 1] = e.what();
    }
    return r;
  }, cfg.threads);
  write_table(cfg, header, rows);
  return 0;
}

int cmd_verify_suite(const RunConfig& cfg) {
  SuiteConfig sc;
  sc.tolerances = cfg.suite_tol;
  sc.seed = cfg.seed;
  sc.filter = cfg.filter;
  sc.threads = cfg.threads;
  if (!sc.filter.empty()) {
    auto names = suite_criteria();
    if (std::none_of(names.begin(), names.end(),
                     [&](const std::string& n) { return n.find(sc.filter) != std::string::npos; })) {
      throw ConfigError("filter '" + sc.filter + "' matches no criterion");
    }
  }
  nlohmann::ordered_json report;
  report["seed"] = sc.seed;
  report["filter"] = sc.filter;
  report["tolerances"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : sc.tolerances) report["tolerances"][k] = v;
  report["criteria"] = nlohmann::ordered_json::array();
  bool all = true;
  run_suite(sc, [&](const CriterionResult& r) {
    std::cerr << (r.passed ? "PASS " : "FAIL ") << r.name << "  measured=" << r.measured
              << " threshold=" << r.threshold << "  " << r.detail << "\n";
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["title"] = r.title;
    j["passed"] = r.passed;
    j["measured"] = r.measured;
    j["threshold"] = r.threshold;
    j["metrics"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.metrics) j["metrics"][k] = v;
    j["detail"] = r.detail;
    j["seconds"] = r.seconds;
    report["criteria"].push_back(j);
    all = all && r.passed;
  });
  report["passed"] = all;
  Output out(cfg.out);
  *out.os << report.dump(2) << "\n";
  return all ? 0 : 1;
}

// ---- command line ----

struct Subcommand {
  CLI::App* app;
  std::map<std::string, CLI::Option*> options;
  std::vector<std::string> tol;
  std::vector<std::string> asserts;
  std::string config;
  std::map<std::string, std::string> values;
  bool force = false;
};

void add_option(Subcommand& sc, const std::string& name, const std::string& help) {
  sc.options[name] = sc.app->add_option("--" + name, sc.values[name], help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pleatlab: pleating varieties and doubled cone-manifold holonomies"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"certify", "certify structures at a point or over a grid"},
      {"sweep", "certification table over a grid"},
      {"trace-ray", "follow the pleating ray toward the maximal cusp"},
      {"volume", "volume change along a polyline in (x, y)"},
      {"double", "doubled holonomy audits"},
      {"jacobian", "length-map Jacobians and d l / d phi"},
      {"verify-suite", "run the acceptance criteria"}};
  std::map<std::string, Subcommand> subs;
  for (const auto& [name, help] : commands) {
    Subcommand& sc = subs[name];
    sc.app = app.add_subcommand(name, help);
    sc.app->add_option("--config", sc.config, "flat key = value file");
    sc.options["tol"] = sc.app->add_option("--tol", sc.tol, "tolerance override NAME=VALUE");
    sc.options["force"] = sc.app->add_flag("--force", sc.force, "allow points outside the safe region");
    add_option(sc, "out", "output path (default stdout)");
    add_option(sc, "threads", "worker threads (0: hardware)");
    if (name == "verify-suite") {
      add_option(sc, "seed", "random seed");
      add_option(sc, "filter", "run criteria whose name contains this");
      continue;
    }
    add_option(sc, "grid", "XMIN:XMAX:STEP,YMIN:YMAX:STEP");
    add_option(sc, "point", "X,Y");
    add_option(sc, "root", "top or bottom");
    if (name == "certify" || name == "sweep") {
      sc.options["assert"] = sc.app->add_option("--assert", sc.asserts,
                                                "convex, piecewise-geodesic, planar or fuchsian");
    }
    if (name == "trace-ray") {
      add_option(sc, "samples", "number of ray intervals");
      add_option(sc, "t-end", "final ray parameter in (0, 1)");
    }
    if (name == "volume") {
      add_option(sc, "path", "X0,Y0;X1,Y1;...");
      add_option(sc, "steps", "samples per polyline leg");
    }
    if (name == "double") {
      add_option(sc, "seed", "random seed for word sampling");
      add_option(sc, "words", "number of random words in the symmetry audit");
    }
    if (name == "jacobian") add_option(sc, "fd-step", "angle step for d l / d phi");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string command;
  for (auto& [name, sc] : subs) {
    if (sc.app->parsed()) command = name;
  }
  Subcommand& sc = subs[command];
  try {
    Settings settings;
    if (!sc.config.empty()) {
      for (auto& [key, values] : read_config(sc.config)) {
        if (key.rfind("tol.", 0) != 0 && !kKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");
        auto it = sc.options.find(key);
        if (key.rfind("tol.", 0) != 0 && it == sc.options.end()) continue;  // belongs to another command
        settings[key] = values;
      }
    }
    // Command-line values override the file.
    for (const auto& [key, opt] : sc.options) {
      if (opt->count() == 0 || key == "tol" || key == "assert" || key == "force") continue;
      settings[key] = {sc.values[key]};
    }
    if (sc.force) settings["force"] = {"true"};
    if (!sc.asserts.empty()) settings["assert"] = sc.asserts;
    for (const auto& t : sc.tol) {
      auto eq = t.find('=');
      if (eq == std::string::npos) throw ConfigError("--tol expects NAME=VALUE");
      settings["tol." + trim(t.substr(0, eq))] = {trim(t.substr(eq + 1))};
    }
    RunConfig cfg = build_config(command, settings);

    if (command == "certify") return cmd_certify(cfg, false);
    if (command == "sweep") return cmd_certify(cfg, true);
    if (command == "trace-ray") return cmd_trace_ray(cfg);
    if (command == "volume") return cmd_volume(cfg);
    if (command == "double") return cmd_double(cfg);
    if (command == "jacobian") return cmd_jacobian(cfg);
    return cmd_verify_suite(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return e.kind() == ErrorKind::InvalidArgument ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
