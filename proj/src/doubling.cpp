#include "pleat/doubling.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "pleat/error.hpp"

namespace pleat {

namespace {

constexpr double kPi = std::numbers::pi;

int letter_index(char c) {
  if (c < 'a' || c > 'e') throw Error(ErrorKind::InvalidArgument, std::string("bad letter ") + c);
  return c - 'a';
}

MoebiusMap evaluate_with(const std::array<MoebiusMap, 5>& gens, const Word& w) {
  return evaluate_word(w, [&](char c) { return gens[letter_index(c)]; });
}

double distance_to_identity(const MoebiusMap& m, int sign) {
  return m.distance(sign > 0 ? MoebiusMap::identity() : -MoebiusMap::identity());
}

}  // namespace

DoubledPresentation build_presentation() {
  DoubledPresentation p;
  p.generators = "abcde";
  p.relations = {
      {Word("a"), Word("c"), "amalgam: a"},
      {Word("baB"), Word("dcD"), "amalgam: bab^-1"},
      {Word("Ebe"), Word("d"), "hnn: b"},
      {Word("EabAe"), Word("cdC"), "hnn: aba^-1"},
  };
  p.amalgam_relations = 2;
  p.hnn_relations = 2;
  p.meridians = {{
      {Curve::a, Word("bD"), Word("baB"), Word("b"), Word("d"), 0, false},
      {Curve::b, Word("aeCE"), Word("abA"), Word("a"), Word("ecE"), 1, false},
      {Curve::commutator, Word("e"), Word("abAB"), Word("b"), Word("Ebe"), 0, true},
  }};
  return p;
}

Word tau(const Word& w) {
  return w.substitute([](char c) {
    switch (c) {
      case 'a': return Word("c");
      case 'b': return Word("d");
      case 'c': return Word("a");
      case 'd': return Word("b");
      case 'e': return Word("E");
    }
    throw Error(ErrorKind::InvalidArgument, std::string("bad letter ") + c);
  });
}

MoebiusMap DoubledHolonomy::image(char letter) const {
  if (letter >= 'A' && letter <= 'E') return generators[letter - 'A'].inverse();
  return generators[letter_index(letter)];
}

MoebiusMap DoubledHolonomy::operator()(const Word& w) const { return evaluate_with(generators, w); }

DoubledHolonomy doubled_holonomy(const RepPair& sigma, const Certification& cert) {
  if (!cert.is_piecewise_geodesic) {
    throw Error(ErrorKind::NotPiecewiseGeodesic, "doubling needs plaque circles");
  }
  Tolerances loose;
  loose.planarity = 1.0;
  Plaque top = plaque_circle(sigma, Side::top, loose);
  Plaque bottom = plaque_circle(sigma, Side::bottom, loose);
  DoubledHolonomy rho;
  rho.source = sigma;
  rho.j = reflect_in_circle(top.circle);
  rho.j1 = reflect_in_circle(bottom.circle);
  const MoebiusMap& j = *rho.j;
  const MoebiusMap& j1 = *rho.j1;
  rho.generators = {sigma.a, sigma.b, j * sigma.a * j.inverse(), j * sigma.b * j.inverse(),
                    j1 * j};
  rho.thetas = {cert.theta(Curve::a), cert.theta(Curve::b)};
  rho.geometric = true;
  return rho;
}

DoubledHolonomy extend_holonomy(const RepPair& sigma, std::optional<Complex> e_trace_reference) {
  const MoebiusMap& a = sigma.a;
  const MoebiusMap& b = sigma.b;
  MoebiusMap g = normalize_to_axis(a);
  MoebiusMap bg = g * b * g.inverse();
  if (std::abs(bg.a()) < 1e-14 || std::abs(bg.d()) < 1e-14) {
    throw Error(ErrorKind::DegenerateNormalization, "B has a vanishing diagonal entry");
  }
  Complex dd = bg.d() / bg.a();
  MoebiusMap d = g.inverse() * MoebiusMap::unimodular(dd, 0.0, 0.0, 1.0 / dd) * g;
  MoebiusMap b_hat = b * d;

  // X E - E Xhat = 0 for the two generator pairs, unknowns (e11, e12, e21, e22).
  Eigen::Matrix<std::complex<double>, 8, 4> m = Eigen::Matrix<std::complex<double>, 8, 4>::Zero();
  const MoebiusMap xs[2] = {b, a * b * a.inverse()};
  const MoebiusMap xh[2] = {b_hat, a * b_hat * a.inverse()};
  for (int k = 0; k < 2; ++k) {
    Eigen::Matrix2cd x = to_matrix(xs[k]);
    Eigen::Matrix2cd y = to_matrix(xh[k]);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        int row = 4 * k + 2 * i + j;
        for (int l = 0; l < 2; ++l) {
          m(row, 2 * l + j) += x(i, l);
          m(row, 2 * i + l) -= y(l, j);
        }
      }
    }
  }
  Eigen::JacobiSVD<Eigen::Matrix<std::complex<double>, 8, 4>> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(2) < 1e-8 * sv(0)) {
    throw Error(ErrorKind::DegenerateNormalization, "conjugator is not unique");
  }
  Eigen::Vector4cd v = svd.matrixV().col(3);
  MoebiusMap e(v(0), v(1), v(2), v(3));
  Complex ref = e_trace_reference.value_or(Complex(1.0));
  if ((e.trace() * std::conj(ref)).real() < 0.0) e = -e;

  DoubledHolonomy rho;
  rho.source = sigma;
  rho.generators = {a, b, a, b_hat, e};
  rho.thetas = {std::nan(""), std::nan("")};
  rho.geometric = false;
  return rho;
}

double relation_residual(const DoubledHolonomy& rho, const Relation& rel) {
  return rho(rel.lhs).distance(rho(rel.rhs));
}

std::vector<MeridianData> meridian_data(const DoubledHolonomy& rho) {
  DoubledPresentation pres = build_presentation();
  std::vector<MeridianData> out;
  for (const auto& mw : pres.meridians) {
    MeridianData md;
    md.curve = mw.curve;
    md.meridian = mw.meridian;
    md.longitude = mw.longitude;
    MoebiusMap m = rho(mw.meridian);
    MoebiusMap l = rho(mw.longitude);
    md.trace = m.trace();
    md.longitude_trace = l.trace();
    md.commutation_residual = (m * l).distance(l * m);
    double scale = std::max(1.0, m.norm() * l.norm());
    if (md.commutation_residual > 1e-9 * scale) {
      throw Error(ErrorKind::NonCommutingMeridian,
                  std::string("meridian of ") + to_string(mw.curve) + " does not commute");
    }
    double theta = kPi;
    if (mw.curve == Curve::a) theta = rho.thetas[0];
    if (mw.curve == Curve::b) theta = rho.thetas[1];
    double target = 2.0 * (kPi - theta);
    if (std::min(distance_to_identity(m, 1), distance_to_identity(m, -1)) < 1e-8) {
      md.trivial = true;
      md.cone_angle = 2.0 * kPi;
    } else if (std::abs(md.trace - 2.0) < kParabolicTol || std::abs(md.trace + 2.0) < kParabolicTol) {
      md.parabolic = true;
      md.cone_angle = 0.0;
    } else {
      md.mu = complex_length(m);
      double phi = 2.0 * std::acos(std::min(1.0, std::abs(md.trace) / 2.0));
      double alt = 2.0 * kPi - phi;
      md.cone_angle = (std::isfinite(target) && std::abs(alt - target) < std::abs(phi - target))
                          ? alt
                          : phi;
    }
    out.push_back(md);
  }
  return out;
}

double symmetry_audit(const DoubledHolonomy& rho, const std::vector<Word>& words) {
  double worst = 0.0;
  for (const auto& w : words) {
    worst = std::max(worst, std::abs(rho(tau(w)).trace() - std::conj(rho(w).trace())));
  }
  return worst;
}

LiftReport lift_audit(const DoubledHolonomy& rho, double tol) {
  DoubledPresentation pres = build_presentation();
  LiftReport best;
  bool found = false;
  int best_flips = 4;
  for (int mask = 0; mask < 8; ++mask) {
    std::array<int, 3> signs = {mask & 1 ? -1 : 1, mask & 2 ? -1 : 1, mask & 4 ? -1 : 1};
    std::array<MoebiusMap, 5> gens = rho.generators;
    for (int k = 0; k < 3; ++k) {
      if (signs[k] < 0) gens[2 + k] = -gens[2 + k];
    }
    LiftReport rep;
    rep.signs = signs;
    bool ok = true;
    for (const auto& rel : pres.relations) {
      MoebiusMap q = evaluate_with(gens, rel.lhs) * evaluate_with(gens, rel.rhs).inverse();
      double plus = distance_to_identity(q, 1);
      double minus = distance_to_identity(q, -1);
      rep.residuals.push_back(std::min(plus, minus));
      rep.relation_signs.push_back(plus <= minus ? 1 : -1);
      rep.max_residual = std::max(rep.max_residual, std::min(plus, minus));
      ok = ok && plus < tol;
    }
    rep.consistent = ok;
    int flips = (signs[0] < 0) + (signs[1] < 0) + (signs[2] < 0);
    if (mask == 0) best = rep;
    if (ok && (!found || flips < best_flips)) {
      best = rep;
      best_flips = flips;
      found = true;
    }
  }
  if (!found) throw Error(ErrorKind::NoConsistentLift, "no sign assignment satisfies every relation");
  return best;
}

}  // namespace pleat
