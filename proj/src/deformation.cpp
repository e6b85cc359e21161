#include <cmath>
#include <limits>

#include "pleat/error.hpp"
#include "pleat/lengthmap.hpp"

namespace pleat {

namespace {

struct MeridianCoords {
  Complex za, zb, zp;
};

MeridianCoords meridian_coords(const DoubledHolonomy& rho, const MeridianCoords* ref) {
  static const Word ma("bD"), mb("aeCE"), mp("e");
  MoebiusMap a = rho(ma), b = rho(mb);
  MeridianCoords out;
  out.za = ref ? complex_length_near(a, ref->za) : complex_length(a).value;
  out.zb = ref ? complex_length_near(b, ref->zb) : complex_length(b).value;
  out.zp = rho(mp).trace();
  return out;
}

MoebiusMap exp_sl2(const Eigen::Matrix2cd& x, double t) {
  Eigen::Matrix2cd x0 = x - 0.5 * x.trace() * Eigen::Matrix2cd::Identity();
  Complex mu = std::sqrt(-x0.determinant());
  Complex tm = t * mu;
  Complex c = std::cosh(tm);
  Complex s = std::abs(tm) < 1e-8 ? Complex(t) * (1.0 + tm * tm / 6.0) : std::sinh(tm) / mu;
  Eigen::Matrix2cd e = c * Eigen::Matrix2cd::Identity() + s * x0;
  return MoebiusMap(e(0, 0), e(0, 1), e(1, 0), e(1, 1));
}

double max_abs(const Eigen::Matrix2cd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

CuspDerivativeReport cusp_derivative_check(const TraceCoords& t, double h) {
  Complex kappa0 = commutator_trace(t);
  if (std::abs(kappa0 + 2.0) > kParabolicTol) {
    throw Error(ErrorKind::InvalidArgument, "cusp derivative check needs a parabolic commutator");
  }
  DoubledHolonomy rho0 = extend_holonomy(matrices_from_traces(t));
  MeridianCoords base = meridian_coords(rho0, nullptr);
  Complex e0 = base.zp;
  auto eval = [&](const TraceCoords& s) {
    DoubledHolonomy rho = extend_holonomy(matrices_from_traces(s), e0);
    MeridianCoords m = meridian_coords(rho, &base);
    return Eigen::Vector3cd(m.za, m.zb, m.zp);
  };
  Eigen::Matrix3cd jf;
  for (int j = 0; j < 3; ++j) {
    TraceCoords p = t, m = t;
    Complex* pp = j == 0 ? &p.x : j == 1 ? &p.y : &p.z;
    Complex* mm = j == 0 ? &m.x : j == 1 ? &m.y : &m.z;
    *pp += h;
    *mm -= h;
    jf.col(j) = (eval(p) - eval(m)) / (2.0 * h);
  }
  Eigen::Vector3cd grad(2.0 * t.x - t.y * t.z, 2.0 * t.y - t.x * t.z, 2.0 * t.z - t.x * t.y);
  // Row vector grad^T JF^-1.
  Eigen::Vector3cd w = jf.transpose().fullPivLu().solve(grad);
  CuspDerivativeReport rep;
  rep.d_kappa_d_za = w(0);
  rep.d_kappa_d_zb = w(1);
  rep.d_kappa_d_zp = w(2);
  rep.e_trace = e0;
  // Canonical pair normalization: u = -kappa, v = Tr(m_P) with the sign making v near 2.
  rep.h_squared = kappa0 / (w(2) * e0);
  rep.step = h;
  return rep;
}

RepFamily constant_family(const RepPair& base) {
  return [base](const Word& w, double) { return evaluate(base, w); };
}

RepFamily quakebend_family(const RepPair& base, double t0) {
  MoebiusMap g = normalize_to_axis(base.a);
  MoebiusMap gi = g.inverse();
  return [base, g, gi, t0](const Word& w, double t) {
    Complex u = std::polar(1.0, (t0 + t) / 2.0);
    MoebiusMap e = gi * MoebiusMap::unimodular(u, 0.0, 0.0, 1.0 / u) * g;
    MoebiusMap b = e * base.b;
    return evaluate_word(w, [&](char c) { return c == 'a' ? base.a : b; });
  };
}

RepFamily conjugation_family(const RepPair& base, const Eigen::Matrix2cd& generator) {
  return [base, generator](const Word& w, double t) {
    MoebiusMap g = exp_sl2(generator, t);
    return g * evaluate(base, w) * g.inverse();
  };
}

Eigen::Matrix2cd cocycle_value(const RepFamily& family, const Word& w, double h) {
  Eigen::Matrix2cd p = to_matrix(family(w, h));
  Eigen::Matrix2cd m = to_matrix(family(w, -h));
  Eigen::Matrix2cd inv0 = to_matrix(family(w, 0.0).inverse());
  return (p - m) * inv0 / (2.0 * h);
}

double cocycle_check(const RepFamily& family, const std::vector<std::pair<Word, Word>>& pairs,
                     double h) {
  double worst = 0.0;
  for (const auto& [w1, w2] : pairs) {
    Eigen::Matrix2cd z12 = cocycle_value(family, w1 * w2, h);
    Eigen::Matrix2cd z1 = cocycle_value(family, w1, h);
    Eigen::Matrix2cd z2 = cocycle_value(family, w2, h);
    MoebiusMap r1 = family(w1, 0.0);
    Eigen::Matrix2cd ad = to_matrix(r1) * z2 * to_matrix(r1.inverse());
    worst = std::max(worst, max_abs(z12 - z1 - ad));
  }
  return worst;
}

CocycleFit cocycle_convergence(const RepFamily& family,
                               const std::vector<std::pair<Word, Word>>& pairs, double h0,
                               int levels) {
  CocycleFit fit;
  double h = h0;
  for (int k = 0; k < levels; ++k, h /= 2.0) {
    fit.steps.push_back(h);
    fit.residuals.push_back(cocycle_check(family, pairs, h));
  }
  fit.exponent = std::numeric_limits<double>::infinity();
  for (int k = 0; k + 1 < levels; ++k) {
    fit.exponent = std::min(fit.exponent, std::log2(fit.residuals[k] / fit.residuals[k + 1]));
  }
  return fit;
}

}  // namespace pleat
