#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pleat/doubling.hpp"
#include "pleat/plaques.hpp"

namespace pleat {

enum class CoordinateKind { length, trace };

const char* to_string(CoordinateKind k);

struct LengthSlot {
  Curve curve;
  CoordinateKind kind;
  double value;
  double imag_residual;
};

struct LengthVector {
  std::array<LengthSlot, 3> slots;
  const LengthSlot& slot(Curve c) const { return slots[static_cast<int>(c)]; }
};

LengthVector length_map(const TraceCoords& t, const Certification& cert);

struct AngleVector {
  double theta_a;
  double theta_b;
  double theta_p = 3.141592653589793;

  double phi(Curve c) const;
};

AngleVector angle_map(const Certification& cert);

struct JacobianMatrix {
  Eigen::MatrixXcd values;
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  std::string method;  // "closed-form" or "finite-difference"
  double step = 0.0;
  // Finite differences: max change under step halving.
  double halving_discrepancy = 0.0;
  // Closed form: max deviation from the complex-step cross-check.
  double cross_check_discrepancy = 0.0;

  Complex determinant() const { return values.determinant(); }
  Eigen::MatrixXd real() const { return values.real(); }
};

// d(lambda_A, lambda_B, kappa) / d(x, y, z).
JacobianMatrix holo_length_jacobian(const TraceCoords& t);

// Closed-form determinant 4(2z - xy) / (sqrt(x^2-4) sqrt(y^2-4)), branch matched
// to the complex lengths.
Complex holo_length_determinant(const TraceCoords& t);

// ---- angle map in length coordinates ----

// Hyperbolic lengths (l_A, l_B) of a real-trace structure with x, y >= 2.
std::array<double, 2> lengths_of(const TraceCoords& t);

// (theta_A, theta_B) at the pleating point with lengths (la, lb).
std::array<double, 2> angles_at_lengths(double la, double lb);

// True when (la, lb) lies strictly inside the quasifuchsian slice.
bool lengths_feasible(double la, double lb);

enum class TargetKind { length, angle };

struct MixedTarget {
  std::array<TargetKind, 2> kinds;  // slot 0: a curve, slot 1: b curve
  std::array<double, 2> values;
};

struct SolveOptions {
  double tolerance = 1e-11;
  int max_iterations = 60;
  double fd_step = 1e-7;
};

struct SolveResult {
  TraceCoords coords;
  std::array<double, 2> lengths;
  std::array<double, 2> angles;
  int iterations = 0;
  double residual = 0.0;
};

SolveResult solve_mixed(const MixedTarget& target, const TraceCoords& seed,
                        const SolveOptions& opt = {});
SolveResult solve_for_angles(const AngleVector& target, const TraceCoords& seed,
                             const SolveOptions& opt = {});

// Follows an angle path t -> target(t) through the requested parameters,
// halving steps when Newton needs more than 8 iterations or fails.
std::vector<SolveResult> continue_angle_path(const TraceCoords& seed,
                                             const std::function<AngleVector(double)>& target,
                                             const std::vector<double>& ts,
                                             const SolveOptions& opt = {});

// theta(t) = theta0 + t (pi - theta0).
std::function<AngleVector(double)> pleating_ray(const AngleVector& theta0);

// d(l_A, l_B) / d(phi_A, phi_B) by central differences over Newton solves.
JacobianMatrix dl_dphi(const TraceCoords& t, double h = 1e-5, const SolveOptions& opt = {});

// ---- volume ----

struct VolumeResult {
  double delta_volume = 0.0;
  int steps = 0;
  double error_estimate = 0.0;
  double trapezoid = 0.0;
};

// Delta Vol = sum_i int l_i d theta_i (= -1/2 sum l_i d phi_i). Points must be
// uniformly spaced in the path parameter; with an even number of steps a
// Richardson correction against the every-other-point rule is applied.
VolumeResult schlafli_volume(const std::vector<TraceCoords>& path);

// Uniformly sampled (x, y) polyline through pleating points.
std::vector<TraceCoords> polyline_path(const std::vector<std::array<double, 2>>& vertices,
                                       int steps_per_leg);

struct ConcavityReport {
  std::vector<double> t;
  std::vector<double> volume;             // Vol(t) - Vol(0)
  std::vector<double> dvol_dt;            // sum_i c_i l_i
  std::vector<double> second_difference;  // at interior samples
  std::vector<double> error;              // integration error per interior sample
  bool concave = false;
  bool increasing = false;
};

ConcavityReport concavity_probe(const TraceCoords& seed, const std::array<double, 2>& direction,
                                double t_end, int samples = 11, int substeps = 8);

// ---- deformation checks ----

struct CuspDerivativeReport {
  Complex d_kappa_d_zp;
  Complex d_kappa_d_za;
  Complex d_kappa_d_zb;
  Complex e_trace;
  Complex h_squared;  // derivative of the meridian trace against the cusp trace
  double step = 0.0;
};

// Meridian coordinates z_A = lambda(m_A), z_B = lambda(m_B), z_P = Tr(m_P) through
// the holomorphic extension of the doubled holonomy.
CuspDerivativeReport cusp_derivative_check(const TraceCoords& t, double h = 1e-6);

using RepFamily = std::function<MoebiusMap(const Word&, double)>;

RepFamily quakebend_family(const RepPair& base, double t0);
RepFamily conjugation_family(const RepPair& base, const Eigen::Matrix2cd& generator);
RepFamily constant_family(const RepPair& base);

Eigen::Matrix2cd cocycle_value(const RepFamily& family, const Word& w, double h);

double cocycle_check(const RepFamily& family, const std::vector<std::pair<Word, Word>>& pairs,
                     double h);

struct CocycleFit {
  std::vector<double> steps;
  std::vector<double> residuals;
  double exponent = 0.0;  // smallest log2 ratio between successive halvings
};

CocycleFit cocycle_convergence(const RepFamily& family,
                               const std::vector<std::pair<Word, Word>>& pairs, double h0,
                               int levels = 3);

}  // namespace pleat
