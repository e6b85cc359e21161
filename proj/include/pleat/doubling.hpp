#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pleat/plaques.hpp"

namespace pleat {

// Relation lhs = rhs in the fundamental group of the doubled manifold.
struct Relation {
  Word lhs;
  Word rhs;
  std::string label;
};

struct MeridianWords {
  Curve curve;
  Word meridian;
  Word longitude;
  Word dual;         // crosses the curve
  Word mirror_dual;  // the mirror copy of `dual`, as forced by the meridian relation
  int reflection;    // 0: base reflection J, 1: secondary reflection J1
  bool shared;       // curve lies on both pants (conjugation-type relation)
};

// Generators a, b (top copy), c = a-hat, d = b-hat (mirror copy), e (stable letter).
struct DoubledPresentation {
  std::string generators;
  std::vector<Relation> relations;
  int amalgam_relations = 0;
  int hnn_relations = 0;
  std::array<MeridianWords, 3> meridians;
};

DoubledPresentation build_presentation();

// The mirror involution on words: a <-> c, b <-> d, e -> e^-1.
Word tau(const Word& w);

struct DoubledHolonomy {
  RepPair source;
  std::optional<MoebiusMap> j;   // reflection in the top plaque circle
  std::optional<MoebiusMap> j1;  // reflection in the bottom plaque circle
  std::array<MoebiusMap, 5> generators;
  std::array<double, 2> thetas{};  // bending angles of a and b, used for branch choices
  bool geometric = true;

  MoebiusMap image(char letter) const;
  MoebiusMap operator()(const Word& w) const;
};

DoubledHolonomy doubled_holonomy(const RepPair& sigma, const Certification& cert);

// Holomorphic extension of sigma to the doubled group (local inverse of the
// restriction map): A-hat = A, B-hat = B D with D commuting with A, and e the
// conjugator between (B, ABA^-1) and (B-hat, A B-hat A^-1). The sign of e is
// chosen with Re(Tr e * conj(e_trace_reference)) >= 0.
DoubledHolonomy extend_holonomy(const RepPair& sigma,
                                std::optional<Complex> e_trace_reference = std::nullopt);

// Largest entry of rho(lhs) - rho(rhs), with the generator matrices as stored.
double relation_residual(const DoubledHolonomy& rho, const Relation& rel);

struct MeridianData {
  Curve curve;
  Word meridian;
  Word longitude;
  Complex trace;
  Complex longitude_trace;
  bool parabolic = false;
  bool trivial = false;  // rho(m) = +-Id
  std::optional<ComplexLength> mu;
  double cone_angle = 0.0;
  double commutation_residual = 0.0;
};

std::vector<MeridianData> meridian_data(const DoubledHolonomy& rho);

// max |Tr rho(tau w) - conj Tr rho(w)| over the words.
double symmetry_audit(const DoubledHolonomy& rho, const std::vector<Word>& words);

struct LiftReport {
  bool consistent = false;
  std::array<int, 3> signs{1, 1, 1};  // on c, d, e
  std::vector<double> residuals;      // per relation, minimum over +-Id
  std::vector<int> relation_signs;    // the sign achieving the minimum
  double max_residual = 0.0;
};

constexpr double kLiftTol = 1e-9;

LiftReport lift_audit(const DoubledHolonomy& rho, double tol = kLiftTol);

}  // namespace pleat
