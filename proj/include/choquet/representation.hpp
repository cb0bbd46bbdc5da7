#pragma once

#include <optional>
#include <string>

#include "choquet/function_space.hpp"

namespace choquet {

using ScalarMeasure = Vec;  // length n
using VectorMeasure = Mat;  // n x d, row s in E*

Rational total_variation(const ScalarMeasure& mu);
Rational total_variation(const NormSpec& E, const VectorMeasure& mu);  // polyhedral E
// sigma (x) x*.
VectorMeasure tensor(const ScalarMeasure& sigma, const Vec& x_star);
Vec flatten(const VectorMeasure& mu);

struct FunctionalNorm {
  Rational value;
  VectorMeasure certificate;  // a representing measure of minimal mass
};
// phi given by its values on the basis of H; polyhedral target.
FunctionalNorm functional_norm(const FunctionSpace& H, const Vec& phi);

struct ScalarRepresentingSet {
  Rational norm;                        // ||phi_{H_w}(t)||
  std::vector<ScalarMeasure> vertices;  // canonical order
};
ScalarRepresentingSet representing_measures_scalar(const FunctionSpace& H, std::size_t t);
ScalarRepresentingSet representing_measures_scalar(const ScalarSpace& S, std::size_t t);

// Certificate that M_{x* o phi_H(t)}(H) = { sigma (x) x* : sigma in M_t(x* o H) } for an l_p target.
struct LpReduction {
  ScalarSpace S;        // x* o H
  Rational c_S;         // ||phi_S(t)||
  Mat G_coefficients;   // row i: coefficients on the basis of H of g_i with g_i(t) = c_S e_i
  std::vector<int> types;  // per point: +1 (G_s = I), -1 (G_s = -I), 0 (||G_s z*||_p < 1 certified)
};
std::optional<LpReduction> lp_reduction(const FunctionSpace& H, std::size_t t, const Vec& x_star);

struct VectorRepresentingSet {
  std::optional<Rational> norm;  // exact mass; empty for l_p targets
  double norm_approx = 0.0;
  std::vector<VectorMeasure> vertices;  // canonical order
  std::optional<LpReduction> reduction;
};
// Polyhedral target, arbitrary phi.
VectorRepresentingSet representing_measures_vector(const FunctionSpace& H, const Vec& phi);
// phi = x* o phi_H(t); l_p targets go through the reduction (SmoothNormUnsupported if none is found).
VectorRepresentingSet representing_measures_vector(const FunctionSpace& H, std::size_t t, const Vec& x_star);

struct Probe {
  std::size_t t;
  Vec x_star;
  bool operator==(const Probe&) const = default;
};
// Per point: dual-ball vertices, facet barycenters and normalized vertex midpoints, one of each
// +-pair (M_{-phi} = -M_phi). For l_p targets: e_i and e_j + a e_i with a = +-1/8.
std::vector<Probe> default_probes(const FunctionSpace& H);

enum class SimplicialityKind { Weak, FunctionalWeak, Vector, FunctionalVector };
enum class SimplicialityStatus { Holds, HoldsOnProbes, Fails };
const char* to_string(SimplicialityKind k);
const char* to_string(SimplicialityStatus s);

struct Witness {
  std::optional<std::size_t> t;  // evaluation point, when the target is an evaluation
  Vec x_star;                    // empty for scalar targets
  Vec functional;                // the represented functional on the basis of H_w or H
  Mat first;                     // n x 1 for scalar measures, n x d for vector measures
  Mat second;
  std::optional<Rational> mass;
};

struct ProbeRecord {
  Probe probe;
  bool unique = true;
  std::string note;  // nonempty when the probe was skipped
};

struct SimplicialityVerdict {
  SimplicialityKind kind = SimplicialityKind::Weak;
  SimplicialityStatus status = SimplicialityStatus::Holds;
  std::optional<Witness> witness;  // first failure
  std::vector<Witness> failures;   // every failing probe
  std::vector<ProbeRecord> probe_log;
};

SimplicialityVerdict weak_simplicial(const FunctionSpace& H);
SimplicialityVerdict functional_weak_simplicial(const FunctionSpace& H);
// User probes are tested first, then default_probes(H).
SimplicialityVerdict vector_simplicial(const FunctionSpace& H, const std::vector<Probe>& extra = {});

// The unique H-boundary measure in M_t(H) when the boundary-restricted set is a singleton.
std::optional<ScalarMeasure> unique_boundary_scalar(const FunctionSpace& H, std::size_t t);

struct AcSpaces {
  Subspace ac_scalar;   // A_c(H_w) in R^n
  Subspace ac_w;        // A_c^w(H) in R^{n d}
  Subspace ac_v_upper;  // superset of A_c^v(H) from the probe set
  Subspace ac_v_upper_weak;  // (ac_v_upper)_w in R^n
  bool ac_v_certified_negative = false;
  std::vector<ProbeRecord> probe_log;
};
AcSpaces ac_spaces(const FunctionSpace& H, const std::vector<Probe>& extra = {});

struct DilationChecks {
  bool idempotent = false;
  bool rows_boundary_probabilities = false;
  bool fixed_space_is_ac_w = false;
  bool restriction_bijective = false;
  bool restriction_isometric = false;
  std::size_t dim_ac_w = 0;
  std::size_t boundary_size = 0;
  bool all() const {
    return idempotent && rows_boundary_probabilities && fixed_space_is_ac_w && restriction_bijective &&
           restriction_isometric;
  }
};
struct DilationSuite {
  Mat D;  // n x n, row t = delta_t
  DilationChecks checks;
};
DilationSuite dilation_suite(const FunctionSpace& H);

// Finite-dimensional L^1-predual test: the dual ball is a cross-polytope.
bool is_cross_polytope(const std::vector<Vec>& vertices, std::size_t dim);

struct L1PredualCheck {
  bool acw_is_l1_predual = false;
  bool E_is_l1_predual = false;
  bool weakly_simplicial = false;
};
L1PredualCheck l1_predual_check(const FunctionSpace& H);

}  // namespace choquet
