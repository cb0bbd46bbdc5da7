#pragma once

#include <optional>
#include <string>

#include "choquet/linalg.hpp"
#include "choquet/normed_space.hpp"
#include "choquet/polytope.hpp"

namespace choquet {

class FiniteCompact {
 public:
  FiniteCompact() = default;
  explicit FiniteCompact(std::vector<std::string> labels);
  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t index(const std::string& label) const;  // InvalidInput if absent

 private:
  std::vector<std::string> labels_;
};

// Scalar function space on K; basis rows have length n.
struct ScalarSpace {
  FiniteCompact points;
  Mat basis;

  std::size_t n() const { return points.size(); }
  std::size_t m() const { return basis.size(); }
  // Evaluation functional at t in basis coordinates: (g_1(t), ..., g_m(t)).
  Vec evaluation(std::size_t t) const;
  bool contains(const Vec& f) const;
  bool contains_constants() const;
  Subspace as_subspace() const { return Subspace{n(), basis}; }
};

ScalarSpace make_scalar_space(const FiniteCompact& K, const Mat& generators);

// H inside C(K, E): basis functions flattened point-major, entry (s, i) at s * d + i.
class FunctionSpace {
 public:
  FunctionSpace(FiniteCompact K, NormSpec E, Mat basis);
  // H = { f : c . f = 0 for every constraint row c }.
  static FunctionSpace from_constraints(FiniteCompact K, NormSpec E, const Mat& constraints);
  static FunctionSpace full(FiniteCompact K, NormSpec E);

  const FiniteCompact& points() const { return K_; }
  const NormSpec& target() const { return E_; }
  const Mat& basis() const { return basis_; }
  std::size_t n() const { return K_.size(); }
  std::size_t d() const { return E_.dim(); }
  std::size_t m() const { return basis_.size(); }
  std::size_t flat(std::size_t s, std::size_t i) const { return s * d() + i; }

  Vec value(std::size_t j, std::size_t s) const;  // h_j(s) in R^d
  // phi_H(t) as a d x m matrix (column j = h_j(t)).
  Mat evaluation_operator(std::size_t t) const;
  // phi_{H_l}(t, x*) in basis coordinates: (x*(h_j(t)))_j.
  Vec lin_evaluation(std::size_t t, const Vec& x_star) const;
  // Functional on the basis given by a vector measure (row s in E*).
  Vec action(const Mat& measure) const;
  Subspace as_subspace() const { return Subspace{n() * d(), basis_}; }
  bool contains(const Vec& f) const;

 private:
  FiniteCompact K_;
  NormSpec E_;
  Mat basis_;
};

ScalarSpace weak_space(const FunctionSpace& H);

enum class ConstantsStatus { Full, Some, None };
const char* to_string(ConstantsStatus c);

// { x in R^d : the constant function x lies in H }.
Subspace constant_subspace(const FunctionSpace& H);
ConstantsStatus constants_status(const FunctionSpace& H);
bool separates_points(const ScalarSpace& S);

struct StructureReport {
  bool separates = false;
  ConstantsStatus constants = ConstantsStatus::None;
  bool constants_w = false;
  Subspace H_t;
  Subspace H_st;
  Subspace H_s_minus_t;
};

StructureReport structure_report(const FunctionSpace& H, std::size_t s, std::size_t t);

struct EvaluationNorms {
  Rational phi_H;
  Rational phi_Hw;
  std::optional<Rational> phi_Hl;
  Rational phi_Hs;
};

EvaluationNorms evaluation_norms(const FunctionSpace& H, std::size_t t,
                                 const std::optional<Vec>& x_star = std::nullopt);
// ||phi_{H_w}(t)|| on its own (valid for every target kind).
Rational weak_evaluation_norm(const ScalarSpace& S, std::size_t t);
// sup over B_H of y*(h(t)); polyhedral target.
Rational lin_evaluation_norm(const FunctionSpace& H, std::size_t t, const Vec& y_star);
// ||phi_H(t)|| computed as the max of ||h(t)|| over the vertices of B_H.
Rational operator_norm_by_ball_vertices(const FunctionSpace& H, std::size_t t);

// Vertices of B_H in basis-coefficient space; polyhedral target.
std::vector<Vec> unit_ball_vertices(const FunctionSpace& H);
// Sup norm of sum_j c_j h_j.
Rational sup_norm(const FunctionSpace& H, const Vec& coeffs);

// phi_{H_s}(t, x*) in coordinates (H_w basis part, H basis part).
Vec hs_evaluation(const FunctionSpace& H, const ScalarSpace& Hw, std::size_t t, const Vec& x_star);
Rational hs_evaluation_norm(const FunctionSpace& H, std::size_t t, const Vec& x_star);

struct Collapse {
  std::size_t s;
  std::size_t t;
  int alpha;
  bool operator==(const Collapse&) const = default;
};
std::vector<Collapse> theta_collapses(const FunctionSpace& H);

struct Representability {
  bool representable = false;
  Rational norm_r;
  Vec witness;  // scalar measure of minimal total variation
};
// U is d x m: column j is U(h_j).
Representability representable_operator(const FunctionSpace& H, const Mat& U);
// The operator h -> (phi(e_i* o h))_i for phi given by its values on the H_w basis.
Mat upsilon(const FunctionSpace& H, const ScalarSpace& Hw, const Vec& phi);
// min total variation of a scalar measure acting as phi on the basis of S.
Rational scalar_functional_norm(const ScalarSpace& S, const Vec& phi);

Polytope state_space(const ScalarSpace& S);

}  // namespace choquet
