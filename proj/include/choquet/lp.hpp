#pragma once

#include "choquet/rational.hpp"

namespace choquet {

// minimize objective . x  subject to  eq_lhs x = eq_rhs,  le_lhs x <= le_rhs,
// and x_j >= 0 wherever nonneg[j] (an empty nonneg vector means all free).
struct LinearProgram {
  std::size_t num_vars = 0;
  Vec objective;
  Mat eq_lhs;
  Vec eq_rhs;
  Mat le_lhs;
  Vec le_rhs;
  std::vector<bool> nonneg;

  explicit LinearProgram(std::size_t n = 0) : num_vars(n), objective(zeros(n)) {}
  void add_eq(Vec a, Rational b);
  void add_le(Vec a, Rational b);
  void add_ge(Vec a, Rational b);
  void set_nonneg(std::size_t j);
  bool is_nonneg(std::size_t j) const { return !nonneg.empty() && nonneg[j]; }
  void validate() const;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPOutcome {
  LPStatus status = LPStatus::Infeasible;
  Rational value;
  Vec point;
  // Affine dimension of the set of optimal points.
  std::size_t optimal_face_dim = 0;
};

LPOutcome lp_solve(const LinearProgram& lp, bool compute_face_dim = true);
LPOutcome lp_solve(const Vec& objective, const Mat& eq_lhs, const Vec& eq_rhs, const Mat& le_lhs,
                   const Vec& le_rhs);

// Lagrangian dual written as a minimization; its optimum is minus the primal optimum.
LinearProgram dual_program(const LinearProgram& lp);

bool is_feasible_point(const LinearProgram& lp, const Vec& x);

}  // namespace choquet
