#pragma once

#include <optional>

#include "choquet/function_space.hpp"

namespace choquet {

// Indices t with phi_S(t) extreme in conv(+-phi_S(K)).
std::vector<std::size_t> choquet_boundary(const ScalarSpace& S);
std::vector<std::size_t> choquet_boundary(const FunctionSpace& H);

struct BoundaryConditions {
  bool cond1 = false;  // phi_H(t) extreme in aco(phi_H(K))
  bool cond2 = false;  // phi_{H_w}(t) extreme in B_{H_w*}
  bool cond3 = false;  // phi_{H_s}(t, x*) extreme for some probed x* in B_{E*}
  bool cond4 = false;  // ... for some vertex e* of B_{E*}
  std::optional<bool> cond5;                  // ... for every vertex; only when H(t) = R^d
  std::optional<bool> operator_ball_extreme;  // phi_H(t) extreme in B_{L(H,E)}
};

BoundaryConditions boundary_conditions_report(const FunctionSpace& H, std::size_t t);

// phi_{H_s}(t, x*) extreme in B_{H_s*} = conv(+-phi_{H_s}(s, w)), s in K, w a vertex of B_{E*}.
// The hull over the whole dual ball equals the hull over its vertices since phi_{H_s}(s, .) is affine.
bool hs_is_extreme(const FunctionSpace& H, std::size_t t, const Vec& x_star);

// phi_H(t) is a vertex of { U : <w, U c> <= 1 for w in ext B_{E*}, c in ext B_H }.
bool operator_ball_extreme(const FunctionSpace& H, std::size_t t);

// Over finite K: carried by the Choquet boundary.
bool is_boundary_measure(const FunctionSpace& H, const Vec& scalar_measure);
bool is_boundary_measure(const FunctionSpace& H, const Mat& vector_measure);

}  // namespace choquet
