#pragma once

#include <optional>

#include "choquet/representation.hpp"

namespace choquet {

// S(H_w) = { f : f(t) <= <mu, f> for every t and every vertex mu of M_t(H_w) }, one row e_t - mu
// per pair with mu != eps_t; f is in the cone iff rows . f <= 0.
struct ConvexCone {
  std::size_t n = 0;
  Mat rows;
  bool contains(const Vec& f) const;
};
ConvexCone convex_cone(const ScalarSpace& Hw);

// sigma1 <_{H_w} sigma2: integrals of every f in S(H_w) increase.
bool choquet_leq(const ScalarSpace& Hw, const ScalarMeasure& sigma1, const ScalarMeasure& sigma2);

// Pointwise max { g(t) : g in S(H_w), g <= f }.
Vec lower_envelope(const ScalarSpace& Hw, const Vec& f);

struct MaximalityCheck {
  bool carried_by_boundary = false;
  bool envelope_test = false;
};
MaximalityCheck maximality_check(const ScalarSpace& Hw, const ScalarMeasure& sigma);
// Same verdicts for many measures, sharing the cone and the envelopes.
std::vector<MaximalityCheck> maximality_checks(const ScalarSpace& Hw, const std::vector<ScalarMeasure>& sigmas);

struct Atom {
  std::size_t point = 0;
  Vec x_star;
  Rational mass;
  bool operator==(const Atom&) const = default;
};
// Finitely supported positive measure on K x B_{E*}.
using ProductMeasure = std::vector<Atom>;
Rational total_mass(const ProductMeasure& nu);
void canonicalize(ProductMeasure& nu);  // merge equal (point, x*) atoms and sort

VectorMeasure t_star(const ProductMeasure& nu, std::size_t n, std::size_t d);
ProductMeasure w_map(const NormSpec& E, const VectorMeasure& mu);

// Finitely supported positive measure on B_{E*}.
using BallMeasure = std::vector<std::pair<Vec, Rational>>;
// sigma1 precedes sigma2 in the Choquet order of the ball: sigma2 is a dilation of sigma1.
bool choquet_leq_ball(const NormSpec& E, const BallMeasure& sigma1, const BallMeasure& sigma2);

enum class OrderRelation { Leq, Geq, Equal, Incomparable };
const char* to_string(OrderRelation r);
// nu1 <_{H,c} nu2 for nu1, nu2 in N(mu) = { nu : T* nu = mu, ||nu|| = ||mu|| }.
OrderRelation n_mu_compare(const FunctionSpace& H, const VectorMeasure& mu, const ProductMeasure& nu1,
                           const ProductMeasure& nu2);

struct NMuMinimal {
  ProductMeasure minimal;                    // kernels on dual-ball vertices
  bool unique = true;
  std::optional<ProductMeasure> alternative;  // a second minimal element when not unique
};
NMuMinimal n_mu_minimal(const FunctionSpace& H, const VectorMeasure& mu);

struct ProductRepresentation {
  ProductMeasure nu;  // on Ch x ext B_{E*}
  Rational mass;
};
ProductRepresentation product_representation(const FunctionSpace& H, const Vec& phi);

}  // namespace choquet
