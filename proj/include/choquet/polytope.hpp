#pragma once

#include <optional>

#include "choquet/rational.hpp"

namespace choquet {

// { x : A x <= b, Aeq x = beq } in Q^dim.
struct HRep {
  std::size_t dim = 0;
  Mat A;
  Vec b;
  Mat Aeq;
  Vec beq;

  explicit HRep(std::size_t d = 0) : dim(d) {}
  void add_le(Vec a, Rational rhs);
  void add_eq(Vec a, Rational rhs);
  bool contains(const Vec& x) const;
};

struct Facet {
  Vec normal;  // normal . x <= offset
  Rational offset;
  std::vector<std::size_t> incident;  // indices into Polytope::vertices
};

struct Polytope {
  std::size_t dim = 0;
  std::vector<Vec> vertices;
  std::optional<std::vector<Facet>> facets;
  // Affine hull { x : hull_lhs x = hull_rhs }, populated together with facets.
  Mat hull_lhs;
  Vec hull_rhs;

  bool has_facets() const { return facets.has_value(); }
  std::size_t affine_dim() const;
};

std::vector<Vec> vertex_enumeration(const HRep& h);
Polytope facet_enumeration(const std::vector<Vec>& vertices);
bool is_extreme_point(const Vec& p, const std::vector<Vec>& generators);
// Deduplicated extreme points of conv(points) in canonical order.
std::vector<Vec> extreme_points(const std::vector<Vec>& points);
bool in_convex_hull(const Vec& p, const std::vector<Vec>& points);
// Both representations of conv(points).
Polytope polytope_from_points(const std::vector<Vec>& points);

}  // namespace choquet
