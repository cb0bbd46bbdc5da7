#pragma once

#include <optional>
#include <string>
#include <utility>

#include "choquet/polytope.hpp"
#include "choquet/rational.hpp"

namespace choquet {

enum class NormKind { Linf, L1, Polyhedral, Lp };

// A norm on R^d. Polyhedral kinds carry both vertex sets: the primal ball's and the
// dual ball's (the latter is also the list of facet normals of the primal ball).
class NormSpec {
 public:
  static NormSpec linf(std::size_t d);
  static NormSpec l1(std::size_t d);
  static NormSpec from_ball_vertices(const std::vector<Vec>& vertices);
  // Ball = { x : <w, x> <= 1 for every listed w }.
  static NormSpec from_ball_facets(const std::vector<Vec>& normals);
  static NormSpec lp(std::size_t d, const Rational& p);

  std::size_t dim() const { return dim_; }
  NormKind kind() const { return kind_; }
  bool polyhedral() const { return kind_ != NormKind::Lp; }
  bool smooth_dual() const { return kind_ == NormKind::Lp; }
  const Rational& p() const { return p_; }
  Rational q() const;  // dual exponent of an Lp norm

  // Both throw SmoothNormUnsupported for Lp.
  const std::vector<Vec>& primal_vertices() const;
  const std::vector<Vec>& dual_vertices() const;

  std::string describe() const;

 private:
  std::size_t dim_ = 0;
  NormKind kind_ = NormKind::Linf;
  Rational p_;
  std::vector<Vec> primal_;
  std::vector<Vec> dual_;
  void require_polyhedral(const char* op) const;
};

struct DualBall {
  Polytope polytope;
  std::vector<Vec> ext_points;
};

DualBall dual_ball(const NormSpec& spec);

enum class Side { Primal, Dual };

struct NormValue {
  std::optional<Rational> exact;  // empty for Lp
  double approx = 0.0;
};

NormValue norm_value(const NormSpec& spec, const Vec& x, Side side);
// Exact value; throws SmoothNormUnsupported for Lp.
Rational norm_exact(const NormSpec& spec, const Vec& x, Side side);

bool is_simplexoid(const NormSpec& spec);

using WeightedVertices = std::vector<std::pair<Vec, Rational>>;

struct BarycenterDecomposition {
  WeightedVertices weights;
  bool unique = true;
  std::optional<WeightedVertices> alternative;  // a second decomposition when not unique
  std::vector<Vec> face;                        // vertices of the minimal face of x_star
};

BarycenterDecomposition barycenter_decomposition(const NormSpec& spec, const Vec& x_star);

bool strictly_convex_dual(const NormSpec& spec);

}  // namespace choquet
