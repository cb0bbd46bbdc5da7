#include "choquet/normed_space.hpp"

#include <algorithm>
#include <cmath>

#include "choquet/errors.hpp"
#include "choquet/linalg.hpp"
#include "choquet/lp.hpp"

namespace choquet {

namespace {

std::vector<Vec> sign_vectors(std::size_t d) {
  std::vector<Vec> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    Vec v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = (mask >> i) & 1 ? -1 : 1;
    out.push_back(std::move(v));
  }
  sort_unique(out);
  return out;
}

std::vector<Vec> signed_units(std::size_t d) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < d; ++i) {
    out.push_back(unit(d, i));
    out.push_back(neg(unit(d, i)));
  }
  sort_unique(out);
  return out;
}

void validate_symmetric_spanning(const std::vector<Vec>& vs, std::size_t d) {
  if (d == 0) throw Error(ErrorCode::InvalidInput, "norm dimension must be positive");
  for (const auto& v : vs) {
    if (v.size() != d) throw Error(ErrorCode::DimensionMismatch, "ball vertex length");
    if (std::find(vs.begin(), vs.end(), neg(v)) == vs.end())
      throw Error(ErrorCode::InvalidInput, "ball is not symmetric: missing -" + to_string(v));
  }
  if (rank(vs, d) != d) throw Error(ErrorCode::InvalidInput, "ball does not span R^d");
}

std::vector<Vec> polar_vertices(const std::vector<Vec>& vs, std::size_t d) {
  HRep h(d);
  for (const auto& v : vs) h.add_le(v, 1);
  return vertex_enumeration(h);
}

}  // namespace

NormSpec NormSpec::linf(std::size_t d) {
  if (d == 0) throw Error(ErrorCode::InvalidInput, "norm dimension must be positive");
  NormSpec s;
  s.dim_ = d;
  s.kind_ = NormKind::Linf;
  s.primal_ = sign_vectors(d);
  s.dual_ = signed_units(d);
  return s;
}

NormSpec NormSpec::l1(std::size_t d) {
  if (d == 0) throw Error(ErrorCode::InvalidInput, "norm dimension must be positive");
  NormSpec s;
  s.dim_ = d;
  s.kind_ = NormKind::L1;
  s.primal_ = signed_units(d);
  s.dual_ = sign_vectors(d);
  return s;
}

NormSpec NormSpec::from_ball_vertices(const std::vector<Vec>& vertices) {
  if (vertices.empty()) throw Error(ErrorCode::InvalidInput, "empty ball vertex list");
  const std::size_t d = vertices[0].size();
  std::vector<Vec> vs = vertices;
  sort_unique(vs);
  validate_symmetric_spanning(vs, d);
  NormSpec s;
  s.dim_ = d;
  s.kind_ = NormKind::Polyhedral;
  s.primal_ = extreme_points(vs);
  s.dual_ = polar_vertices(s.primal_, d);
  return s;
}

NormSpec NormSpec::from_ball_facets(const std::vector<Vec>& normals) {
  if (normals.empty()) throw Error(ErrorCode::InvalidInput, "empty ball facet list");
  const std::size_t d = normals[0].size();
  std::vector<Vec> ws = normals;
  sort_unique(ws);
  validate_symmetric_spanning(ws, d);
  return from_ball_vertices(polar_vertices(ws, d));
}

NormSpec NormSpec::lp(std::size_t d, const Rational& p) {
  if (d == 0) throw Error(ErrorCode::InvalidInput, "norm dimension must be positive");
  if (p <= 1) throw Error(ErrorCode::InvalidInput, "lp exponent must exceed 1");
  NormSpec s;
  s.dim_ = d;
  s.kind_ = NormKind::Lp;
  s.p_ = p;
  return s;
}

Rational NormSpec::q() const {
  if (kind_ != NormKind::Lp) throw Error(ErrorCode::InvalidInput, "dual exponent of a non-Lp norm");
  return p_ / (p_ - 1);
}

void NormSpec::require_polyhedral(const char* op) const {
  if (!polyhedral())
    throw Error(ErrorCode::SmoothNormUnsupported, std::string(op) + " needs a polyhedral norm");
}

const std::vector<Vec>& NormSpec::primal_vertices() const {
  require_polyhedral("primal_vertices");
  return primal_;
}

const std::vector<Vec>& NormSpec::dual_vertices() const {
  require_polyhedral("dual_vertices");
  return dual_;
}

std::string NormSpec::describe() const {
  std::string d = std::to_string(dim_);
  switch (kind_) {
    case NormKind::Linf: return "linf(" + d + ")";
    case NormKind::L1: return "l1(" + d + ")";
    case NormKind::Polyhedral: return "polyhedral(" + d + ", " + std::to_string(primal_.size()) + " vertices)";
    case NormKind::Lp: return "lp(" + d + ", p=" + to_string(p_) + ")";
  }
  return "?";
}

DualBall dual_ball(const NormSpec& spec) {
  if (!spec.polyhedral())
    throw Error(ErrorCode::SmoothNormUnsupported, "dual_ball of " + spec.describe());
  DualBall b;
  b.ext_points = spec.dual_vertices();
  b.polytope = facet_enumeration(b.ext_points);
  return b;
}

NormValue norm_value(const NormSpec& spec, const Vec& x, Side side) {
  if (x.size() != spec.dim()) throw Error(ErrorCode::DimensionMismatch, "norm_value");
  NormValue out;
  if (spec.polyhedral()) {
    out.exact = norm_exact(spec, x, side);
    out.approx = out.exact->get_d();
    return out;
  }
  double e = (side == Side::Primal ? spec.p() : spec.q()).get_d();
  double s = 0;
  for (const auto& c : x) s += std::pow(std::fabs(c.get_d()), e);
  out.approx = std::pow(s, 1.0 / e);
  return out;
}

Rational norm_exact(const NormSpec& spec, const Vec& x, Side side) {
  if (!spec.polyhedral())
    throw Error(ErrorCode::SmoothNormUnsupported, "exact norm of " + spec.describe());
  if (x.size() != spec.dim()) throw Error(ErrorCode::DimensionMismatch, "norm_exact");
  if (spec.kind() == NormKind::Linf) return side == Side::Primal ? linf(x) : l1(x);
  if (spec.kind() == NormKind::L1) return side == Side::Primal ? l1(x) : linf(x);
  // The primal ball is { <w, .> <= 1 } over dual vertices w, and symmetric.
  const auto& vs = side == Side::Primal ? spec.dual_vertices() : spec.primal_vertices();
  Rational best = 0;
  for (const auto& v : vs) {
    Rational t = dot(x, v);
    if (t > best) best = t;
  }
  return best;
}

bool is_simplexoid(const NormSpec& spec) {
  if (!spec.polyhedral())
    throw Error(ErrorCode::SmoothNormUnsupported, "is_simplexoid of " + spec.describe());
  if (spec.dim() == 1) return true;
  DualBall b = dual_ball(spec);
  for (const auto& f : *b.polytope.facets)
    if (f.incident.size() != spec.dim()) return false;
  return true;
}

BarycenterDecomposition barycenter_decomposition(const NormSpec& spec, const Vec& x_star) {
  if (!spec.polyhedral())
    throw Error(ErrorCode::SmoothNormUnsupported, "barycenter_decomposition of " + spec.describe());
  if (norm_exact(spec, x_star, Side::Dual) != 1)
    throw Error(ErrorCode::NotOnSphere, "dual norm of " + to_string(x_star) + " is not 1");
  const std::size_t d = spec.dim();
  // The primal face exposed by x_star; its barycenter exposes the minimal dual face of x_star.
  Vec bar = zeros(d);
  std::size_t cnt = 0;
  for (const auto& v : spec.primal_vertices())
    if (dot(x_star, v) == 1) {
      bar = add(bar, v);
      ++cnt;
    }
  bar = scale(Rational(1) / Rational(static_cast<long>(cnt)), bar);
  BarycenterDecomposition out;
  for (const auto& w : spec.dual_vertices())
    if (dot(w, bar) == 1) out.face.push_back(w);
  const std::size_t k = out.face.size();

  LinearProgram lp(k);
  for (std::size_t j = 0; j < k; ++j) lp.set_nonneg(j);
  for (std::size_t i = 0; i < d; ++i) {
    Vec row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = out.face[j][i];
    lp.add_eq(std::move(row), x_star[i]);
  }
  lp.add_eq(Vec(k, Rational(1)), 1);
  auto collect = [&](const Vec& lambda) {
    WeightedVertices w;
    for (std::size_t j = 0; j < k; ++j)
      if (sgn(lambda[j]) > 0) w.emplace_back(out.face[j], lambda[j]);
    return w;
  };
  LPOutcome base = lp_solve(lp, false);
  check(base.status == LPStatus::Optimal, "x_star is not in its minimal face");
  out.weights = collect(base.point);

  Mat diffs;
  for (const auto& w : out.face) diffs.push_back(sub(w, out.face[0]));
  out.unique = rank(diffs, d) + 1 == k;
  if (!out.unique) {
    for (std::size_t j = 0; j < k && !out.alternative; ++j) {
      LinearProgram lo = lp, hi = lp;
      lo.objective[j] = 1;
      hi.objective[j] = -1;
      LPOutcome a = lp_solve(lo, false), b = lp_solve(hi, false);
      if (a.point[j] != b.point[j]) {
        out.weights = collect(a.point);
        out.alternative = collect(b.point);
      }
    }
    check(out.alternative.has_value(), "non-simplex face without a second decomposition");
  }
  return out;
}

bool strictly_convex_dual(const NormSpec& spec) {
  if (spec.kind() == NormKind::Lp) return true;
  return spec.dim() == 1;
}

}  // namespace choquet
