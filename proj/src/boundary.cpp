#include "choquet/boundary.hpp"

#include <algorithm>

#include "choquet/errors.hpp"
#include "choquet/linalg.hpp"
#include "choquet/polytope.hpp"

namespace choquet {

namespace {

std::vector<Vec> symmetric(std::vector<Vec> pts) {
  const std::size_t k = pts.size();
  for (std::size_t i = 0; i < k; ++i) pts.push_back(neg(pts[i]));
  sort_unique(pts);
  return pts;
}

std::vector<Vec> hs_generators(const FunctionSpace& H, const ScalarSpace& Hw) {
  std::vector<Vec> g;
  for (std::size_t s = 0; s < H.n(); ++s)
    for (const auto& w : H.target().dual_vertices()) g.push_back(hs_evaluation(H, Hw, s, w));
  return symmetric(std::move(g));
}

// Points of B_{E*} probed for the "some x*" condition: vertices, 0, pairwise midpoints, facet barycenters.
std::vector<Vec> dual_ball_probes(const NormSpec& E) {
  DualBall b = dual_ball(E);
  std::vector<Vec> out = b.ext_points;
  out.push_back(zeros(E.dim()));
  for (std::size_t i = 0; i < b.ext_points.size(); ++i)
    for (std::size_t j = i + 1; j < b.ext_points.size(); ++j)
      out.push_back(scale(Rational(1) / 2, add(b.ext_points[i], b.ext_points[j])));
  for (const auto& f : *b.polytope.facets) {
    Vec bar = zeros(E.dim());
    for (auto i : f.incident) bar = add(bar, b.ext_points[i]);
    out.push_back(scale(Rational(1) / Rational(static_cast<long>(f.incident.size())), bar));
  }
  sort_unique(out);
  return out;
}

Vec flatten(const Mat& m) {
  Vec v;
  for (const auto& r : m) v.insert(v.end(), r.begin(), r.end());
  return v;
}

}  // namespace

std::vector<std::size_t> choquet_boundary(const ScalarSpace& S) {
  std::vector<Vec> ev;
  for (std::size_t t = 0; t < S.n(); ++t) ev.push_back(S.evaluation(t));
  std::vector<Vec> gens = symmetric(ev);
  std::vector<std::size_t> ch;
  for (std::size_t t = 0; t < S.n(); ++t)
    if (is_extreme_point(ev[t], gens)) ch.push_back(t);
  return ch;
}

std::vector<std::size_t> choquet_boundary(const FunctionSpace& H) { return choquet_boundary(weak_space(H)); }

bool hs_is_extreme(const FunctionSpace& H, std::size_t t, const Vec& x_star) {
  if (norm_exact(H.target(), x_star, Side::Dual) > 1)
    throw Error(ErrorCode::InvalidInput, "x* must lie in the dual unit ball");
  ScalarSpace Hw = weak_space(H);
  return is_extreme_point(hs_evaluation(H, Hw, t, x_star), hs_generators(H, Hw));
}

bool operator_ball_extreme(const FunctionSpace& H, std::size_t t) {
  if (!H.target().polyhedral())
    throw Error(ErrorCode::SmoothNormUnsupported, "operator_ball_extreme with target " + H.target().describe());
  const std::size_t d = H.d(), m = H.m();
  Mat normals;
  for (const auto& w : H.target().dual_vertices()) {
    if (lin_evaluation_norm(H, t, w) != 1) continue;
    // Vertices of the face of B_H on which <w, h(t)> = 1.
    HRep face(m);
    for (std::size_t s = 0; s < H.n(); ++s)
      for (const auto& v : H.target().dual_vertices()) {
        Vec row(m);
        for (std::size_t j = 0; j < m; ++j) row[j] = dot(v, H.value(j, s));
        face.add_le(std::move(row), 1);
      }
    face.add_eq(H.lin_evaluation(t, w), 1);
    for (const auto& c : vertex_enumeration(face)) {
      Mat n(d, zeros(m));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < m; ++j) n[i][j] = w[i] * c[j];
      normals.push_back(flatten(n));
    }
  }
  return rank(normals, d * m) == d * m;
}

BoundaryConditions boundary_conditions_report(const FunctionSpace& H, std::size_t t) {
  if (!H.target().polyhedral())
    throw Error(ErrorCode::SmoothNormUnsupported, "boundary_conditions_report with target " + H.target().describe());
  if (t >= H.n()) throw Error(ErrorCode::InvalidInput, "point index out of range");
  BoundaryConditions r;

  std::vector<Vec> ops;
  for (std::size_t s = 0; s < H.n(); ++s) ops.push_back(flatten(H.evaluation_operator(s)));
  r.cond1 = is_extreme_point(ops[t], symmetric(ops));

  ScalarSpace Hw = weak_space(H);
  std::vector<Vec> wev;
  for (std::size_t s = 0; s < H.n(); ++s) wev.push_back(Hw.evaluation(s));
  r.cond2 = is_extreme_point(wev[t], symmetric(wev));

  std::vector<Vec> gens = hs_generators(H, Hw);
  auto extreme_at = [&](const Vec& x) { return is_extreme_point(hs_evaluation(H, Hw, t, x), gens); };
  const auto& verts = H.target().dual_vertices();
  std::size_t hits = 0;
  for (const auto& e : verts) hits += extreme_at(e) ? 1 : 0;
  r.cond4 = hits > 0;
  for (const auto& x : dual_ball_probes(H.target()))
    if (extreme_at(x)) {
      r.cond3 = true;
      break;
    }
  Mat at_t;
  for (std::size_t j = 0; j < H.m(); ++j) at_t.push_back(H.value(j, t));
  if (rank(at_t, H.d()) == H.d()) r.cond5 = hits == verts.size();
  r.operator_ball_extreme = operator_ball_extreme(H, t);
  return r;
}

bool is_boundary_measure(const FunctionSpace& H, const Vec& scalar_measure) {
  if (scalar_measure.size() != H.n()) throw Error(ErrorCode::DimensionMismatch, "scalar measure length");
  auto ch = choquet_boundary(H);
  for (std::size_t s = 0; s < H.n(); ++s)
    if (sgn(scalar_measure[s]) != 0 && !std::binary_search(ch.begin(), ch.end(), s)) return false;
  return true;
}

bool is_boundary_measure(const FunctionSpace& H, const Mat& vector_measure) {
  if (vector_measure.size() != H.n()) throw Error(ErrorCode::DimensionMismatch, "vector measure rows");
  Vec mass(H.n());
  for (std::size_t s = 0; s < H.n(); ++s) {
    if (vector_measure[s].size() != H.d()) throw Error(ErrorCode::DimensionMismatch, "vector measure row length");
    mass[s] = is_zero(vector_measure[s]) ? 0 : 1;
  }
  return is_boundary_measure(H, mass);
}

}  // namespace choquet
