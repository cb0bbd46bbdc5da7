#include "choquet/polytope.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "choquet/errors.hpp"
#include "choquet/linalg.hpp"
#include "choquet/lp.hpp"

namespace choquet {

void HRep::add_le(Vec a, Rational rhs) {
  A.push_back(std::move(a));
  b.push_back(std::move(rhs));
}

void HRep::add_eq(Vec a, Rational rhs) {
  Aeq.push_back(std::move(a));
  beq.push_back(std::move(rhs));
}

bool HRep::contains(const Vec& x) const {
  for (std::size_t i = 0; i < A.size(); ++i)
    if (dot(A[i], x) > b[i]) return false;
  for (std::size_t i = 0; i < Aeq.size(); ++i)
    if (dot(Aeq[i], x) != beq[i]) return false;
  return true;
}

std::size_t Polytope::affine_dim() const {
  if (vertices.empty()) return 0;
  Mat d;
  for (const auto& v : vertices) d.push_back(sub(v, vertices[0]));
  return rank(d, dim);
}

namespace {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= o.w_[i];
    return r;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }

 private:
  std::vector<std::uint64_t> w_;
};

struct Ray {
  Vec v;
  Bits zeros;
};

// Extreme rays of the pointed cone { y : M y <= 0 } (double description, adjacency by the
// combinatorial test). Requires rank M = number of columns.
std::vector<Vec> cone_rays(const Mat& M, std::size_t cols) {
  const std::size_t m = M.size();
  std::vector<std::size_t> basis_rows;
  Mat chosen;
  for (std::size_t i = 0; i < m && basis_rows.size() < cols; ++i) {
    Mat trial = chosen;
    trial.push_back(M[i]);
    if (rank(trial, cols) == trial.size()) {
      chosen = std::move(trial);
      basis_rows.push_back(i);
    }
  }
  check(basis_rows.size() == cols, "cone is not pointed");

  std::vector<Ray> rays;
  for (std::size_t j = 0; j < cols; ++j) {
    Vec rhs = zeros(cols);
    rhs[j] = -1;
    auto r = solve(chosen, rhs, cols);
    check(r.has_value(), "initial simplicial cone is singular");
    Ray ray{primitive(*r), Bits(m)};
    for (std::size_t k = 0; k < cols; ++k)
      if (k != j) ray.zeros.set(basis_rows[k]);
    rays.push_back(std::move(ray));
  }
  std::vector<bool> done(m, false);
  for (auto i : basis_rows) done[i] = true;

  for (std::size_t i = 0; i < m; ++i) {
    if (done[i]) continue;
    done[i] = true;
    std::vector<Rational> val(rays.size());
    std::vector<std::size_t> pos, negs;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(M[i], rays[r].v);
      if (sgn(val[r]) > 0) pos.push_back(r);
      if (sgn(val[r]) < 0) negs.push_back(r);
    }
    std::vector<Ray> next;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (sgn(val[r]) > 0) continue;
      Ray keep = rays[r];
      if (sgn(val[r]) == 0) keep.zeros.set(i);
      next.push_back(std::move(keep));
    }
    for (auto p : pos) {
      for (auto q : negs) {
        Bits common = rays[p].zeros & rays[q].zeros;
        if (common.count() + 2 < cols) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
          if (r != p && r != q && common.subset_of(rays[r].zeros)) adjacent = false;
        if (!adjacent) continue;
        Vec v = sub(scale(val[p], rays[q].v), scale(val[q], rays[p].v));
        Ray nr{primitive(v), common};
        nr.zeros.set(i);
        next.push_back(std::move(nr));
      }
    }
    rays = std::move(next);
  }
  std::vector<Vec> out;
  for (auto& r : rays) out.push_back(std::move(r.v));
  return out;
}

}  // namespace

std::vector<Vec> vertex_enumeration(const HRep& h) {
  const std::size_t n = h.dim;
  for (const auto& a : h.A)
    if (a.size() != n) throw Error(ErrorCode::DimensionMismatch, "vertex_enumeration: row length");
  for (const auto& a : h.Aeq)
    if (a.size() != n) throw Error(ErrorCode::DimensionMismatch, "vertex_enumeration: row length");

  // Parametrize the affine hull of the equalities: x = x0 + N z.
  Vec x0 = zeros(n);
  Mat N;
  if (!h.Aeq.empty()) {
    auto s = solve(h.Aeq, h.beq, n);
    if (!s) return {};
    x0 = *s;
    N = nullspace(h.Aeq, n);
  } else {
    for (std::size_t j = 0; j < n; ++j) N.push_back(unit(n, j));
  }
  const std::size_t k = N.size();
  Mat Az(h.A.size(), zeros(k));
  Vec bz(h.A.size());
  for (std::size_t i = 0; i < h.A.size(); ++i) {
    for (std::size_t j = 0; j < k; ++j) Az[i][j] = dot(h.A[i], N[j]);
    bz[i] = h.b[i] - dot(h.A[i], x0);
  }
  LinearProgram feas(k);
  feas.le_lhs = Az;
  feas.le_rhs = bz;
  if (lp_solve(feas, false).status != LPStatus::Optimal) return {};
  if (k == 0) return {x0};

  // Homogenize: (z, lambda) with Az z - bz lambda <= 0 and lambda >= 0.
  Mat M;
  for (std::size_t i = 0; i < Az.size(); ++i) {
    Vec row = Az[i];
    row.push_back(-bz[i]);
    M.push_back(std::move(row));
  }
  M.push_back(neg(unit(k + 1, k)));
  if (rank(M, k + 1) < k + 1)
    throw Error(ErrorCode::UnboundedPolyhedron, "polyhedron contains a line");

  std::vector<Vec> out;
  for (const auto& r : cone_rays(M, k + 1)) {
    if (sgn(r[k]) == 0) throw Error(ErrorCode::UnboundedPolyhedron, "polyhedron has a recession ray");
    Vec x = x0;
    for (std::size_t j = 0; j < k; ++j) {
      if (sgn(r[j]) == 0) continue;
      Rational c = r[j] / r[k];
      for (std::size_t l = 0; l < n; ++l)
        if (sgn(N[j][l]) != 0) x[l] += c * N[j][l];
    }
    out.push_back(std::move(x));
  }
  sort_unique(out);
  return out;
}

bool in_convex_hull(const Vec& p, const std::vector<Vec>& points) {
  if (points.empty()) return false;
  const std::size_t n = p.size(), k = points.size();
  LinearProgram lp(k);
  for (std::size_t j = 0; j < k; ++j) {
    if (points[j].size() != n) throw Error(ErrorCode::DimensionMismatch, "in_convex_hull");
    lp.set_nonneg(j);
  }
  for (std::size_t i = 0; i < n; ++i) {
    Vec row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = points[j][i];
    lp.add_eq(std::move(row), p[i]);
  }
  lp.add_eq(Vec(k, Rational(1)), 1);
  return lp_solve(lp, false).status == LPStatus::Optimal;
}

bool is_extreme_point(const Vec& p, const std::vector<Vec>& generators) {
  std::vector<Vec> others;
  bool present = false;
  for (const auto& g : generators) {
    if (g == p)
      present = true;
    else
      others.push_back(g);
  }
  if (!present && !in_convex_hull(p, others))
    throw Error(ErrorCode::PointNotInHull, "is_extreme_point: point outside the hull");
  return !in_convex_hull(p, others);
}

std::vector<Vec> extreme_points(const std::vector<Vec>& points) {
  std::vector<Vec> pts = points;
  sort_unique(pts);
  std::vector<Vec> out;
  for (const auto& p : pts)
    if (is_extreme_point(p, pts)) out.push_back(p);
  return out;
}

Polytope facet_enumeration(const std::vector<Vec>& input) {
  std::vector<Vec> V = input;
  sort_unique(V);
  if (V.size() < 2) throw Error(ErrorCode::DegenerateInput, "facet_enumeration needs 2 points");
  const std::size_t n = V[0].size();
  for (const auto& v : V)
    if (v.size() != n) throw Error(ErrorCode::DimensionMismatch, "facet_enumeration");

  Mat diffs;
  for (const auto& v : V) diffs.push_back(sub(v, V[0]));
  Echelon hull = rref(diffs, n);
  const std::size_t k = hull.rows.size();
  // RREF rows are the identity on pivot columns, so those entries are affine coordinates.
  auto coords = [&](const Vec& x) {
    Vec z(k);
    Vec d = sub(x, V[0]);
    for (std::size_t r = 0; r < k; ++r) z[r] = d[hull.pivots[r]];
    return z;
  };
  std::vector<Vec> Z;
  Vec c = zeros(k);
  for (const auto& v : V) {
    Z.push_back(coords(v));
    c = add(c, Z.back());
  }
  c = scale(Rational(1) / Rational(static_cast<long>(V.size())), c);
  for (auto& z : Z) z = sub(z, c);

  HRep polar(k);
  for (const auto& z : Z) polar.add_le(z, 1);
  std::vector<Facet> facets;
  for (const auto& a : vertex_enumeration(polar)) {
    Vec g = zeros(n);
    for (std::size_t r = 0; r < k; ++r) g[hull.pivots[r]] = a[r];
    Rational off = 1 + dot(a, c) + dot(g, V[0]);
    Vec pg = primitive(g);
    std::size_t lead = 0;
    while (sgn(g[lead]) == 0) ++lead;
    Rational f = pg[lead] / g[lead];
    Facet fc{pg, off * f, {}};
    for (std::size_t i = 0; i < V.size(); ++i)
      if (dot(a, Z[i]) == 1) fc.incident.push_back(i);
    facets.push_back(std::move(fc));
  }
  std::sort(facets.begin(), facets.end(), [](const Facet& x, const Facet& y) {
    if (x.normal != y.normal) return lex_less(x.normal, y.normal);
    return x.offset < y.offset;
  });

  Polytope P;
  P.dim = n;
  P.vertices = V;
  P.facets = std::move(facets);
  Subspace dir = Subspace::span(hull.rows, n);
  for (const auto& h : dir.annihilator()) {
    P.hull_lhs.push_back(h);
    P.hull_rhs.push_back(dot(h, V[0]));
  }
  return P;
}

Polytope polytope_from_points(const std::vector<Vec>& points) {
  std::vector<Vec> ext = extreme_points(points);
  if (ext.size() < 2) {
    Polytope P;
    P.dim = points.empty() ? 0 : points[0].size();
    P.vertices = ext;
    return P;
  }
  return facet_enumeration(ext);
}

}  // namespace choquet
