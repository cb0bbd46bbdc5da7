#include "choquet/representation.hpp"

#include <algorithm>
#include <functional>

#include "choquet/boundary.hpp"
#include "choquet/errors.hpp"
#include "choquet/linalg.hpp"
#include "choquet/lp.hpp"
#include "choquet/parallel.hpp"
#include "choquet/polytope.hpp"

namespace choquet {

Rational total_variation(const ScalarMeasure& mu) { return l1(mu); }

Rational total_variation(const NormSpec& E, const VectorMeasure& mu) {
  Rational s = 0;
  for (const auto& row : mu) s += norm_exact(E, row, Side::Dual);
  return s;
}

VectorMeasure tensor(const ScalarMeasure& sigma, const Vec& x_star) {
  VectorMeasure mu;
  for (const auto& v : sigma) mu.push_back(scale(v, x_star));
  return mu;
}

Vec flatten(const VectorMeasure& mu) {
  Vec v;
  for (const auto& r : mu) v.insert(v.end(), r.begin(), r.end());
  return v;
}

namespace {

VectorMeasure unflatten(const Vec& v, std::size_t n, std::size_t d) {
  VectorMeasure mu(n);
  for (std::size_t s = 0; s < n; ++s) mu[s] = Vec(v.begin() + static_cast<long>(s * d), v.begin() + static_cast<long>((s + 1) * d));
  return mu;
}

Rational inv(std::size_t k) { return Rational(1) / Rational(static_cast<long>(k)); }

// { mu : eq mu = rhs, mu_s = 0 off `allowed` } with mass sum_s ||mu_s||_* where the dual norm is
// max over `norm_rows`. Lifted to (mu, r) with r_s >= <mu_s, v>.
struct RepProblem {
  std::size_t n = 0, d = 0;
  std::vector<Vec> norm_rows;
  Mat eq;
  Vec rhs;
  std::vector<bool> allowed;

  std::size_t vars() const { return n * d + n; }

  LinearProgram program(const std::optional<Rational>& cap) const {
    LinearProgram lp(vars());
    for (std::size_t s = 0; s < n; ++s) lp.objective[n * d + s] = 1;
    for (std::size_t s = 0; s < n; ++s)
      for (const auto& v : norm_rows) {
        Vec row = zeros(vars());
        for (std::size_t i = 0; i < d; ++i) row[s * d + i] = v[i];
        row[n * d + s] = -1;
        lp.add_le(std::move(row), 0);
      }
    for (std::size_t k = 0; k < eq.size(); ++k) {
      Vec row = eq[k];
      row.resize(vars(), Rational(0));
      lp.add_eq(std::move(row), rhs[k]);
    }
    if (!allowed.empty())
      for (std::size_t s = 0; s < n; ++s)
        if (!allowed[s]) {
          for (std::size_t i = 0; i < d; ++i) lp.add_eq(unit(vars(), s * d + i), 0);
          lp.add_eq(unit(vars(), n * d + s), 0);
        }
    if (cap) {
      Vec row = zeros(vars());
      for (std::size_t s = 0; s < n; ++s) row[n * d + s] = 1;
      lp.add_le(std::move(row), *cap);
    }
    return lp;
  }

  LPOutcome minimize() const {
    LPOutcome r = lp_solve(program(std::nullopt), false);
    check(r.status == LPStatus::Optimal, "representation LP is not solvable");
    return r;
  }

  // Affine dimension of the set of measures of mass <= cap.
  std::size_t dimension(const Rational& cap) const {
    LinearProgram lp = program(cap);
    lp.objective = zeros(vars());
    LPOutcome r = lp_solve(lp, true);
    check(r.status == LPStatus::Optimal, "representing set is empty");
    return r.optimal_face_dim;
  }

  std::vector<Vec> vertices(const Rational& cap) const {
    LinearProgram lp = program(cap);
    HRep h(vars());
    h.A = lp.le_lhs;
    h.b = lp.le_rhs;
    h.Aeq = lp.eq_lhs;
    h.beq = lp.eq_rhs;
    std::vector<Vec> proj;
    for (const auto& x : vertex_enumeration(h)) proj.emplace_back(x.begin(), x.begin() + static_cast<long>(n * d));
    return extreme_points(proj);
  }

  Vec measure_part(const Vec& x) const { return Vec(x.begin(), x.begin() + static_cast<long>(n * d)); }
};

RepProblem scalar_problem(const ScalarSpace& S, std::size_t t) {
  RepProblem p;
  p.n = S.n();
  p.d = 1;
  p.norm_rows = {Vec{Rational(1)}, Vec{Rational(-1)}};
  p.eq = S.basis;
  p.rhs = S.evaluation(t);
  return p;
}

RepProblem vector_problem(const FunctionSpace& H, const Vec& phi) {
  if (!H.target().polyhedral())
    throw Error(ErrorCode::SmoothNormUnsupported, "representing measures of a general functional with target " +
                                                      H.target().describe());
  if (phi.size() != H.m()) throw Error(ErrorCode::DimensionMismatch, "functional must have one value per basis element");
  RepProblem p;
  p.n = H.n();
  p.d = H.d();
  p.norm_rows = H.target().primal_vertices();
  p.eq = H.basis();
  p.rhs = phi;
  return p;
}

std::vector<bool> boundary_mask(const FunctionSpace& H) {
  std::vector<bool> mask(H.n(), false);
  for (auto s : choquet_boundary(H)) mask[s] = true;
  return mask;
}

bool lex_greater(const Vec& a, const Vec& b) { return lex_less(b, a); }

// ---- l_p reduction -------------------------------------------------------------------------

struct Interval {
  Rational lo, hi;
};

Rational ipow(const Rational& x, unsigned long e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), e);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Enclosure of x^r for x >= 0 and rational r > 0, by bisection on the b-th root of x^a.
Interval pow_enclosure(const Rational& x, const Rational& r) {
  if (sgn(x) == 0) return {0, 0};
  unsigned long a = r.get_num().get_ui(), b = r.get_den().get_ui();
  Rational X = ipow(x, a);
  if (b == 1) return {X, X};
  Rational lo = 0, hi = X > 1 ? X : Rational(1);
  for (int it = 0; it < 64; ++it) {
    Rational mid = (lo + hi) / 2;
    Rational m = ipow(mid, b);
    if (m == X) return {mid, mid};
    if (m < X)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

// Norming point z* of x* in l_p: z_i = sign(x_i) |x_i|^{q-1} / ||x*||_q^{q-1}.
std::vector<Interval> norming_point(const Vec& x, const Rational& p) {
  Rational q = p / (p - 1);
  Interval N{0, 0};
  for (const auto& xi : x) {
    Interval e = pow_enclosure(abs(xi), q);
    N.lo += e.lo;
    N.hi += e.hi;
  }
  Rational expo = (q - 1) / q;
  Rational Mlo = pow_enclosure(N.lo, expo).lo, Mhi = pow_enclosure(N.hi, expo).hi;
  std::vector<Interval> z;
  for (const auto& xi : x) {
    Interval a = pow_enclosure(abs(xi), q - 1);
    Interval zi{a.lo / Mhi, Mlo == 0 ? a.hi : a.hi / Mlo};
    if (sgn(xi) < 0) zi = {-zi.hi, -zi.lo};
    z.push_back(zi);
  }
  return z;
}

// ||G z||_p < 1 with z known only by enclosures.
bool certified_below_one(const Mat& G, const std::vector<Interval>& z, const Rational& p) {
  Rational total = 0;
  for (const auto& row : G) {
    Rational lo = 0, hi = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (sgn(row[i]) == 0) continue;
      Rational a = row[i] * z[i].lo, b = row[i] * z[i].hi;
      lo += std::min(a, b);
      hi += std::max(a, b);
    }
    Rational ub = std::max(abs(lo), abs(hi));
    if (ub >= 1) return false;
    total += pow_enclosure(ub, p).hi;
  }
  return total < 1;
}

}  // namespace

FunctionalNorm functional_norm(const FunctionSpace& H, const Vec& phi) {
  RepProblem p = vector_problem(H, phi);
  LPOutcome r = p.minimize();
  FunctionalNorm out{r.value, unflatten(p.measure_part(r.point), H.n(), H.d())};
  check(total_variation(H.target(), out.certificate) == out.value, "functional norm certificate mass");
  check(H.action(out.certificate) == phi, "functional norm certificate action");
  return out;
}

ScalarRepresentingSet representing_measures_scalar(const ScalarSpace& S, std::size_t t) {
  if (t >= S.n()) throw Error(ErrorCode::InvalidInput, "point index out of range");
  RepProblem p = scalar_problem(S, t);
  ScalarRepresentingSet out;
  out.norm = p.minimize().value;
  out.vertices = p.vertices(out.norm);
  for (const auto& v : out.vertices) {
    check(l1(v) == out.norm, "representing vertex mass");
    for (std::size_t k = 0; k < S.m(); ++k) check(dot(v, S.basis[k]) == S.basis[k][t], "representing vertex action");
  }
  if (S.contains_constants())
    for (const auto& v : out.vertices)
      for (const auto& x : v) check(sgn(x) >= 0, "representing measure is not positive");
  return out;
}

ScalarRepresentingSet representing_measures_scalar(const FunctionSpace& H, std::size_t t) {
  return representing_measures_scalar(weak_space(H), t);
}

std::optional<LpReduction> lp_reduction(const FunctionSpace& H, std::size_t t, const Vec& x_star) {
  if (H.target().kind() != NormKind::Lp) throw Error(ErrorCode::InvalidInput, "lp_reduction needs an l_p target");
  const std::size_t n = H.n(), d = H.d(), m = H.m();
  Mat gens;
  for (std::size_t j = 0; j < m; ++j) {
    Vec g(n);
    for (std::size_t s = 0; s < n; ++s) g[s] = dot(x_star, H.value(j, s));
    gens.push_back(std::move(g));
  }
  LpReduction red;
  red.S = make_scalar_space(H.points(), gens);
  if (red.S.m() == 0 || is_zero(red.S.evaluation(t))) return std::nullopt;
  red.c_S = weak_evaluation_norm(red.S, t);
  const Rational& p = H.target().p();
  std::vector<Interval> z = norming_point(x_star, p);
  Vec zhat;
  for (const auto& iv : z) zhat.push_back((iv.lo + iv.hi) / 2);

  // Unknowns a[i*m + j]: g_i = sum_j a_ij h_j; G_s has column i equal to g_i(s).
  const std::size_t nv = d * m;
  auto block_rows = [&](std::size_t s, const Rational& diag, Mat& lhs, Vec& rhs) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) {
        Vec row = zeros(nv);
        for (std::size_t j = 0; j < m; ++j) row[i * m + j] = H.basis()[j][H.flat(s, k)];
        lhs.push_back(std::move(row));
        rhs.push_back(i == k ? diag : Rational(0));
      }
  };
  auto G_at = [&](const Vec& a, std::size_t s) {
    Mat G(d, zeros(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t j = 0; j < m; ++j) G[k][i] += a[i * m + j] * H.basis()[j][H.flat(s, k)];
    return G;
  };

  std::vector<std::size_t> others;
  for (std::size_t s = 0; s < n; ++s)
    if (s != t) others.push_back(s);
  std::vector<int> types(n, 0);
  Mat base_lhs;
  Vec base_rhs;
  block_rows(t, red.c_S, base_lhs, base_rhs);
  if (!solve(base_lhs, base_rhs, nv)) return std::nullopt;

  std::optional<Vec> found;
  std::function<void(std::size_t, Mat&, Vec&)> dfs = [&](std::size_t k, Mat& lhs, Vec& rhs) {
    if (found) return;
    if (k == others.size()) {
      std::vector<std::size_t> free_pts;
      for (auto s : others)
        if (types[s] == 0) free_pts.push_back(s);
      // Variables: a, u (d per free point), eps.
      const std::size_t nu = free_pts.size() * d, total = nv + nu + 1;
      LinearProgram lp(total);
      lp.objective[total - 1] = 1;
      for (std::size_t r = 0; r < lhs.size(); ++r) {
        Vec row = lhs[r];
        row.resize(total, Rational(0));
        lp.add_eq(std::move(row), rhs[r]);
      }
      for (std::size_t f = 0; f < free_pts.size(); ++f) {
        std::size_t s = free_pts[f];
        Vec sum = zeros(total);
        for (std::size_t kk = 0; kk < d; ++kk) {
          Vec y = zeros(total);  // (G_s zhat)_kk
          for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < m; ++j) y[i * m + j] = zhat[i] * H.basis()[j][H.flat(s, kk)];
          const std::size_t u = nv + f * d + kk;
          Vec a = y;
          a[u] = -1;
          lp.add_le(a, 0);
          Vec b = neg(y);
          b[u] = -1;
          lp.add_le(b, 0);
          sum[u] = 1;
        }
        sum[total - 1] = -1;
        lp.add_le(std::move(sum), 0);
      }
      lp.add_ge(unit(total, total - 1), 0);
      LPOutcome r = lp_solve(lp, false);
      if (r.status != LPStatus::Optimal) return;
      Vec a(r.point.begin(), r.point.begin() + static_cast<long>(nv));
      for (auto s : free_pts)
        if (!certified_below_one(G_at(a, s), z, p)) return;
      found = a;
      return;
    }
    const std::size_t s = others[k];
    for (int ty : {0, 1, -1}) {
      types[s] = ty;
      if (ty == 0) {
        dfs(k + 1, lhs, rhs);
      } else {
        const std::size_t mark = lhs.size();
        block_rows(s, Rational(ty), lhs, rhs);
        if (solve(lhs, rhs, nv)) dfs(k + 1, lhs, rhs);
        lhs.resize(mark);
        rhs.resize(mark);
      }
      if (found) return;
    }
    types[s] = 0;
  };
  dfs(0, base_lhs, base_rhs);
  if (!found) return std::nullopt;
  red.types = types;
  red.types[t] = red.c_S == 1 ? 1 : 0;
  red.G_coefficients.assign(d, zeros(m));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < m; ++j) red.G_coefficients[i][j] = (*found)[i * m + j];
  return red;
}

VectorRepresentingSet representing_measures_vector(const FunctionSpace& H, const Vec& phi) {
  RepProblem p = vector_problem(H, phi);
  VectorRepresentingSet out;
  out.norm = p.minimize().value;
  out.norm_approx = out.norm->get_d();
  for (const auto& v : p.vertices(*out.norm)) {
    VectorMeasure mu = unflatten(v, H.n(), H.d());
    check(total_variation(H.target(), mu) == *out.norm, "representing vertex mass");
    check(H.action(mu) == phi, "representing vertex action");
    out.vertices.push_back(std::move(mu));
  }
  return out;
}

VectorRepresentingSet representing_measures_vector(const FunctionSpace& H, std::size_t t, const Vec& x_star) {
  if (t >= H.n()) throw Error(ErrorCode::InvalidInput, "point index out of range");
  if (H.target().polyhedral()) return representing_measures_vector(H, H.lin_evaluation(t, x_star));
  VectorRepresentingSet out;
  if (is_zero(H.lin_evaluation(t, x_star))) {
    out.norm = 0;
    out.vertices = {VectorMeasure(H.n(), zeros(H.d()))};
    return out;
  }
  out.reduction = lp_reduction(H, t, x_star);
  if (!out.reduction)
    throw Error(ErrorCode::SmoothNormUnsupported,
                "representing_measures_vector: no strictly-convex reduction certificate at this probe");
  ScalarRepresentingSet s = representing_measures_scalar(out.reduction->S, t);
  check(s.norm == out.reduction->c_S, "reduction norm mismatch");
  out.norm_approx = s.norm.get_d() * norm_value(H.target(), x_star, Side::Dual).approx;
  for (const auto& sigma : s.vertices) out.vertices.push_back(tensor(sigma, x_star));
  return out;
}

// ---- probes ----------------------------------------------------------------------------------

namespace {

Vec sign_normalize(const Vec& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return sgn(x) < 0 ? neg(v) : v;
  return v;
}

std::vector<Vec> polyhedral_directions(const NormSpec& E) {
  DualBall b = dual_ball(E);
  std::vector<Vec> out;
  for (const auto& v : b.ext_points) out.push_back(sign_normalize(v));
  for (const auto& f : *b.polytope.facets) {
    Vec bar = zeros(E.dim());
    for (auto i : f.incident) bar = add(bar, b.ext_points[i]);
    out.push_back(sign_normalize(scale(inv(f.incident.size()), bar)));
  }
  for (std::size_t i = 0; i < b.ext_points.size(); ++i)
    for (std::size_t j = i + 1; j < b.ext_points.size(); ++j) {
      Vec mid = add(b.ext_points[i], b.ext_points[j]);
      if (is_zero(mid)) continue;
      Rational nrm = norm_exact(E, mid, Side::Dual);
      out.push_back(sign_normalize(scale(1 / nrm, mid)));
    }
  sort_unique(out);
  return out;
}

std::vector<Vec> lp_directions(std::size_t d) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < d; ++i) out.push_back(unit(d, i));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (const char* a : {"1/8", "-1/8"}) {
        Vec v = unit(d, j);
        v[i] = parse_rational(a);
        out.push_back(v);
      }
  return out;
}

struct ProbeOutcome {
  ProbeRecord record;
  std::optional<Witness> witness;
  std::vector<VectorMeasure> all_vertices;  // full representing set, when requested
};

// The l_p probes e_j + a e_i may be retried with a halved a when no certificate exists.
std::optional<Vec> shrink(const Vec& x) {
  std::size_t nz = 0, small = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sgn(x[i]) != 0) {
      ++nz;
      if (abs(x[i]) < 1) small = i + 1;
    }
  if (nz != 2 || small == 0 || abs(x[small - 1]) < Rational(1) / 512) return std::nullopt;
  Vec y = x;
  y[small - 1] /= 2;
  return y;
}

void verify_witness(const FunctionSpace& H, const Witness& w, const Rational& scalar_mass) {
  check(w.first != w.second, "witness measures coincide");
  if (w.x_star.empty()) {
    for (const auto* mu : {&w.first, &w.second}) {
      Vec v;
      for (const auto& r : *mu) v.push_back(r[0]);
      check(is_boundary_measure(H, v), "witness is not boundary");
      check(l1(v) == scalar_mass, "witness mass");
    }
    return;
  }
  for (const auto* mu : {&w.first, &w.second}) {
    check(is_boundary_measure(H, *mu), "witness is not boundary");
    check(H.action(*mu) == H.lin_evaluation(*w.t, w.x_star), "witness action");
    if (H.target().polyhedral()) check(total_variation(H.target(), *mu) == *w.mass, "witness mass");
  }
  (void)scalar_mass;
}

ProbeOutcome evaluate_probe(const FunctionSpace& H, const std::vector<bool>& ch, Probe probe, bool want_vertices) {
  ProbeOutcome out;
  const std::size_t n = H.n(), d = H.d();
  if (is_zero(H.lin_evaluation(probe.t, probe.x_star))) {
    out.record = {probe, true, ""};
    if (want_vertices) out.all_vertices = {VectorMeasure(n, zeros(d))};
    return out;
  }
  if (H.target().polyhedral()) {
    RepProblem p = vector_problem(H, H.lin_evaluation(probe.t, probe.x_star));
    Rational c = p.minimize().value;
    if (want_vertices)
      for (const auto& v : p.vertices(c)) out.all_vertices.push_back(unflatten(v, n, d));
    RepProblem b = p;
    b.allowed = ch;
    std::size_t dim = b.dimension(c);
    out.record = {probe, dim == 0, ""};
    if (dim > 0) {
      auto vs = b.vertices(c);
      std::sort(vs.begin(), vs.end(), lex_greater);
      Witness w{probe.t, probe.x_star, H.lin_evaluation(probe.t, probe.x_star), unflatten(vs[0], n, d),
                unflatten(vs[1], n, d), c};
      verify_witness(H, w, c);
      out.witness = std::move(w);
    }
    return out;
  }
  std::optional<LpReduction> red = lp_reduction(H, probe.t, probe.x_star);
  while (!red) {
    auto smaller = shrink(probe.x_star);
    if (!smaller) {
      out.record = {probe, true, "skipped: no strictly-convex reduction certificate"};
      return out;
    }
    probe.x_star = *smaller;
    red = lp_reduction(H, probe.t, probe.x_star);
  }
  RepProblem p = scalar_problem(red->S, probe.t);
  check(p.minimize().value == red->c_S, "reduction norm mismatch");
  if (want_vertices)
    for (const auto& v : p.vertices(red->c_S)) out.all_vertices.push_back(tensor(v, probe.x_star));
  RepProblem b = p;
  b.allowed = ch;
  std::size_t dim = b.dimension(red->c_S);
  out.record = {probe, dim == 0, ""};
  if (dim > 0) {
    auto vs = b.vertices(red->c_S);
    std::sort(vs.begin(), vs.end(), lex_greater);
    Witness w{probe.t, probe.x_star, H.lin_evaluation(probe.t, probe.x_star), tensor(vs[0], probe.x_star),
              tensor(vs[1], probe.x_star), std::nullopt};
    verify_witness(H, w, red->c_S);
    out.witness = std::move(w);
  }
  return out;
}

std::vector<Probe> probe_list(const FunctionSpace& H, const std::vector<Probe>& extra) {
  std::vector<Probe> all;
  for (const auto& p : extra) {
    if (p.t >= H.n()) throw Error(ErrorCode::InvalidInput, "probe point out of range");
    if (p.x_star.size() != H.d()) throw Error(ErrorCode::DimensionMismatch, "probe functional length");
    if (std::find(all.begin(), all.end(), p) == all.end()) all.push_back(p);
  }
  for (const auto& p : default_probes(H))
    if (std::find(all.begin(), all.end(), p) == all.end()) all.push_back(p);
  return all;
}

Mat column(const ScalarMeasure& v) {
  Mat m;
  for (const auto& x : v) m.push_back(Vec{x});
  return m;
}

// Boundary-restricted M_t(H_w): dimension and, when it is not a point, its two lex-greatest vertices.
struct WeakProbe {
  std::size_t dim = 0;
  Rational norm;
  Vec point;
  std::vector<Vec> vertices;
};

WeakProbe weak_probe(const ScalarSpace& Hw, const std::vector<bool>& ch, std::size_t t) {
  RepProblem p = scalar_problem(Hw, t);
  WeakProbe out;
  out.norm = p.minimize().value;
  RepProblem b = p;
  b.allowed = ch;
  LPOutcome r = b.minimize();
  check(r.value == out.norm, "no boundary measure in M_t");  // existence of a boundary representing measure
  out.point = b.measure_part(r.point);
  out.dim = b.dimension(out.norm);
  if (out.dim > 0) {
    out.vertices = b.vertices(out.norm);
    std::sort(out.vertices.begin(), out.vertices.end(), lex_greater);
  }
  return out;
}

}  // namespace

std::vector<Probe> default_probes(const FunctionSpace& H) {
  std::vector<Vec> dirs = H.target().polyhedral() ? polyhedral_directions(H.target()) : lp_directions(H.d());
  std::vector<Probe> out;
  for (std::size_t t = 0; t < H.n(); ++t)
    for (const auto& x : dirs) out.push_back({t, x});
  return out;
}

const char* to_string(SimplicialityKind k) {
  switch (k) {
    case SimplicialityKind::Weak: return "weak";
    case SimplicialityKind::FunctionalWeak: return "functional-weak";
    case SimplicialityKind::Vector: return "vector";
    case SimplicialityKind::FunctionalVector: return "functional-vector";
  }
  return "?";
}

const char* to_string(SimplicialityStatus s) {
  switch (s) {
    case SimplicialityStatus::Holds: return "Holds";
    case SimplicialityStatus::HoldsOnProbes: return "HoldsOnProbes";
    case SimplicialityStatus::Fails: return "Fails";
  }
  return "?";
}

SimplicialityVerdict weak_simplicial(const FunctionSpace& H) {
  ScalarSpace Hw = weak_space(H);
  std::vector<bool> ch = boundary_mask(H);
  auto probes = parallel_map<WeakProbe>(H.n(), [&](std::size_t t) { return weak_probe(Hw, ch, t); });
  SimplicialityVerdict v;
  v.kind = SimplicialityKind::Weak;
  for (std::size_t t = 0; t < H.n(); ++t) {
    v.probe_log.push_back({{t, {}}, probes[t].dim == 0, ""});
    if (probes[t].dim == 0) continue;
    Witness w{t, {}, Hw.evaluation(t), column(probes[t].vertices[0]), column(probes[t].vertices[1]), probes[t].norm};
    verify_witness(H, w, probes[t].norm);
    v.failures.push_back(std::move(w));
  }
  v.status = v.failures.empty() ? SimplicialityStatus::Holds : SimplicialityStatus::Fails;
  if (!v.failures.empty()) v.witness = v.failures.front();
  return v;
}

std::optional<ScalarMeasure> unique_boundary_scalar(const FunctionSpace& H, std::size_t t) {
  WeakProbe p = weak_probe(weak_space(H), boundary_mask(H), t);
  if (p.dim != 0) return std::nullopt;
  return p.point;
}

SimplicialityVerdict functional_weak_simplicial(const FunctionSpace& H) {
  ScalarSpace Hw = weak_space(H);
  if (!Hw.contains_constants())
    throw Error(ErrorCode::NoConstantsInHw, "functional weak simpliciality is only decided when H_w contains constants");
  SimplicialityVerdict v;
  v.kind = SimplicialityKind::FunctionalWeak;
  Polytope P = state_space(Hw);
  if (P.vertices.size() == P.affine_dim() + 1) {
    v.status = SimplicialityStatus::Holds;
    return v;
  }
  // Affine dependency sum a_i v_i = 0, sum a_i = 0 among the vertices, split by sign.
  const std::size_t k = P.vertices.size();
  Mat rows(Hw.m() + 1, zeros(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t c = 0; c < Hw.m(); ++c) rows[c][i] = P.vertices[i][c];
    rows[Hw.m()][i] = 1;
  }
  Mat dep = nullspace(rows, k);
  check(!dep.empty(), "non-simplex state space without an affine dependency");
  const Vec& a = dep.front();
  auto point_of = [&](const Vec& vert) {
    for (std::size_t t = 0; t < Hw.n(); ++t)
      if (Hw.evaluation(t) == vert) return t;
    check(false, "state space vertex is not an evaluation");
    return std::size_t{0};
  };
  Vec plus = zeros(Hw.n()), minus = zeros(Hw.n());
  Rational sp = 0, sm = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (sgn(a[i]) > 0) {
      plus[point_of(P.vertices[i])] += a[i];
      sp += a[i];
    } else if (sgn(a[i]) < 0) {
      minus[point_of(P.vertices[i])] -= a[i];
      sm -= a[i];
    }
  }
  plus = scale(1 / sp, plus);
  minus = scale(1 / sm, minus);
  Vec phi = zeros(Hw.m());
  for (std::size_t t = 0; t < Hw.n(); ++t) phi = add(phi, scale(plus[t], Hw.evaluation(t)));
  Witness w{std::nullopt, {}, phi, column(plus), column(minus), Rational(1)};
  if (lex_less(flatten(w.first), flatten(w.second))) std::swap(w.first, w.second);
  check(scalar_functional_norm(Hw, phi) == 1, "state has norm one");
  verify_witness(H, w, 1);
  v.status = SimplicialityStatus::Fails;
  v.failures.push_back(w);
  v.witness = w;
  return v;
}

SimplicialityVerdict vector_simplicial(const FunctionSpace& H, const std::vector<Probe>& extra) {
  std::vector<bool> ch = boundary_mask(H);
  std::vector<Probe> probes = probe_list(H, extra);
  auto outcomes =
      parallel_map<ProbeOutcome>(probes.size(), [&](std::size_t i) { return evaluate_probe(H, ch, probes[i], false); });
  SimplicialityVerdict v;
  v.kind = SimplicialityKind::Vector;
  for (auto& o : outcomes) {
    v.probe_log.push_back(o.record);
    if (o.witness) v.failures.push_back(std::move(*o.witness));
  }
  if (!v.failures.empty()) {
    v.status = SimplicialityStatus::Fails;
    v.witness = v.failures.front();
    return v;
  }
  v.status = SimplicialityStatus::HoldsOnProbes;
  if (constants_status(H) == ConstantsStatus::Full) {
    // With constants, a weak failure sigma_1 != sigma_2 lifts to sigma_i (x) x* for any unit x*.
    SimplicialityVerdict weak = weak_simplicial(H);
    if (weak.status == SimplicialityStatus::Fails) {
      const Witness& ww = *weak.witness;
      // ||e_1||_* = 1 for l_p targets; polyhedral targets are normalized exactly.
      Vec x = unit(H.d(), 0);
      if (H.target().polyhedral()) x = scale(1 / norm_exact(H.target(), x, Side::Dual), x);
      Vec s1, s2;
      for (std::size_t s = 0; s < H.n(); ++s) {
        s1.push_back(ww.first[s][0]);
        s2.push_back(ww.second[s][0]);
      }
      Witness w{ww.t, x, H.lin_evaluation(*ww.t, x), tensor(s1, x), tensor(s2, x), std::nullopt};
      if (H.target().polyhedral()) w.mass = total_variation(H.target(), w.first);
      verify_witness(H, w, ww.mass.value_or(1));
      v.status = SimplicialityStatus::Fails;
      v.failures.push_back(w);
      v.witness = w;
    }
  }
  return v;
}

namespace {

Subspace weak_span(const Subspace& V, std::size_t n, std::size_t d) {
  Mat gens;
  for (const auto& f : V.basis)
    for (std::size_t i = 0; i < d; ++i) {
      Vec g(n);
      for (std::size_t s = 0; s < n; ++s) g[s] = f[s * d + i];
      gens.push_back(std::move(g));
    }
  return Subspace::span(gens, n);
}

}  // namespace

namespace {

// A_c(H_w) and A_c^w(H): the kernels of eps_t - mu over every vertex mu of every M_t(H_w).
AcSpaces weak_ac_spaces(const FunctionSpace& H) {
  const std::size_t n = H.n(), d = H.d();
  ScalarSpace Hw = weak_space(H);
  auto sets = parallel_map<ScalarRepresentingSet>(n, [&](std::size_t t) { return representing_measures_scalar(Hw, t); });
  Mat scalar_rows, w_rows;
  for (std::size_t t = 0; t < n; ++t)
    for (const auto& mu : sets[t].vertices) {
      Vec r = neg(mu);
      r[t] += 1;
      if (is_zero(r)) continue;
      scalar_rows.push_back(r);
      for (std::size_t i = 0; i < d; ++i) {
        Vec row = zeros(n * d);
        for (std::size_t s = 0; s < n; ++s) row[s * d + i] = r[s];
        w_rows.push_back(std::move(row));
      }
    }
  AcSpaces out;
  out.ac_scalar = Subspace::kernel(scalar_rows, n);
  out.ac_w = Subspace::kernel(w_rows, n * d);
  return out;
}

}  // namespace

AcSpaces ac_spaces(const FunctionSpace& H, const std::vector<Probe>& extra) {
  const std::size_t n = H.n(), d = H.d();
  AcSpaces out = weak_ac_spaces(H);

  std::vector<bool> ch = boundary_mask(H);
  std::vector<Probe> probes = probe_list(H, extra);
  auto outcomes =
      parallel_map<ProbeOutcome>(probes.size(), [&](std::size_t i) { return evaluate_probe(H, ch, probes[i], true); });
  Mat v_rows;
  for (auto& o : outcomes) {
    out.probe_log.push_back(o.record);
    for (const auto& mu : o.all_vertices) {
      Vec row = neg(flatten(mu));
      const Probe& p = o.record.probe;
      for (std::size_t i = 0; i < d; ++i) row[p.t * d + i] += p.x_star[i];
      if (!is_zero(row)) v_rows.push_back(std::move(row));
    }
  }
  out.ac_v_upper = Subspace::kernel(v_rows, n * d);
  out.ac_v_upper_weak = weak_span(out.ac_v_upper, n, d);
  out.ac_v_certified_negative = constants_status(H) == ConstantsStatus::Full && !out.ac_w.subset_of(out.ac_v_upper);
  check(H.as_subspace().subset_of(out.ac_w), "H is not contained in A_c^w(H)");
  check(H.as_subspace().subset_of(out.ac_v_upper), "H is not contained in the A_c^v bound");
  return out;
}

DilationSuite dilation_suite(const FunctionSpace& H) {
  const std::size_t n = H.n(), d = H.d();
  ScalarSpace Hw = weak_space(H);
  if (!Hw.contains_constants()) throw Error(ErrorCode::NoConstantsInHw, "dilation needs constants in H_w");
  std::vector<bool> ch = boundary_mask(H);
  auto probes = parallel_map<WeakProbe>(n, [&](std::size_t t) { return weak_probe(Hw, ch, t); });
  DilationSuite out;
  for (std::size_t t = 0; t < n; ++t) {
    if (probes[t].dim != 0) throw Error(ErrorCode::NotWeaklySimplicial, "dilation needs a weakly simplicial space");
    out.D.push_back(probes[t].point);
  }
  auto& c = out.checks;
  Mat DD(n, zeros(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = 0; k < n; ++k) DD[a][b] += out.D[a][k] * out.D[k][b];
  c.idempotent = DD == out.D;
  c.rows_boundary_probabilities = true;
  for (const auto& row : out.D) {
    Rational s = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (sgn(row[k]) < 0 || (sgn(row[k]) != 0 && !ch[k])) c.rows_boundary_probabilities = false;
      s += row[k];
    }
    if (s != 1) c.rows_boundary_probabilities = false;
  }
  AcSpaces ac = weak_ac_spaces(H);
  Mat fix;
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t i = 0; i < d; ++i) {
      Vec row = zeros(n * d);
      for (std::size_t s = 0; s < n; ++s) row[s * d + i] -= out.D[t][s];
      row[t * d + i] += 1;
      fix.push_back(std::move(row));
    }
  c.fixed_space_is_ac_w = Subspace::kernel(fix, n * d) == ac.ac_w;

  std::vector<std::size_t> bpts;
  for (std::size_t s = 0; s < n; ++s)
    if (ch[s]) bpts.push_back(s);
  c.dim_ac_w = ac.ac_w.dim();
  c.boundary_size = bpts.size();
  Mat restricted;
  for (const auto& f : ac.ac_w.basis) {
    Vec r;
    for (auto s : bpts)
      for (std::size_t i = 0; i < d; ++i) r.push_back(f[s * d + i]);
    restricted.push_back(std::move(r));
  }
  c.restriction_bijective = c.dim_ac_w == bpts.size() * d && rank(restricted, bpts.size() * d) == c.dim_ac_w;

  if (H.target().polyhedral()) {
    // sup over { f in A_c^w : ||f(s)|| <= 1 on Ch } of <w, f(t)> for t off Ch.
    c.restriction_isometric = true;
    const std::size_t k = c.dim_ac_w;
    for (std::size_t t = 0; t < n && c.restriction_isometric; ++t) {
      if (ch[t]) continue;
      for (const auto& w : H.target().dual_vertices()) {
        LinearProgram lp(k);
        for (auto s : bpts)
          for (const auto& v : H.target().dual_vertices()) {
            Vec row(k);
            for (std::size_t b = 0; b < k; ++b) {
              Vec val(ac.ac_w.basis[b].begin() + static_cast<long>(s * d),
                      ac.ac_w.basis[b].begin() + static_cast<long>((s + 1) * d));
              row[b] = dot(v, val);
            }
            lp.add_le(std::move(row), 1);
          }
        for (std::size_t b = 0; b < k; ++b) {
          Vec val(ac.ac_w.basis[b].begin() + static_cast<long>(t * d),
                  ac.ac_w.basis[b].begin() + static_cast<long>((t + 1) * d));
          lp.objective[b] = -dot(w, val);
        }
        LPOutcome r = lp_solve(lp, false);
        if (r.status != LPStatus::Optimal || -r.value > 1) {
          c.restriction_isometric = false;
          break;
        }
      }
    }
  } else {
    // Rows of D are probabilities on Ch, so f(t) is a convex combination of boundary values.
    c.restriction_isometric = c.rows_boundary_probabilities && c.fixed_space_is_ac_w;
  }
  return out;
}

bool is_cross_polytope(const std::vector<Vec>& vertices, std::size_t dim) {
  if (vertices.size() != 2 * dim) return false;
  for (const auto& v : vertices)
    if (std::find(vertices.begin(), vertices.end(), neg(v)) == vertices.end()) return false;
  return rank(vertices, dim) == dim;
}

L1PredualCheck l1_predual_check(const FunctionSpace& H) {
  if (!H.target().polyhedral())
    throw Error(ErrorCode::SmoothNormUnsupported, "l1_predual_check with target " + H.target().describe());
  ScalarSpace Hw = weak_space(H);
  if (!Hw.contains_constants()) throw Error(ErrorCode::NoConstantsInHw, "l1_predual_check needs constants in H_w");
  const std::size_t n = H.n(), d = H.d();
  L1PredualCheck out;
  out.E_is_l1_predual = is_cross_polytope(H.target().dual_vertices(), d);
  AcSpaces ac = weak_ac_spaces(H);
  const std::size_t k = ac.ac_w.dim();
  std::vector<Vec> gens;
  for (std::size_t t = 0; t < n; ++t)
    for (const auto& w : H.target().dual_vertices()) {
      Vec g(k);
      for (std::size_t b = 0; b < k; ++b) {
        Vec val(ac.ac_w.basis[b].begin() + static_cast<long>(t * d),
                ac.ac_w.basis[b].begin() + static_cast<long>((t + 1) * d));
        g[b] = dot(w, val);
      }
      gens.push_back(std::move(g));
    }
  out.acw_is_l1_predual = is_cross_polytope(extreme_points(gens), k);
  out.weakly_simplicial = weak_simplicial(H).status == SimplicialityStatus::Holds;
  if (separates_points(Hw))
    check(out.acw_is_l1_predual == (out.weakly_simplicial && out.E_is_l1_predual),
          "L1-predual equivalence violated");
  return out;
}

}  // namespace choquet
