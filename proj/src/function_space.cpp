#include "choquet/function_space.hpp"

#include <algorithm>
#include <set>

#include "choquet/errors.hpp"
#include "choquet/lp.hpp"

namespace choquet {

FiniteCompact::FiniteCompact(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw Error(ErrorCode::InvalidInput, "K must have at least one point");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw Error(ErrorCode::InvalidInput, "duplicate point labels");
}

std::size_t FiniteCompact::index(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw Error(ErrorCode::InvalidInput, "unknown point '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

Vec ScalarSpace::evaluation(std::size_t t) const {
  Vec e(m());
  for (std::size_t k = 0; k < m(); ++k) e[k] = basis[k][t];
  return e;
}

bool ScalarSpace::contains(const Vec& f) const { return as_subspace().contains(f); }

bool ScalarSpace::contains_constants() const { return contains(Vec(n(), Rational(1))); }

ScalarSpace make_scalar_space(const FiniteCompact& K, const Mat& generators) {
  ScalarSpace S;
  S.points = K;
  S.basis = Subspace::span(generators, K.size()).basis;
  return S;
}

FunctionSpace::FunctionSpace(FiniteCompact K, NormSpec E, Mat basis)
    : K_(std::move(K)), E_(std::move(E)), basis_(std::move(basis)) {
  const std::size_t len = n() * d();
  if (basis_.empty()) throw Error(ErrorCode::InvalidInput, "function space needs a basis element");
  for (const auto& b : basis_)
    if (b.size() != len) throw Error(ErrorCode::DimensionMismatch, "basis function length");
  if (rank(basis_, len) != basis_.size())
    throw Error(ErrorCode::InvalidInput, "basis functions are linearly dependent");
}

FunctionSpace FunctionSpace::from_constraints(FiniteCompact K, NormSpec E, const Mat& constraints) {
  const std::size_t len = K.size() * E.dim();
  for (const auto& c : constraints)
    if (c.size() != len) throw Error(ErrorCode::DimensionMismatch, "constraint length");
  Mat basis = Subspace::kernel(constraints, len).basis;
  return FunctionSpace(std::move(K), std::move(E), std::move(basis));
}

FunctionSpace FunctionSpace::full(FiniteCompact K, NormSpec E) {
  return from_constraints(std::move(K), std::move(E), {});
}

Vec FunctionSpace::value(std::size_t j, std::size_t s) const {
  return Vec(basis_[j].begin() + static_cast<long>(s * d()),
             basis_[j].begin() + static_cast<long>((s + 1) * d()));
}

Mat FunctionSpace::evaluation_operator(std::size_t t) const {
  Mat U(d(), zeros(m()));
  for (std::size_t j = 0; j < m(); ++j)
    for (std::size_t i = 0; i < d(); ++i) U[i][j] = basis_[j][flat(t, i)];
  return U;
}

Vec FunctionSpace::lin_evaluation(std::size_t t, const Vec& x_star) const {
  if (x_star.size() != d()) throw Error(ErrorCode::DimensionMismatch, "functional length");
  Vec e(m());
  for (std::size_t j = 0; j < m(); ++j) e[j] = dot(x_star, value(j, t));
  return e;
}

Vec FunctionSpace::action(const Mat& measure) const {
  if (measure.size() != n()) throw Error(ErrorCode::DimensionMismatch, "measure rows");
  Vec e = zeros(m());
  for (std::size_t s = 0; s < n(); ++s) {
    if (measure[s].size() != d()) throw Error(ErrorCode::DimensionMismatch, "measure row length");
    if (is_zero(measure[s])) continue;
    for (std::size_t j = 0; j < m(); ++j) e[j] += dot(measure[s], value(j, s));
  }
  return e;
}

bool FunctionSpace::contains(const Vec& f) const { return as_subspace().contains(f); }

ScalarSpace weak_space(const FunctionSpace& H) {
  Mat gens;
  for (std::size_t j = 0; j < H.m(); ++j)
    for (std::size_t i = 0; i < H.d(); ++i) {
      Vec g(H.n());
      for (std::size_t s = 0; s < H.n(); ++s) g[s] = H.basis()[j][H.flat(s, i)];
      gens.push_back(std::move(g));
    }
  return make_scalar_space(H.points(), gens);
}

const char* to_string(ConstantsStatus c) {
  switch (c) {
    case ConstantsStatus::Full: return "Full";
    case ConstantsStatus::Some: return "Some";
    case ConstantsStatus::None: return "None";
  }
  return "?";
}

Subspace constant_subspace(const FunctionSpace& H) {
  Mat ann = H.as_subspace().annihilator();
  Mat rows;
  for (const auto& a : ann) {
    Vec r = zeros(H.d());
    for (std::size_t s = 0; s < H.n(); ++s)
      for (std::size_t i = 0; i < H.d(); ++i) r[i] += a[H.flat(s, i)];
    rows.push_back(std::move(r));
  }
  return Subspace::kernel(rows, H.d());
}

ConstantsStatus constants_status(const FunctionSpace& H) {
  std::size_t k = constant_subspace(H).dim();
  if (k == H.d()) return ConstantsStatus::Full;
  return k > 0 ? ConstantsStatus::Some : ConstantsStatus::None;
}

bool separates_points(const ScalarSpace& S) {
  for (std::size_t u = 0; u < S.n(); ++u)
    for (std::size_t v = u + 1; v < S.n(); ++v)
      if (S.evaluation(u) == S.evaluation(v)) return false;
  return true;
}

StructureReport structure_report(const FunctionSpace& H, std::size_t s, std::size_t t) {
  if (s == t) throw Error(ErrorCode::SamePoint, "structure_report needs two distinct points");
  if (s >= H.n() || t >= H.n()) throw Error(ErrorCode::InvalidInput, "point index out of range");
  StructureReport r;
  ScalarSpace Hw = weak_space(H);
  r.separates = separates_points(Hw);
  r.constants = constants_status(H);
  r.constants_w = Hw.contains_constants();
  Mat at_t, pair, diff;
  for (std::size_t j = 0; j < H.m(); ++j) {
    Vec a = H.value(j, s), b = H.value(j, t);
    at_t.push_back(b);
    Vec ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    pair.push_back(std::move(ab));
    diff.push_back(sub(a, b));
  }
  r.H_t = Subspace::span(at_t, H.d());
  r.H_st = Subspace::span(pair, 2 * H.d());
  r.H_s_minus_t = Subspace::span(diff, H.d());
  return r;
}

namespace {

// Rows of <w, h(s)> <= 1 over all points s and dual vertices w, in coefficient space.
void add_ball_rows(const FunctionSpace& H, LinearProgram& lp, std::size_t offset) {
  for (std::size_t s = 0; s < H.n(); ++s)
    for (const auto& w : H.target().dual_vertices()) {
      Vec row = zeros(lp.num_vars);
      for (std::size_t j = 0; j < H.m(); ++j) row[offset + j] = dot(w, H.value(j, s));
      lp.add_le(std::move(row), 1);
    }
}

Rational maximize(LinearProgram lp, const Vec& objective) {
  lp.objective = neg(objective);
  LPOutcome r = lp_solve(lp, false);
  check(r.status == LPStatus::Optimal, "norm LP is not bounded and feasible");
  return -r.value;
}

}  // namespace

Rational lin_evaluation_norm(const FunctionSpace& H, std::size_t t, const Vec& y_star) {
  LinearProgram lp(H.m());
  add_ball_rows(H, lp, 0);
  return maximize(lp, H.lin_evaluation(t, y_star));
}

Rational weak_evaluation_norm(const ScalarSpace& S, std::size_t t) {
  LinearProgram lp(S.m());
  for (std::size_t s = 0; s < S.n(); ++s) {
    Vec e = S.evaluation(s);
    lp.add_le(e, 1);
    lp.add_le(neg(e), 1);
  }
  return maximize(lp, S.evaluation(t));
}

Vec hs_evaluation(const FunctionSpace& H, const ScalarSpace& Hw, std::size_t t, const Vec& x_star) {
  Vec e = Hw.evaluation(t);
  Vec l = H.lin_evaluation(t, x_star);
  e.insert(e.end(), l.begin(), l.end());
  return e;
}

Rational hs_evaluation_norm(const FunctionSpace& H, std::size_t t, const Vec& x_star) {
  ScalarSpace Hw = weak_space(H);
  const std::size_t k = Hw.m(), m = H.m();
  LinearProgram lp(k + m);
  // |g(s)| + ||h(s)|| <= 1, i.e. +-g(s) + <w, h(s)> <= 1 for all dual vertices w.
  for (std::size_t s = 0; s < H.n(); ++s)
    for (const auto& w : H.target().dual_vertices())
      for (int sg : {1, -1}) {
        Vec row = zeros(k + m);
        for (std::size_t a = 0; a < k; ++a) row[a] = sg * Hw.basis[a][s];
        for (std::size_t j = 0; j < m; ++j) row[k + j] = dot(w, H.value(j, s));
        lp.add_le(std::move(row), 1);
      }
  return maximize(lp, hs_evaluation(H, Hw, t, x_star));
}

EvaluationNorms evaluation_norms(const FunctionSpace& H, std::size_t t, const std::optional<Vec>& x_star) {
  if (!H.target().polyhedral())
    throw Error(ErrorCode::SmoothNormUnsupported, "evaluation_norms (phi_H) with target " + H.target().describe());
  if (t >= H.n()) throw Error(ErrorCode::InvalidInput, "point index out of range");
  EvaluationNorms r;
  r.phi_H = 0;
  for (const auto& v : H.target().dual_vertices()) r.phi_H = std::max(r.phi_H, lin_evaluation_norm(H, t, v));
  ScalarSpace Hw = weak_space(H);
  r.phi_Hw = weak_evaluation_norm(Hw, t);
  Vec xs = x_star ? *x_star : zeros(H.d());
  if (x_star) r.phi_Hl = lin_evaluation_norm(H, t, *x_star);
  r.phi_Hs = hs_evaluation_norm(H, t, xs);

  ConstantsStatus cs = constants_status(H);
  check(r.phi_H <= r.phi_Hw && r.phi_Hw <= 1, "evaluation norm chain violated");
  if (norm_exact(H.target(), xs, Side::Dual) <= 1) check(r.phi_Hs == r.phi_Hw, "phi_Hs != phi_Hw");
  if (cs == ConstantsStatus::Full) {
    check(r.phi_H == 1, "constants but phi_H != 1");
    if (x_star) check(*r.phi_Hl == norm_exact(H.target(), *x_star, Side::Dual), "constants but phi_Hl != ||x*||");
  }
  if (cs != ConstantsStatus::None) check(r.phi_H == r.phi_Hw, "some constants but phi_H != phi_Hw");
  if (Hw.contains_constants()) check(r.phi_Hw == 1, "constants in H_w but phi_Hw != 1");
  return r;
}

std::vector<Vec> unit_ball_vertices(const FunctionSpace& H) {
  LinearProgram lp(H.m());
  add_ball_rows(H, lp, 0);
  HRep h(H.m());
  h.A = lp.le_lhs;
  h.b = lp.le_rhs;
  return vertex_enumeration(h);
}

Rational sup_norm(const FunctionSpace& H, const Vec& coeffs) {
  Rational best = 0;
  for (std::size_t s = 0; s < H.n(); ++s) {
    Vec v = zeros(H.d());
    for (std::size_t j = 0; j < H.m(); ++j)
      if (sgn(coeffs[j]) != 0) v = add(v, scale(coeffs[j], H.value(j, s)));
    best = std::max(best, norm_exact(H.target(), v, Side::Primal));
  }
  return best;
}

Rational operator_norm_by_ball_vertices(const FunctionSpace& H, std::size_t t) {
  Rational best = 0;
  for (const auto& c : unit_ball_vertices(H)) {
    Vec v = zeros(H.d());
    for (std::size_t j = 0; j < H.m(); ++j) v = add(v, scale(c[j], H.value(j, t)));
    best = std::max(best, norm_exact(H.target(), v, Side::Primal));
  }
  return best;
}

std::vector<Collapse> theta_collapses(const FunctionSpace& H) {
  ScalarSpace Hw = weak_space(H);
  std::vector<Collapse> out;
  for (std::size_t s = 0; s < H.n(); ++s) {
    Vec es = Hw.evaluation(s);
    if (is_zero(es)) out.push_back({s, s, -1});
    for (std::size_t t = s + 1; t < H.n(); ++t) {
      Vec et = Hw.evaluation(t);
      if (et == es) out.push_back({s, t, 1});
      if (et == neg(es)) out.push_back({s, t, -1});
    }
  }
  return out;
}

namespace {

// min sum r_s, r_s >= |mu_s|, subject to caller-provided equalities on mu (first n vars).
LPOutcome min_total_variation(std::size_t n, const Mat& eq_lhs, const Vec& eq_rhs, bool face) {
  LinearProgram lp(2 * n);
  for (std::size_t s = 0; s < n; ++s) {
    lp.objective[n + s] = 1;
    Vec a = zeros(2 * n);
    a[s] = 1;
    a[n + s] = -1;
    lp.add_le(a, 0);
    a[s] = -1;
    lp.add_le(a, 0);
  }
  for (std::size_t i = 0; i < eq_lhs.size(); ++i) {
    Vec row = eq_lhs[i];
    row.resize(2 * n, Rational(0));
    lp.add_eq(std::move(row), eq_rhs[i]);
  }
  return lp_solve(lp, face);
}

}  // namespace

Representability representable_operator(const FunctionSpace& H, const Mat& U) {
  if (U.size() != H.d()) throw Error(ErrorCode::DimensionMismatch, "operator rows must equal dim E");
  for (const auto& row : U)
    if (row.size() != H.m()) throw Error(ErrorCode::DimensionMismatch, "operator columns must equal dim H");
  Mat lhs;
  Vec rhs;
  for (std::size_t j = 0; j < H.m(); ++j)
    for (std::size_t i = 0; i < H.d(); ++i) {
      Vec row(H.n());
      for (std::size_t s = 0; s < H.n(); ++s) row[s] = H.basis()[j][H.flat(s, i)];
      lhs.push_back(std::move(row));
      rhs.push_back(U[i][j]);
    }
  LPOutcome r = min_total_variation(H.n(), lhs, rhs, false);
  Representability out;
  if (r.status != LPStatus::Optimal) return out;
  out.representable = true;
  out.norm_r = r.value;
  out.witness = Vec(r.point.begin(), r.point.begin() + static_cast<long>(H.n()));
  return out;
}

Mat upsilon(const FunctionSpace& H, const ScalarSpace& Hw, const Vec& phi) {
  if (phi.size() != Hw.m()) throw Error(ErrorCode::DimensionMismatch, "functional on H_w basis");
  Mat U(H.d(), zeros(H.m()));
  for (std::size_t j = 0; j < H.m(); ++j)
    for (std::size_t i = 0; i < H.d(); ++i) {
      Vec g(H.n());
      for (std::size_t s = 0; s < H.n(); ++s) g[s] = H.basis()[j][H.flat(s, i)];
      auto c = coordinates(Hw.basis, g);
      check(c.has_value(), "coordinate slice outside H_w");
      U[i][j] = dot(*c, phi);
    }
  return U;
}

Rational scalar_functional_norm(const ScalarSpace& S, const Vec& phi) {
  if (phi.size() != S.m()) throw Error(ErrorCode::DimensionMismatch, "functional on basis");
  LPOutcome r = min_total_variation(S.n(), S.basis, phi, false);
  check(r.status == LPStatus::Optimal, "scalar functional not representable");
  return r.value;
}

Polytope state_space(const ScalarSpace& S) {
  if (!S.contains_constants()) throw Error(ErrorCode::NoConstants, "state space needs constants");
  std::vector<Vec> pts;
  for (std::size_t t = 0; t < S.n(); ++t) pts.push_back(S.evaluation(t));
  Polytope P = polytope_from_points(pts);
  P.dim = S.m();
  return P;
}

}  // namespace choquet
