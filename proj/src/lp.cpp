#include "choquet/lp.hpp"

#include "choquet/errors.hpp"
#include "choquet/linalg.hpp"

namespace choquet {

void LinearProgram::add_eq(Vec a, Rational b) {
  eq_lhs.push_back(std::move(a));
  eq_rhs.push_back(std::move(b));
}

void LinearProgram::add_le(Vec a, Rational b) {
  le_lhs.push_back(std::move(a));
  le_rhs.push_back(std::move(b));
}

void LinearProgram::add_ge(Vec a, Rational b) { add_le(neg(a), -b); }

void LinearProgram::set_nonneg(std::size_t j) {
  if (nonneg.empty()) nonneg.assign(num_vars, false);
  nonneg[j] = true;
}

void LinearProgram::validate() const {
  auto bad = [&](const std::string& w) { throw Error(ErrorCode::DimensionMismatch, "lp: " + w); };
  if (objective.size() != num_vars) bad("objective length");
  if (eq_lhs.size() != eq_rhs.size() || le_lhs.size() != le_rhs.size()) bad("rhs length");
  for (const auto& r : eq_lhs)
    if (r.size() != num_vars) bad("equality row length");
  for (const auto& r : le_lhs)
    if (r.size() != num_vars) bad("inequality row length");
  if (!nonneg.empty() && nonneg.size() != num_vars) bad("sign vector length");
}

namespace {

// Dense tableau over y >= 0 with rows  T[r][0..cols) y = T[r][cols].
struct Tableau {
  Mat t;
  std::size_t cols = 0;
  std::vector<std::size_t> basis;

  void pivot(std::size_t pr, std::size_t pc) {
    Rational inv = 1 / t[pr][pc];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols; ++j) {
      if (sgn(t[pr][j]) == 0) continue;
      t[pr][j] *= inv;
      nz.push_back(j);
    }
    for (std::size_t r = 0; r < t.size(); ++r) {
      if (r == pr || sgn(t[r][pc]) == 0) continue;
      Rational f = t[r][pc];
      for (auto j : nz) t[r][j] -= f * t[pr][j];
    }
    basis[pr] = pc;
  }

  // Bland's rule; columns >= allowed are never entered. Returns false when unbounded.
  bool optimize(const Vec& cost, std::size_t allowed) {
    std::vector<bool> in_basis(cols, false);
    for (;;) {
      std::fill(in_basis.begin(), in_basis.end(), false);
      for (auto b : basis) in_basis[b] = true;
      std::size_t enter = cols;
      for (std::size_t j = 0; j < allowed && enter == cols; ++j) {
        if (in_basis[j]) continue;
        Rational d = cost[j];
        for (std::size_t r = 0; r < t.size(); ++r)
          if (sgn(t[r][j]) != 0 && sgn(cost[basis[r]]) != 0) d -= cost[basis[r]] * t[r][j];
        if (sgn(d) < 0) enter = j;
      }
      if (enter == cols) return true;
      std::size_t leave = t.size();
      Rational best;
      for (std::size_t r = 0; r < t.size(); ++r) {
        if (sgn(t[r][enter]) <= 0) continue;
        Rational ratio = t[r][cols] / t[r][enter];
        if (leave == t.size() || ratio < best || (ratio == best && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == t.size()) return false;
      pivot(leave, enter);
    }
  }
};

LPOutcome simplex(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  // Column layout: each variable gets a + column, free variables also a - column; then slacks.
  std::vector<std::size_t> plus(n), minus(n, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    plus[j] = cols++;
    if (!lp.is_nonneg(j)) minus[j] = cols++;
  }
  const std::size_t first_slack = cols;
  cols += lp.le_lhs.size();
  const std::size_t rows = lp.eq_lhs.size() + lp.le_lhs.size();
  const std::size_t structural = cols;
  cols += rows;  // artificials

  Tableau tab;
  tab.cols = cols;
  tab.t.assign(rows, zeros(cols + 1));
  tab.basis.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    bool is_eq = r < lp.eq_lhs.size();
    const Vec& a = is_eq ? lp.eq_lhs[r] : lp.le_lhs[r - lp.eq_lhs.size()];
    Rational b = is_eq ? lp.eq_rhs[r] : lp.le_rhs[r - lp.eq_lhs.size()];
    Vec& row = tab.t[r];
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(a[j]) == 0) continue;
      row[plus[j]] = a[j];
      if (minus[j] != SIZE_MAX) row[minus[j]] = -a[j];
    }
    if (!is_eq) row[first_slack + (r - lp.eq_lhs.size())] = 1;
    row[cols] = b;
    if (sgn(b) < 0)
      for (auto& q : row) q = -q;
    row[structural + r] = 1;
    tab.basis[r] = structural + r;
  }

  Vec phase1 = zeros(cols);
  for (std::size_t r = 0; r < rows; ++r) phase1[structural + r] = 1;
  tab.optimize(phase1, cols);
  Rational infeas = 0;
  for (std::size_t r = 0; r < rows; ++r)
    if (tab.basis[r] >= structural) infeas += tab.t[r][cols];
  LPOutcome out;
  if (sgn(infeas) > 0) {
    out.status = LPStatus::Infeasible;
    return out;
  }
  // Drive remaining (zero-level) artificials out of the basis; drop redundant rows.
  for (std::size_t r = 0; r < tab.t.size();) {
    if (tab.basis[r] < structural) {
      ++r;
      continue;
    }
    std::size_t j = 0;
    while (j < structural && sgn(tab.t[r][j]) == 0) ++j;
    if (j < structural) {
      tab.pivot(r, j);
      ++r;
    } else {
      tab.t.erase(tab.t.begin() + static_cast<long>(r));
      tab.basis.erase(tab.basis.begin() + static_cast<long>(r));
    }
  }

  Vec cost = zeros(cols);
  for (std::size_t j = 0; j < n; ++j) {
    cost[plus[j]] = lp.objective[j];
    if (minus[j] != SIZE_MAX) cost[minus[j]] = -lp.objective[j];
  }
  if (!tab.optimize(cost, structural)) {
    out.status = LPStatus::Unbounded;
    return out;
  }
  Vec y = zeros(cols);
  for (std::size_t r = 0; r < tab.t.size(); ++r) y[tab.basis[r]] = tab.t[r][cols];
  out.status = LPStatus::Optimal;
  out.point = zeros(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.point[j] = y[plus[j]];
    if (minus[j] != SIZE_MAX) out.point[j] -= y[minus[j]];
  }
  out.value = dot(lp.objective, out.point);
  return out;
}

// Affine dimension of {x feasible : objective . x = value}. Among the inequalities binding at
// the optimum, repeatedly maximize the total slack; those that can be slack are dropped, and
// the survivors are the implicit equalities of the optimal face. Slacks are first left uncapped,
// which is smaller and exact on bounded faces; an unbounded face switches to slacks capped at 1.
std::size_t face_dimension(const LinearProgram& lp, const LPOutcome& opt) {
  const std::size_t n = lp.num_vars;
  Mat candidates;
  Vec cand_rhs;
  for (std::size_t i = 0; i < lp.le_lhs.size(); ++i)
    if (dot(lp.le_lhs[i], opt.point) == lp.le_rhs[i]) {
      candidates.push_back(lp.le_lhs[i]);
      cand_rhs.push_back(lp.le_rhs[i]);
    }
  for (std::size_t j = 0; j < n; ++j)
    if (lp.is_nonneg(j) && sgn(opt.point[j]) == 0) {
      candidates.push_back(neg(unit(n, j)));
      cand_rhs.push_back(0);
    }

  bool capped = false;
  while (!candidates.empty()) {
    const std::size_t k = candidates.size();
    LinearProgram aux(n + k);
    auto widen = [&](const Vec& a) {
      Vec w = a;
      w.resize(n + k, Rational(0));
      return w;
    };
    for (std::size_t i = 0; i < lp.eq_lhs.size(); ++i) aux.add_eq(widen(lp.eq_lhs[i]), lp.eq_rhs[i]);
    aux.add_eq(widen(lp.objective), opt.value);
    for (std::size_t i = 0; i < lp.le_lhs.size(); ++i) aux.add_le(widen(lp.le_lhs[i]), lp.le_rhs[i]);
    for (std::size_t j = 0; j < n; ++j)
      if (lp.is_nonneg(j)) aux.set_nonneg(j);
    for (std::size_t i = 0; i < k; ++i) {
      Vec row = widen(candidates[i]);
      row[n + i] = 1;
      aux.add_le(row, cand_rhs[i]);
      if (capped) aux.add_le(unit(n + k, n + i), 1);
      aux.set_nonneg(n + i);
      aux.objective[n + i] = -1;
    }
    LPOutcome r = simplex(aux);
    if (r.status == LPStatus::Unbounded && !capped) {
      capped = true;
      continue;
    }
    check(r.status == LPStatus::Optimal, "face dimension auxiliary LP not optimal");
    if (sgn(r.value) == 0) break;
    Mat keep;
    Vec keep_rhs;
    for (std::size_t i = 0; i < k; ++i)
      if (sgn(r.point[n + i]) == 0) {
        keep.push_back(candidates[i]);
        keep_rhs.push_back(cand_rhs[i]);
      }
    candidates = std::move(keep);
    cand_rhs = std::move(keep_rhs);
  }
  Mat tight = lp.eq_lhs;
  tight.push_back(lp.objective);
  for (auto& c : candidates) tight.push_back(c);
  return n - rank(tight, n);
}

}  // namespace

LPOutcome lp_solve(const LinearProgram& lp, bool compute_face_dim) {
  lp.validate();
  LPOutcome out = simplex(lp);
  if (out.status == LPStatus::Optimal) {
    check(is_feasible_point(lp, out.point), "simplex returned an infeasible point");
    if (compute_face_dim) out.optimal_face_dim = face_dimension(lp, out);
  }
  return out;
}

LPOutcome lp_solve(const Vec& objective, const Mat& eq_lhs, const Vec& eq_rhs, const Mat& le_lhs,
                   const Vec& le_rhs) {
  LinearProgram lp(objective.size());
  lp.objective = objective;
  lp.eq_lhs = eq_lhs;
  lp.eq_rhs = eq_rhs;
  lp.le_lhs = le_lhs;
  lp.le_rhs = le_rhs;
  return lp_solve(lp);
}

LinearProgram dual_program(const LinearProgram& lp) {
  lp.validate();
  const std::size_t me = lp.eq_lhs.size(), ml = lp.le_lhs.size(), n = lp.num_vars;
  // Variables: y (free, one per equality), w = -z >= 0 (one per inequality).
  LinearProgram d(me + ml);
  for (std::size_t i = 0; i < me; ++i) d.objective[i] = -lp.eq_rhs[i];
  for (std::size_t i = 0; i < ml; ++i) {
    d.objective[me + i] = lp.le_rhs[i];
    d.set_nonneg(me + i);
  }
  for (std::size_t j = 0; j < n; ++j) {
    Vec row = zeros(me + ml);
    for (std::size_t i = 0; i < me; ++i) row[i] = lp.eq_lhs[i][j];
    for (std::size_t i = 0; i < ml; ++i) row[me + i] = -lp.le_lhs[i][j];
    if (lp.is_nonneg(j))
      d.add_le(row, lp.objective[j]);
    else
      d.add_eq(row, lp.objective[j]);
  }
  return d;
}

bool is_feasible_point(const LinearProgram& lp, const Vec& x) {
  for (std::size_t i = 0; i < lp.eq_lhs.size(); ++i)
    if (dot(lp.eq_lhs[i], x) != lp.eq_rhs[i]) return false;
  for (std::size_t i = 0; i < lp.le_lhs.size(); ++i)
    if (dot(lp.le_lhs[i], x) > lp.le_rhs[i]) return false;
  for (std::size_t j = 0; j < lp.num_vars; ++j)
    if (lp.is_nonneg(j) && sgn(x[j]) < 0) return false;
  return true;
}

}  // namespace choquet
