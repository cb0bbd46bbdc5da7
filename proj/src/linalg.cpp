#include "choquet/linalg.hpp"

#include "choquet/errors.hpp"

namespace choquet {

Echelon rref(const Mat& m, std::size_t cols) {
  Mat a = m;
  for (const auto& r : a)
    if (r.size() != cols) throw Error(ErrorCode::DimensionMismatch, "rref: row length");
  Echelon out;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && sgn(a[p][c]) == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[row], a[p]);
    Rational inv = 1 / a[row][c];
    for (std::size_t j = c; j < cols; ++j) a[row][j] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || sgn(a[i][c]) == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (sgn(a[row][j]) != 0) a[i][j] -= f * a[row][j];
    }
    out.pivots.push_back(c);
    ++row;
  }
  a.resize(row);
  out.rows = std::move(a);
  return out;
}

std::size_t rank(const Mat& m, std::size_t cols) { return rref(m, cols).rows.size(); }

Mat nullspace(const Mat& m, std::size_t cols) {
  Echelon e = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  Mat basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v = zeros(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Mat& m, const Vec& b, std::size_t cols) {
  if (m.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "solve: rhs length");
  Mat aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i) {
    if (aug[i].size() != cols) throw Error(ErrorCode::DimensionMismatch, "solve: row length");
    aug[i].push_back(b[i]);
  }
  Echelon e = rref(aug, cols + 1);
  Vec x = zeros(cols);
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    if (e.pivots[i] == cols) return std::nullopt;
    x[e.pivots[i]] = e.rows[i][cols];
  }
  return x;
}

std::optional<Vec> coordinates(const Mat& basis, const Vec& v) {
  if (basis.empty()) {
    if (is_zero(v)) return Vec{};
    return std::nullopt;
  }
  return solve(transpose(basis, v.size()), v, basis.size());
}

Subspace Subspace::span(const Mat& generators, std::size_t ambient) {
  Subspace s;
  s.ambient = ambient;
  s.basis = rref(generators, ambient).rows;
  return s;
}

Subspace Subspace::kernel(const Mat& constraints, std::size_t ambient) {
  return span(nullspace(constraints, ambient), ambient);
}

Subspace Subspace::full(std::size_t ambient) {
  Mat id;
  for (std::size_t i = 0; i < ambient; ++i) id.push_back(unit(ambient, i));
  return span(id, ambient);
}

bool Subspace::contains(const Vec& v) const {
  if (v.size() != ambient) throw Error(ErrorCode::DimensionMismatch, "Subspace::contains");
  Mat g = basis;
  g.push_back(v);
  return rank(g, ambient) == basis.size();
}

bool Subspace::subset_of(const Subspace& other) const {
  for (const auto& b : basis)
    if (!other.contains(b)) return false;
  return true;
}

Mat Subspace::annihilator() const { return nullspace(basis, ambient); }

Subspace Subspace::intersect(const Subspace& other) const {
  Mat rows = annihilator();
  for (auto& r : other.annihilator()) rows.push_back(r);
  return kernel(rows, ambient);
}

}  // namespace choquet
