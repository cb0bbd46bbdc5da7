#pragma once
// Brute-force reference computations for the test suite. These deliberately avoid the
// library's simplex and double-description code: vertices are found by solving every
// square subsystem of active constraints with a private Gaussian elimination.

#include <algorithm>
#include <functional>
#include <optional>
#include <random>

#include "choquet/linalg.hpp"
#include "choquet/rational.hpp"

namespace oracle {

using choquet::Mat;
using choquet::Rational;
using choquet::Vec;

// Unique solution of a square-or-tall consistent system, or nullopt if singular/inconsistent.
inline std::optional<Vec> unique_solution(Mat a, Vec b, std::size_t n) {
  const std::size_t m = a.size();
  std::size_t row = 0;
  std::vector<std::size_t> piv;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    std::size_t p = row;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) return std::nullopt;
    std::swap(a[p], a[row]);
    std::swap(b[p], b[row]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[row][c];
      for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[row][j];
      b[i] -= f * b[row];
    }
    piv.push_back(c);
    ++row;
  }
  if (row < n) return std::nullopt;
  for (std::size_t i = row; i < m; ++i)
    if (b[i] != 0) return std::nullopt;
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) x[piv[i]] = b[i] / a[i][piv[i]];
  return x;
}

inline void for_each_subset(std::size_t m, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (k > m) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// All vertices of {A x <= b, Aeq x = beq} (assumed bounded), sorted and deduplicated.
inline std::vector<Vec> vertices(const Mat& A, const Vec& b, const Mat& Aeq, const Vec& beq,
                                 std::size_t n) {
  std::vector<Vec> out;
  auto feasible = [&](const Vec& x) {
    for (std::size_t i = 0; i < A.size(); ++i)
      if (choquet::dot(A[i], x) > b[i]) return false;
    for (std::size_t i = 0; i < Aeq.size(); ++i)
      if (choquet::dot(Aeq[i], x) != beq[i]) return false;
    return true;
  };
  for (std::size_t k = 0; k <= std::min(n, A.size()); ++k) {
    for_each_subset(A.size(), k, [&](const std::vector<std::size_t>& s) {
      Mat sys = Aeq;
      Vec rhs = beq;
      for (auto i : s) {
        sys.push_back(A[i]);
        rhs.push_back(b[i]);
      }
      if (sys.size() < n) return;
      auto x = unique_solution(sys, rhs, n);
      if (x && feasible(*x)) out.push_back(*x);
    });
  }
  choquet::sort_unique(out);
  return out;
}

inline Rational min_over(const std::vector<Vec>& pts, const Vec& c) {
  Rational best = choquet::dot(c, pts.at(0));
  for (const auto& p : pts) best = std::min(best, Rational(choquet::dot(c, p)));
  return best;
}

// Small random rationals p/q with |p| <= 6, 1 <= q <= 4.
struct RandomRationals {
  std::mt19937 gen;
  explicit RandomRationals(unsigned seed) : gen(seed) {}
  Rational next(int pmax = 6, int qmax = 4) {
    std::uniform_int_distribution<int> p(-pmax, pmax), q(1, qmax);
    int num = p(gen);
    int den = q(gen);
    Rational r{mpz_class(num), mpz_class(den)};
    r.canonicalize();
    return r;
  }
  Rational next_nonneg(int pmax = 6, int qmax = 4) {
    std::uniform_int_distribution<int> p(0, pmax), q(1, qmax);
    int num = p(gen);
    int den = q(gen);
    Rational r{mpz_class(num), mpz_class(den)};
    r.canonicalize();
    return r;
  }
  Vec vec(std::size_t n, int pmax = 6, int qmax = 4) {
    Vec v(n);
    for (auto& x : v) x = next(pmax, qmax);
    return v;
  }
  std::size_t index(std::size_t n) {
    std::uniform_int_distribution<std::size_t> d(0, n - 1);
    return d(gen);
  }
};

// Measures mu in R^{n d} with rows . mu = rhs and minimal l1 mass, found as the basic feasible
// solutions of mu = p - q, p, q >= 0. Only valid when the dual norm is l1 (scalar or l_inf targets).
struct L1Oracle {
  Rational mass;
  std::vector<Vec> vertices;
};

inline L1Oracle l1_oracle(const Mat& rows, const Vec& rhs, std::size_t N) {
  const std::size_t r = choquet::rank(rows, N);
  std::vector<std::pair<Rational, Vec>> bfs;
  oracle::for_each_subset(2 * N, r, [&](const std::vector<std::size_t>& cols) {
    Mat a(rows.size(), Vec(r));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t k = 0; k < r; ++k)
        a[i][k] = cols[k] < N ? rows[i][cols[k]] : Rational(-rows[i][cols[k] - N]);
    auto x = oracle::unique_solution(a, rhs, r);
    if (!x) return;
    Vec mu = choquet::zeros(N);
    Rational m = 0;
    for (std::size_t k = 0; k < r; ++k) {
      if ((*x)[k] < 0) return;
      m += (*x)[k];
      if (cols[k] < N)
        mu[cols[k]] += (*x)[k];
      else
        mu[cols[k] - N] -= (*x)[k];
    }
    bfs.emplace_back(m, mu);
  });
  L1Oracle out;
  out.mass = bfs.at(0).first;
  for (const auto& b : bfs) out.mass = std::min(out.mass, b.first);
  for (const auto& b : bfs)
    if (b.first == out.mass) out.vertices.push_back(b.second);
  choquet::sort_unique(out.vertices);
  return out;
}

// Vertices of the cone { f : rows . f <= 0 } cut by the box [-1, 1]^n; a linear functional is
// nonnegative on the cone iff it is nonnegative on these vertices.
inline std::vector<Vec> cone_box_vertices(const Mat& rows, std::size_t n) {
  Mat A = rows;
  Vec b(A.size(), Rational(0));
  for (std::size_t s = 0; s < n; ++s) {
    A.push_back(choquet::unit(n, s));
    b.push_back(1);
    A.push_back(choquet::neg(choquet::unit(n, s)));
    b.push_back(1);
  }
  return vertices(A, b, {}, {}, n);
}

inline bool leq_by_oracle(const std::vector<Vec>& verts, const Vec& s1, const Vec& s2) {
  for (const auto& v : verts)
    if (choquet::dot(choquet::sub(s2, s1), v) < 0) return false;
  return true;
}

// max g(t) over { g in the cone, g <= f, g >= min f } by vertex enumeration. The lower bound is
// harmless: the cone is closed under max with constants.
inline Vec envelope_by_oracle(const Mat& rows, std::size_t n, const Vec& f) {
  Rational lo = *std::min_element(f.begin(), f.end());
  Mat A = rows;
  Vec b(A.size(), Rational(0));
  for (std::size_t s = 0; s < n; ++s) {
    A.push_back(choquet::unit(n, s));
    b.push_back(f[s]);
    A.push_back(choquet::neg(choquet::unit(n, s)));
    b.push_back(-lo);
  }
  auto verts = vertices(A, b, {}, {}, n);
  Vec out(n);
  for (std::size_t t = 0; t < n; ++t) out[t] = -min_over(verts, choquet::neg(choquet::unit(n, t)));
  return out;
}

}  // namespace oracle
