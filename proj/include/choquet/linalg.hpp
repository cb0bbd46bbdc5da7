#pragma once

#include <optional>

#include "choquet/rational.hpp"

namespace choquet {

struct Echelon {
  Mat rows;                         // nonzero rows of the reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each row
};

Echelon rref(const Mat& m, std::size_t cols);
std::size_t rank(const Mat& m, std::size_t cols);

// Canonical basis of {x : m x = 0}; one vector per free column, free entry 1.
Mat nullspace(const Mat& m, std::size_t cols);

// Some x with m x = b, or nullopt.
std::optional<Vec> solve(const Mat& m, const Vec& b, std::size_t cols);

// Coefficients c with sum_i c_i basis[i] = v, or nullopt if v is outside the span.
std::optional<Vec> coordinates(const Mat& basis, const Vec& v);

// A linear subspace of Q^ambient with its RREF basis; equal subspaces compare equal.
struct Subspace {
  std::size_t ambient = 0;
  Mat basis;

  static Subspace span(const Mat& generators, std::size_t ambient);
  static Subspace kernel(const Mat& constraints, std::size_t ambient);
  static Subspace full(std::size_t ambient);

  std::size_t dim() const { return basis.size(); }
  bool contains(const Vec& v) const;
  bool subset_of(const Subspace& other) const;
  // Rows a with {x : a x = 0} = this.
  Mat annihilator() const;
  Subspace intersect(const Subspace& other) const;
  bool operator==(const Subspace& other) const {
    return ambient == other.ambient && basis == other.basis;
  }
};

}  // namespace choquet
