#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace choquet {

using Rational = mpq_class;
using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;  // row-major

// Accepts "p", "-p", "p/q"; rejects decimals and zero denominators.
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);
std::string to_string(const Vec& v);

Rational abs(const Rational& q);
int sign(const Rational& q);

Vec zeros(std::size_t n);
Vec unit(std::size_t n, std::size_t i);
Rational dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Rational& c, const Vec& v);
Vec neg(const Vec& v);
bool is_zero(const Vec& v);
Rational l1(const Vec& v);
Rational linf(const Vec& v);

// Scale to the primitive integer vector with the same direction.
Vec primitive(const Vec& v);

// Lexicographic order on rational vectors; the canonical output order.
bool lex_less(const Vec& a, const Vec& b);
void sort_unique(std::vector<Vec>& vs);

Mat transpose(const Mat& m, std::size_t cols);
Vec mat_vec(const Mat& m, const Vec& x);

}  // namespace choquet
