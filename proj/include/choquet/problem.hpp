#pragma once

#include <map>
#include <string>

#include "json.hpp"

#include "choquet/orders.hpp"

namespace choquet {

using Json = nlohmann::ordered_json;

// U = A o phi_H(t): a d x d matrix applied after evaluation at a point.
struct OperatorSpec {
  std::size_t point = 0;
  Mat matrix;
};

// One problem document: a function space plus named objects and expectations.
struct ProblemSpec {
  std::string name;
  std::string description;
  FunctionSpace space;
  std::vector<Probe> probes{};
  std::map<std::string, Probe> functionals{};
  std::map<std::string, ScalarMeasure> measures{};
  std::map<std::string, VectorMeasure> vector_measures{};
  std::map<std::string, ProductMeasure> product_measures{};
  std::map<std::string, OperatorSpec> operators{};
  Json expectations = Json::array();
  Json source{};
};

Rational json_rational(const Json& j);
Vec json_vec(const Json& j);
Json to_json(const Rational& q);
Json to_json(const Vec& v);
Json to_json(const Mat& m);

NormSpec parse_target(const Json& j);
// Constraint rows in R^{n d}: each constraint is a list of [point label, component, coefficient].
Mat parse_constraints(const FiniteCompact& K, std::size_t d, const Json& j);
// A scalar measure: an array of n rationals or an object { label: mass }.
ScalarMeasure parse_scalar_measure(const FiniteCompact& K, const Json& j);
// A vector measure: an n x d array or an object { label: [d rationals] }.
VectorMeasure parse_vector_measure(const FiniteCompact& K, std::size_t d, const Json& j);
ProductMeasure parse_product_measure(const FiniteCompact& K, std::size_t d, const Json& j);

ProblemSpec parse_problem(const Json& doc);
// ParseError carries line and column for malformed JSON.
Json parse_json_text(const std::string& text, const std::string& origin);
ProblemSpec load_problem_file(const std::string& path);

}  // namespace choquet
