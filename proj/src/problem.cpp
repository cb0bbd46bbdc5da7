#include "choquet/problem.hpp"

#include <fstream>
#include <sstream>

#include "choquet/errors.hpp"

namespace choquet {

namespace {

std::string label_of(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw Error(ErrorCode::ParseError, "point labels must be strings, got " + j.dump());
}

std::size_t point_index(const FiniteCompact& K, const Json& j) { return K.index(label_of(j)); }

Probe parse_probe(const FiniteCompact& K, std::size_t d, const Json& j) {
  Probe p{point_index(K, j.at("point")), json_vec(j.at("x_star"))};
  if (p.x_star.size() != d) throw Error(ErrorCode::DimensionMismatch, "x_star must have " + std::to_string(d) + " entries");
  return p;
}

Mat parse_matrix(const Json& j) {
  Mat m;
  for (const auto& r : j) m.push_back(json_vec(r));
  return m;
}

}  // namespace

Rational json_rational(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>())));
  throw Error(ErrorCode::ParseError, "rationals are written as \"p/q\" strings or integers, got " + j.dump());
}

Vec json_vec(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected an array of rationals, got " + j.dump());
  Vec v;
  for (const auto& x : j) v.push_back(json_rational(x));
  return v;
}

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

Json to_json(const Mat& m) {
  Json a = Json::array();
  for (const auto& r : m) a.push_back(to_json(r));
  return a;
}

NormSpec parse_target(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "linf") return NormSpec::linf(j.at("dim").get<std::size_t>());
  if (kind == "l1") return NormSpec::l1(j.at("dim").get<std::size_t>());
  if (kind == "lp") return NormSpec::lp(j.at("dim").get<std::size_t>(), json_rational(j.at("p")));
  if (kind == "ball_vertices") return NormSpec::from_ball_vertices(parse_matrix(j.at("vertices")));
  if (kind == "ball_facets") return NormSpec::from_ball_facets(parse_matrix(j.at("normals")));
  throw Error(ErrorCode::ParseError, "unknown target kind \"" + kind + "\"");
}

Mat parse_constraints(const FiniteCompact& K, std::size_t d, const Json& j) {
  Mat rows;
  for (const auto& c : j) {
    Vec r = zeros(K.size() * d);
    for (const auto& term : c) {
      if (!term.is_array() || term.size() != 3)
        throw Error(ErrorCode::ParseError, "constraint terms are [point, component, coefficient], got " + term.dump());
      std::size_t s = point_index(K, term[0]), i = term[1].get<std::size_t>();
      if (i >= d) throw Error(ErrorCode::DimensionMismatch, "component index " + std::to_string(i) + " out of range");
      r[s * d + i] += json_rational(term[2]);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

ScalarMeasure parse_scalar_measure(const FiniteCompact& K, const Json& j) {
  if (j.is_array()) {
    Vec v = json_vec(j);
    if (v.size() != K.size()) throw Error(ErrorCode::DimensionMismatch, "scalar measure length");
    return v;
  }
  Vec v = zeros(K.size());
  for (const auto& [label, mass] : j.items()) v[K.index(label)] += json_rational(mass);
  return v;
}

VectorMeasure parse_vector_measure(const FiniteCompact& K, std::size_t d, const Json& j) {
  VectorMeasure mu(K.size(), zeros(d));
  if (j.is_array()) {
    if (j.size() != K.size()) throw Error(ErrorCode::DimensionMismatch, "vector measure needs one row per point");
    for (std::size_t s = 0; s < K.size(); ++s) mu[s] = json_vec(j[s]);
  } else {
    for (const auto& [label, row] : j.items()) mu[K.index(label)] = json_vec(row);
  }
  for (const auto& r : mu)
    if (r.size() != d) throw Error(ErrorCode::DimensionMismatch, "vector measure rows must have length d");
  return mu;
}

ProductMeasure parse_product_measure(const FiniteCompact& K, std::size_t d, const Json& j) {
  ProductMeasure nu;
  for (const auto& a : j) {
    if (!a.is_array() || a.size() != 3) throw Error(ErrorCode::ParseError, "atoms are [point, x_star, mass]");
    Atom atom{point_index(K, a[0]), json_vec(a[1]), json_rational(a[2])};
    if (atom.x_star.size() != d) throw Error(ErrorCode::DimensionMismatch, "atom functional length");
    nu.push_back(std::move(atom));
  }
  return nu;
}

ProblemSpec parse_problem(const Json& doc) {
  try {
    if (!doc.is_object()) throw Error(ErrorCode::ParseError, "a problem document is a JSON object");
    std::vector<std::string> labels;
    for (const auto& p : doc.at("points")) labels.push_back(label_of(p));
    FiniteCompact K(labels);
    NormSpec E = parse_target(doc.at("target"));
    const std::size_t d = E.dim();

    std::optional<FunctionSpace> H;
    if (doc.contains("constraints")) {
      H.emplace(FunctionSpace::from_constraints(K, E, parse_constraints(K, d, doc["constraints"])));
    } else if (doc.contains("basis")) {
      // Generators may be dependent; the space is their span.
      Mat generators;
      for (const auto& f : doc["basis"]) generators.push_back(flatten(parse_vector_measure(K, d, f)));
      H.emplace(K, E, Subspace::span(generators, K.size() * d).basis);
    } else if (doc.value("full", false)) {
      H.emplace(FunctionSpace::full(K, E));
    } else {
      throw Error(ErrorCode::ParseError, "the space needs \"constraints\", \"basis\" or \"full\": true");
    }

    ProblemSpec spec{.name = doc.value("name", std::string()), .description = doc.value("description", std::string()), .space = *H};
    if (doc.contains("probes"))
      for (const auto& p : doc["probes"]) spec.probes.push_back(parse_probe(K, d, p));
    if (doc.contains("functionals"))
      for (const auto& [k, v] : doc["functionals"].items()) spec.functionals.emplace(k, parse_probe(K, d, v));
    if (doc.contains("measures"))
      for (const auto& [k, v] : doc["measures"].items()) spec.measures.emplace(k, parse_scalar_measure(K, v));
    if (doc.contains("vector_measures"))
      for (const auto& [k, v] : doc["vector_measures"].items())
        spec.vector_measures.emplace(k, parse_vector_measure(K, d, v));
    if (doc.contains("product_measures"))
      for (const auto& [k, v] : doc["product_measures"].items())
        spec.product_measures.emplace(k, parse_product_measure(K, d, v));
    if (doc.contains("operators"))
      for (const auto& [k, v] : doc["operators"].items()) {
        OperatorSpec op{point_index(K, v.at("point")), parse_matrix(v.at("matrix"))};
        if (op.matrix.size() != d) throw Error(ErrorCode::DimensionMismatch, "operator matrix must be d x d");
        for (const auto& r : op.matrix)
          if (r.size() != d) throw Error(ErrorCode::DimensionMismatch, "operator matrix must be d x d");
        spec.operators.emplace(k, std::move(op));
      }
    if (doc.contains("expectations")) spec.expectations = doc["expectations"];
    spec.source = doc;
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed problem document: ") + e.what());
  }
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::ParseError,
                origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": invalid JSON");
  }
}

ProblemSpec load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(parse_json_text(ss.str(), path));
}

}  // namespace choquet
