#include "choquet/corpus.hpp"

#include <algorithm>

#include "choquet/errors.hpp"
#include "choquet/parallel.hpp"

namespace choquet {

namespace detail {
// Generated at build time from corpus/*.json: (file stem, document text), sorted by stem.
const std::vector<std::pair<std::string, std::string>>& embedded_corpus();
}  // namespace detail

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = [] {
    std::vector<Fixture> out;
    for (const auto& [stem, text] : detail::embedded_corpus()) {
      Json doc = parse_json_text(text, stem + ".json");
      Fixture f{doc.value("name", stem), text, doc.value("status", std::string("in-scope")) != "out-of-scope",
                doc.value("note", std::string())};
      out.push_back(std::move(f));
    }
    return out;
  }();
  return all;
}

const Fixture& fixture(const std::string& name) {
  std::string key = name;
  if (key.size() > 5 && key.ends_with(".json")) key.resize(key.size() - 5);
  if (auto slash = key.find_last_of('/'); slash != std::string::npos) key = key.substr(slash + 1);
  for (const auto& f : fixtures())
    if (f.name == key) return f;
  throw Error(ErrorCode::UnknownFixture, "no fixture named \"" + name + "\"");
}

ProblemSpec fixture_problem(const Fixture& f) {
  if (!f.in_scope) throw Error(ErrorCode::InvalidInput, f.name + " is out of scope: " + f.note);
  return parse_problem(parse_json_text(f.document, f.name + ".json"));
}

namespace {

std::size_t arg_point(const ProblemSpec& spec, const Json& args, const char* key = "point") {
  return spec.space.points().index(args.at(key).get<std::string>());
}

Vec arg_vec(const ProblemSpec& spec, const Json& args, const char* key = "x_star") {
  Vec v = json_vec(args.at(key));
  if (v.size() != spec.space.d()) throw Error(ErrorCode::DimensionMismatch, std::string(key) + " length");
  return v;
}

template <class Map>
const typename Map::mapped_type& named(const Map& m, const Json& args, const char* key, const char* what) {
  const std::string name = args.at(key).get<std::string>();
  auto it = m.find(name);
  if (it == m.end()) throw Error(ErrorCode::InvalidInput, std::string("no ") + what + " named \"" + name + "\"");
  return it->second;
}

Mat compose(const Mat& a, const Mat& b) {
  Mat out(a.size(), zeros(b.empty() ? 0 : b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[k].size(); ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

std::vector<Probe> spec_probes(const ProblemSpec& spec) { return spec.probes; }

bool in_representing_set(const FunctionSpace& H, const Vec& phi, const Rational& norm, const VectorMeasure& mu) {
  return H.action(mu) == phi && total_variation(H.target(), mu) == norm;
}

}  // namespace

Json evaluate_check(const ProblemSpec& spec, const std::string& check, const Json& args) {
  const FunctionSpace& H = spec.space;
  const FiniteCompact& K = H.points();

  if (check == "boundary") return labels_json(K, choquet_boundary(H));
  if (check == "structure") return structure_json(H);
  if (check == "structure_at") {
    auto r = structure_report(H, arg_point(spec, args, "s"), arg_point(spec, args, "t"));
    return Json{{"dim_H_t", r.H_t.dim()}, {"dim_H_st", r.H_st.dim()}, {"dim_H_s_minus_t", r.H_s_minus_t.dim()}};
  }
  if (check == "weak_space") return subspace_json(weak_space(H).as_subspace());
  if (check == "evaluation_norms") {
    std::optional<Vec> x;
    if (args.contains("x_star")) x = arg_vec(spec, args);
    return evaluation_norms_json(H, arg_point(spec, args), x);
  }
  if (check == "theta_collapses") return collapses_json(H);
  if (check == "representable") {
    const OperatorSpec& op = named(spec.operators, args, "operator", "operator");
    auto r = representable_operator(H, compose(op.matrix, H.evaluation_operator(op.point)));
    Json j{{"representable", r.representable}};
    if (r.representable) j["norm_r"] = to_json(r.norm_r);
    return j;
  }
  if (check == "boundary_conditions") return boundary_conditions_json(boundary_conditions_report(H, arg_point(spec, args)));
  if (check == "boundary_conditions_agree") {
    for (std::size_t t = 0; t < H.n(); ++t) {
      auto c = boundary_conditions_report(H, t);
      bool same = c.cond1 == c.cond2 && c.cond2 == c.cond3 && c.cond3 == c.cond4 && (!c.cond5 || *c.cond5 == c.cond1);
      if (!same) return false;
    }
    return true;
  }
  if (check == "operator_ball_extreme") return operator_ball_extreme(H, arg_point(spec, args));
  if (check == "hs_evaluation_equal") {
    ScalarSpace Hw = weak_space(H);
    std::size_t t = arg_point(spec, args);
    return hs_evaluation(H, Hw, t, arg_vec(spec, args)) == hs_evaluation(H, Hw, t, arg_vec(spec, args, "other_x_star"));
  }
  if (check == "hs_is_extreme") return hs_is_extreme(H, arg_point(spec, args), arg_vec(spec, args));
  if (check == "is_boundary_measure")
    return is_boundary_measure(H, named(spec.vector_measures, args, "measure", "vector measure"));
  if (check == "functional_norm") {
    Vec phi = H.lin_evaluation(arg_point(spec, args), arg_vec(spec, args));
    return to_json(functional_norm(H, phi).value);
  }
  if (check == "dual_norm") return to_json(norm_exact(H.target(), arg_vec(spec, args), Side::Dual));
  if (check == "representing_scalar") {
    auto S = representing_measures_scalar(H, arg_point(spec, args));
    auto v = S.vertices;
    sort_unique(v);
    return Json{{"norm", to_json(S.norm)}, {"vertices", to_json(v)}};
  }
  if (check == "representing_vector") {
    auto M = representing_measures_vector(H, arg_point(spec, args), arg_vec(spec, args));
    Json j{{"vertices", vector_measures_json(M.vertices)}};
    if (M.norm) j["norm"] = to_json(*M.norm);
    return j;
  }
  if (check == "representing_vector_contains") {
    Vec phi = H.lin_evaluation(arg_point(spec, args), arg_vec(spec, args));
    Rational norm = functional_norm(H, phi).value;
    Json j = Json::object();
    for (const auto& name : args.at("measures"))
      j[name.get<std::string>()] = in_representing_set(
          H, phi, norm, named(spec.vector_measures, Json{{"m", name}}, "m", "vector measure"));
    return j;
  }
  if (check == "weak_simplicial") return verdict_json(H, weak_simplicial(H));
  if (check == "functional_weak_simplicial") return verdict_json(H, functional_weak_simplicial(H));
  if (check == "vector_simplicial") return verdict_json(H, vector_simplicial(H, spec_probes(spec)));
  if (check == "ac_spaces") {
    auto ac = ac_spaces(H, spec_probes(spec));
    return Json{{"ac_scalar", subspace_json(ac.ac_scalar)},
                {"ac_w", subspace_json(ac.ac_w)},
                {"ac_v_upper", subspace_json(ac.ac_v_upper)},
                {"ac_v_upper_weak", subspace_json(ac.ac_v_upper_weak)},
                {"ac_v_upper_equals_H", ac.ac_v_upper == H.as_subspace()},
                {"ac_w_subset_ac_v_upper", ac.ac_w.subset_of(ac.ac_v_upper)},
                {"ac_v_upper_subset_ac_w", ac.ac_v_upper.subset_of(ac.ac_w)},
                {"ac_v_certified_negative", ac.ac_v_certified_negative}};
  }
  if (check == "dilation") {
    const auto k = dilation_suite(H).checks;
    return Json{{"idempotent", k.idempotent},
                {"rows_boundary_probabilities", k.rows_boundary_probabilities},
                {"fixed_space_is_ac_w", k.fixed_space_is_ac_w},
                {"restriction_bijective", k.restriction_bijective},
                {"restriction_isometric", k.restriction_isometric},
                {"dim_ac_w", k.dim_ac_w},
                {"boundary_size", k.boundary_size}};
  }
  if (check == "product_representation") {
    auto p = product_representation(H, H.lin_evaluation(arg_point(spec, args), arg_vec(spec, args)));
    return Json{{"mass", to_json(p.mass)}, {"atoms", product_json(K, p.nu)}};
  }
  if (check == "l1_predual") {
    auto c = l1_predual_check(H);
    return Json{{"acw_is_l1_predual", c.acw_is_l1_predual},
                {"E_is_l1_predual", c.E_is_l1_predual},
                {"weakly_simplicial", c.weakly_simplicial}};
  }
  if (check == "is_simplexoid") return is_simplexoid(H.target());
  if (check == "n_mu_minimal") {
    auto m = n_mu_minimal(H, named(spec.vector_measures, args, "measure", "vector measure"));
    Json j{{"unique", m.unique}, {"minimal", product_json(K, m.minimal)}};
    if (m.alternative) j["alternative"] = product_json(K, *m.alternative);
    return j;
  }
  if (check == "maximality") {
    auto m = maximality_check(weak_space(H), named(spec.measures, args, "measure", "scalar measure"));
    return Json{{"carried_by_boundary", m.carried_by_boundary}, {"envelope_test", m.envelope_test}};
  }
  if (check == "choquet_leq") {
    return choquet_leq(weak_space(H), named(spec.measures, args, "first", "scalar measure"),
                       named(spec.measures, args, "second", "scalar measure"));
  }
  throw Error(ErrorCode::InvalidInput, "unknown check \"" + check + "\"");
}

bool json_matches(const Json& expected, const Json& computed) {
  if (expected.is_object()) {
    if (!computed.is_object()) return false;
    for (const auto& [k, v] : expected.items())
      if (!computed.contains(k) || !json_matches(v, computed[k])) return false;
    return true;
  }
  if (expected.is_array()) {
    if (!computed.is_array() || computed.size() != expected.size()) return false;
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (!json_matches(expected[i], computed[i])) return false;
    return true;
  }
  // Rationals may be written as integers or "p/q" strings on either side.
  if ((expected.is_string() || expected.is_number_integer()) && (computed.is_string() || computed.is_number_integer())) {
    if (expected.is_string() && computed.is_string()) {
      if (expected == computed) return true;
    } else if (expected.is_number_integer() && computed.is_number_integer()) {
      return expected == computed;
    }
    try {
      return json_rational(expected) == json_rational(computed);
    } catch (const Error&) {
      return false;
    }
  }
  return expected == computed;
}

std::vector<ExpectationOutcome> run_expectations(const ProblemSpec& spec) {
  std::vector<ExpectationOutcome> out;
  for (const auto& e : spec.expectations) {
    ExpectationOutcome o;
    o.check = e.at("check").get<std::string>();
    o.args = e.value("args", Json::object());
    o.expected = e.at("expected");
    o.origin = e.value("origin", std::string());
    o.where = o.origin == "oracle" ? e.value("oracle", std::string()) : e.value("where", std::string());
    try {
      o.computed = evaluate_check(spec, o.check, o.args);
      o.passed = json_matches(o.expected, o.computed);
    } catch (const Error& err) {
      o.error = err.what();
      o.computed = Json{{"error", error_name(err.code())}};
      o.passed = json_matches(o.expected, o.computed);
    } catch (const nlohmann::json::exception& err) {
      o.error = std::string("ParseError: malformed expectation arguments: ") + err.what();
      o.computed = Json{{"error", "ParseError"}};
    }
    out.push_back(std::move(o));
  }
  return out;
}

Report verify_corpus(const std::optional<std::string>& filter) {
  std::vector<const Fixture*> selected;
  if (filter) {
    selected.push_back(&fixture(*filter));
  } else {
    for (const auto& f : fixtures()) selected.push_back(&f);
  }
  std::string digest_input = filter ? *filter : std::string("*");
  for (const auto* f : selected) digest_input += "\n" + f->document;

  struct Result {
    Json summary;
    bool ok = true;
  };
  auto results = parallel_map<Result>(selected.size(), [&](std::size_t i) {
    const Fixture& f = *selected[i];
    Result r;
    if (!f.in_scope) {
      r.summary = Json{{"status", "out-of-scope"}, {"note", f.note}};
      return r;
    }
    std::vector<ExpectationOutcome> outcomes;
    try {
      outcomes = run_expectations(fixture_problem(f));
    } catch (const Error& e) {
      r.ok = false;
      r.summary = Json{{"status", "fail"}, {"error", e.what()}};
      return r;
    }
    Json failures = Json::array();
    std::size_t passed = 0;
    for (const auto& o : outcomes) {
      if (o.passed) {
        ++passed;
        continue;
      }
      Json fj{{"check", o.check}, {"args", o.args}, {"expected", o.expected}, {"computed", o.computed}};
      if (!o.error.empty()) fj["error"] = o.error;
      failures.push_back(fj);
    }
    r.ok = failures.empty();
    r.summary = Json{{"status", r.ok ? "pass" : "fail"}, {"checks", outcomes.size()}, {"passed", passed}};
    if (!r.ok) r.summary["failures"] = failures;
    return r;
  });

  Report rep;
  rep.command = "verify-corpus";
  rep.input_digest = sha256_hex(digest_input);
  std::size_t pass = 0, fail = 0, skipped = 0;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    rep.body["fixtures"][selected[i]->name] = results[i].summary;
    if (!selected[i]->in_scope) ++skipped;
    else if (results[i].ok) ++pass;
    else ++fail;
  }
  rep.body["summary"] = Json{{"passed", pass}, {"failed", fail}, {"out_of_scope", skipped}};
  rep.exit_code = fail == 0 ? 0 : 1;
  return rep;
}

}  // namespace choquet
