#include "choquet/commands.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "choquet/errors.hpp"

namespace choquet {

Json labels_json(const FiniteCompact& K, const std::vector<std::size_t>& idx) {
  Json a = Json::array();
  for (auto i : idx) a.push_back(K.label(i));
  return a;
}

Json subspace_json(const Subspace& S) {
  Subspace c = Subspace::span(S.basis, S.ambient);
  return Json{{"dim", c.dim()}, {"basis", to_json(c.basis)}};
}

Json product_json(const FiniteCompact& K, ProductMeasure nu) {
  canonicalize(nu);
  Json a = Json::array();
  for (const auto& atom : nu) a.push_back(Json::array({K.label(atom.point), to_json(atom.x_star), to_json(atom.mass)}));
  return a;
}

Json verdict_json(const FunctionSpace& H, const SimplicialityVerdict& v) {
  Json j{{"kind", to_string(v.kind)}, {"status", to_string(v.status)}};
  if (v.witness) {
    const Witness& w = *v.witness;
    Json wj = Json::object();
    if (w.t) wj["point"] = H.points().label(*w.t);
    if (!w.x_star.empty()) wj["x_star"] = to_json(w.x_star);
    if (w.x_star.empty()) {
      Vec a, b;
      for (std::size_t s = 0; s < w.first.size(); ++s) {
        a.push_back(w.first[s][0]);
        b.push_back(w.second[s][0]);
      }
      wj["measures"] = Json::array({to_json(a), to_json(b)});
    } else {
      wj["measures"] = Json::array({to_json(w.first), to_json(w.second)});
    }
    if (w.mass) wj["mass"] = to_json(*w.mass);
    j["witness"] = wj;
  }
  j["failures"] = v.failures.size();
  std::size_t skipped = 0;
  for (const auto& r : v.probe_log)
    if (!r.note.empty()) ++skipped;
  j["probes"] = v.probe_log.size();
  j["skipped_probes"] = skipped;
  return j;
}

Json boundary_conditions_json(const BoundaryConditions& c) {
  Json j{{"cond1", c.cond1}, {"cond2", c.cond2}, {"cond3", c.cond3}, {"cond4", c.cond4}};
  j["cond5"] = c.cond5 ? Json(*c.cond5) : Json(nullptr);
  j["operator_ball_extreme"] = c.operator_ball_extreme ? Json(*c.operator_ball_extreme) : Json(nullptr);
  return j;
}

Json structure_json(const FunctionSpace& H) {
  ScalarSpace Hw = weak_space(H);
  return Json{{"separates_points", separates_points(Hw)},
              {"constants", to_string(constants_status(H))},
              {"constants_w", Hw.contains_constants()}};
}

Json collapses_json(const FunctionSpace& H) {
  Json a = Json::array();
  for (const auto& c : theta_collapses(H))
    a.push_back(Json::array({H.points().label(c.s), H.points().label(c.t), c.alpha}));
  return a;
}

Json evaluation_norms_json(const FunctionSpace& H, std::size_t t, const std::optional<Vec>& x) {
  if (!H.target().polyhedral()) return Json{{"phi_Hw", to_json(weak_evaluation_norm(weak_space(H), t))}};
  EvaluationNorms e = evaluation_norms(H, t, x);
  Json j{{"phi_H", to_json(e.phi_H)}, {"phi_Hw", to_json(e.phi_Hw)}};
  if (e.phi_Hl) j["phi_Hl"] = to_json(*e.phi_Hl);
  j["phi_Hs"] = to_json(e.phi_Hs);
  return j;
}

Json vector_measures_json(std::vector<VectorMeasure> ms) {
  std::sort(ms.begin(), ms.end(), [](const VectorMeasure& a, const VectorMeasure& b) { return flatten(a) < flatten(b); });
  Json a = Json::array();
  for (const auto& m : ms) a.push_back(to_json(m));
  return a;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

namespace {

std::size_t require_point(const ProblemSpec& spec, const CommandRequest& req) {
  if (!req.point) throw Error(ErrorCode::InvalidInput, req.command + " needs --point");
  return spec.space.points().index(*req.point);
}

const Vec& require_functional(const ProblemSpec& spec, const CommandRequest& req) {
  if (!req.functional) throw Error(ErrorCode::InvalidInput, req.command + " needs --functional");
  if (req.functional->size() != spec.space.d())
    throw Error(ErrorCode::DimensionMismatch, "--functional needs " + std::to_string(spec.space.d()) + " entries");
  return *req.functional;
}

std::vector<Probe> all_probes(const ProblemSpec& spec, const CommandRequest& req) {
  std::vector<Probe> p = req.extra_probes;
  p.insert(p.end(), spec.probes.begin(), spec.probes.end());
  return p;
}

Json space_json(const FunctionSpace& H) {
  return Json{{"points", H.points().labels()}, {"target", H.target().describe()}, {"dim", H.m()}};
}

const ScalarMeasure& scalar_measure(const ProblemSpec& spec, const std::string& name) {
  auto it = spec.measures.find(name);
  if (it == spec.measures.end()) throw Error(ErrorCode::InvalidInput, "no scalar measure named \"" + name + "\"");
  return it->second;
}

const VectorMeasure& vector_measure(const ProblemSpec& spec, const std::string& name) {
  auto it = spec.vector_measures.find(name);
  if (it == spec.vector_measures.end()) throw Error(ErrorCode::InvalidInput, "no vector measure named \"" + name + "\"");
  return it->second;
}

bool fails(const SimplicialityVerdict& v) { return v.status == SimplicialityStatus::Fails; }

}  // namespace

Report run_command(const ProblemSpec& spec, const CommandRequest& req) {
  const FunctionSpace& H = spec.space;
  const FiniteCompact& K = H.points();
  Report r;
  r.command = req.command;
  Json args{{"command", req.command}, {"mode", req.mode}, {"measures", req.measures}};
  if (req.point) args["point"] = *req.point;
  if (req.functional) args["functional"] = to_json(*req.functional);
  for (const auto& p : req.extra_probes) args["probes"].push_back(Json::array({K.label(p.t), to_json(p.x_star)}));
  r.input_digest = sha256_hex(spec.source.dump() + "\n" + args.dump());
  Json& b = r.body;
  b["problem"] = spec.name;
  b["space"] = space_json(H);

  const std::string& c = req.command;
  if (c == "analyze") {
    b["structure"] = structure_json(H);
    b["boundary"] = labels_json(K, choquet_boundary(H));
    for (std::size_t t = 0; t < H.n(); ++t) b["evaluation_norms"][K.label(t)] = evaluation_norms_json(H, t, std::nullopt);
    b["theta_collapses"] = collapses_json(H);
    auto weak = weak_simplicial(H);
    auto vec = vector_simplicial(H, all_probes(spec, req));
    b["weak_simplicial"] = verdict_json(H, weak);
    b["vector_simplicial"] = verdict_json(H, vec);
    r.exit_code = fails(weak) || fails(vec) ? 1 : 0;
  } else if (c == "boundary") {
    b["boundary"] = labels_json(K, choquet_boundary(H));
    if (H.target().polyhedral())
      for (std::size_t t = 0; t < H.n(); ++t)
        b["conditions"][K.label(t)] = boundary_conditions_json(boundary_conditions_report(H, t));
  } else if (c == "represent") {
    std::size_t t = require_point(spec, req);
    b["point"] = K.label(t);
    const bool scalar = req.mode == "scalar" || (req.mode.empty() && !req.functional);
    if (scalar) {
      auto S = representing_measures_scalar(H, t);
      b["norm"] = to_json(S.norm);
      b["vertices"] = Json::array();
      for (const auto& v : S.vertices) b["vertices"].push_back(to_json(v));
    } else {
      const Vec& x = require_functional(spec, req);
      auto M = representing_measures_vector(H, t, x);
      b["x_star"] = to_json(x);
      if (M.norm) b["norm"] = to_json(*M.norm);
      else b["norm_approx"] = M.norm_approx;
      std::sort(M.vertices.begin(), M.vertices.end(),
                [](const VectorMeasure& a, const VectorMeasure& b) { return flatten(a) < flatten(b); });
      b["vertices"] = vector_measures_json(M.vertices);
      Json boundary = Json::array();
      for (const auto& v : M.vertices) boundary.push_back(is_boundary_measure(H, v));
      b["boundary_vertices"] = boundary;
    }
  } else if (c == "simplicial") {
    const std::string mode = req.mode.empty() ? "all" : req.mode;
    bool any_fail = false;
    auto emit = [&](const char* key, const SimplicialityVerdict& v) {
      b[key] = verdict_json(H, v);
      any_fail = any_fail || fails(v);
    };
    if (mode == "weak" || mode == "all") emit("weak", weak_simplicial(H));
    if (mode == "functional-weak" || mode == "all") {
      if (weak_space(H).contains_constants()) emit("functional_weak", functional_weak_simplicial(H));
      else if (mode == "functional-weak") emit("functional_weak", functional_weak_simplicial(H));
      else b["functional_weak"] = "undecided: H_w has no constants";
    }
    if (mode == "vector" || mode == "all") emit("vector", vector_simplicial(H, all_probes(spec, req)));
    if (!b.contains("weak") && !b.contains("functional_weak") && !b.contains("vector"))
      throw Error(ErrorCode::InvalidInput, "--mode is weak, functional-weak or vector");
    r.exit_code = any_fail ? 1 : 0;
  } else if (c == "affine") {
    auto ac = ac_spaces(H, all_probes(spec, req));
    b["ac_scalar"] = subspace_json(ac.ac_scalar);
    b["ac_w"] = subspace_json(ac.ac_w);
    b["ac_v_upper"] = subspace_json(ac.ac_v_upper);
    b["ac_v_upper_weak"] = subspace_json(ac.ac_v_upper_weak);
    b["ac_v_upper_equals_H"] = ac.ac_v_upper == H.as_subspace();
    b["ac_v_certified_negative"] = ac.ac_v_certified_negative;
  } else if (c == "dilate") {
    auto ds = dilation_suite(H);
    for (std::size_t t = 0; t < H.n(); ++t) b["D"][K.label(t)] = to_json(ds.D[t]);
    const auto& k = ds.checks;
    b["checks"] = Json{{"idempotent", k.idempotent},
                       {"rows_boundary_probabilities", k.rows_boundary_probabilities},
                       {"fixed_space_is_ac_w", k.fixed_space_is_ac_w},
                       {"restriction_bijective", k.restriction_bijective},
                       {"restriction_isometric", k.restriction_isometric},
                       {"dim_ac_w", k.dim_ac_w},
                       {"boundary_size", k.boundary_size}};
    r.exit_code = k.all() ? 0 : 1;
  } else if (c == "order") {
    ScalarSpace Hw = weak_space(H);
    if (req.measures.empty()) throw Error(ErrorCode::InvalidInput, "order needs --measure (one or two names)");
    for (const auto& name : req.measures) {
      auto m = maximality_check(Hw, scalar_measure(spec, name));
      b["maximality"][name] = Json{{"carried_by_boundary", m.carried_by_boundary}, {"envelope_test", m.envelope_test}};
    }
    if (req.measures.size() >= 2) {
      const auto &a = scalar_measure(spec, req.measures[0]), &bm = scalar_measure(spec, req.measures[1]);
      b["leq"] = choquet_leq(Hw, a, bm);
      b["geq"] = choquet_leq(Hw, bm, a);
    }
  } else if (c == "nmu") {
    if (req.measures.size() != 1) throw Error(ErrorCode::InvalidInput, "nmu needs exactly one --measure");
    const VectorMeasure& mu = vector_measure(spec, req.measures[0]);
    auto m = n_mu_minimal(H, mu);
    b["measure"] = req.measures[0];
    b["w_map"] = product_json(K, w_map(H.target(), mu));
    b["minimal"] = product_json(K, m.minimal);
    b["unique"] = m.unique;
    if (m.alternative) b["alternative"] = product_json(K, *m.alternative);
    ProductMeasure w = w_map(H.target(), mu);
    for (const auto& [name, nu] : spec.product_measures)
      if (t_star(nu, H.n(), H.d()) == mu) b["compare_with_w_map"][name] = to_string(n_mu_compare(H, mu, nu, w));
  } else if (c == "product-rep") {
    std::size_t t = require_point(spec, req);
    const Vec& x = require_functional(spec, req);
    auto p = product_representation(H, H.lin_evaluation(t, x));
    b["point"] = K.label(t);
    b["x_star"] = to_json(x);
    b["mass"] = to_json(p.mass);
    b["atoms"] = product_json(K, p.nu);
  } else {
    throw Error(ErrorCode::InvalidInput, "unknown command \"" + c + "\"");
  }
  return r;
}

namespace {

bool scalar_like(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string inline_json(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + inline_json(j[i]);
    return s + "]";
  }
  return j.dump();
}

void render_text(const Json& j, int indent, std::ostringstream& os) {
  std::size_t width = 0;
  for (const auto& [k, v] : j.items()) width = std::max(width, k.size());
  for (const auto& [k, v] : j.items()) {
    os << std::string(indent, ' ');
    if (v.is_object()) {
      os << k << "\n";
      render_text(v, indent + 2, os);
    } else if (v.is_array() && !v.empty() && !std::all_of(v.begin(), v.end(), scalar_like) &&
               inline_json(v).size() > 72) {
      os << k << "\n";
      for (const auto& e : v) os << std::string(indent + 2, ' ') << "- " << inline_json(e) << "\n";
    } else {
      os << std::left << std::setw(static_cast<int>(width)) << k << "  " << inline_json(v) << "\n";
    }
  }
}

}  // namespace

std::string render(const Report& r, bool as_json) {
  if (as_json) {
    Json doc{{"command", r.command}, {"input_digest", r.input_digest}, {"exit_code", r.exit_code}, {"result", r.body}};
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  Json all{{"command", r.command}, {"input_digest", r.input_digest}};
  for (const auto& [k, v] : r.body.items()) all[k] = v;
  render_text(all, 0, os);
  return os.str();
}

}  // namespace choquet
