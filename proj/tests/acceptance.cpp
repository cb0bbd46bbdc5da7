// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any fails. Every
// comparison is exact rational equality.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "choquet/boundary.hpp"
#include "choquet/corpus.hpp"
#include "choquet/errors.hpp"
#include "choquet/lp.hpp"
#include "choquet/orders.hpp"
#include "choquet/polytope.hpp"
#include "choquet/representation.hpp"
#include "corpus_oracles.hpp"
#include "random_measures.hpp"
#include "spaces.hpp"

using namespace choquet;
using spaces::R;
using spaces::V;

namespace {

// Collects the first few failed checks of one criterion.
struct Criterion {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

struct NamedSpace {
  std::string name;
  ProblemSpec spec;
  const FunctionSpace& H() const { return spec.space; }
};

std::vector<NamedSpace> corpus_spaces() {
  std::vector<NamedSpace> out;
  for (const auto& f : fixtures())
    if (f.in_scope) out.push_back({f.name, fixture_problem(f)});
  return out;
}

bool polyhedral(const FunctionSpace& H) { return H.target().polyhedral(); }

std::vector<Vec> flat_all(const std::vector<VectorMeasure>& ms) {
  std::vector<Vec> out;
  for (const auto& m : ms) out.push_back(flatten(m));
  sort_unique(out);
  return out;
}

VectorMeasure measure(std::initializer_list<std::initializer_list<const char*>> rows) {
  VectorMeasure m;
  for (auto r : rows) m.push_back(V(r));
  return m;
}

void evaluation_norms_criterion(Criterion& c) {
  auto ny2 = spaces::normyevaluaci2();
  auto n2 = evaluation_norms(ny2, 1);
  c.expect(n2.phi_H == R("1/2"), "||phi_H(1)|| = 1/2 on normyevaluaci2");
  c.expect(n2.phi_Hw == 1, "||phi_Hw(1)|| = 1 on normyevaluaci2");
  auto ny1 = spaces::normyevaluaci1();
  c.expect(lin_evaluation_norm(ny1, 0, V({"1", "0"})) == 0, "phi_Hl(0, e1*) = 0 on normyevaluaci1");
  c.expect(is_zero(ny1.lin_evaluation(0, V({"1", "0"}))), "e1* o phi_H(0) vanishes on normyevaluaci1");
}

void boundary_criterion(Criterion& c, const std::vector<NamedSpace>& all) {
  auto H = spaces::nezachovani();
  c.expect(choquet_boundary(H) == std::vector<std::size_t>{0, 1, 3, 4}, "Ch = {-2,-1,1,2} on nezachovani");
  for (auto E : {NormSpec::linf(2), NormSpec::l1(2)})
    c.expect(choquet_boundary(spaces::chH_protipr(E)) == std::vector<std::size_t>{0, 1}, "Ch = K on chH-protipr");
  for (const auto& s : all) {
    if (!polyhedral(s.H())) continue;
    auto ch = choquet_boundary(s.H());
    for (std::size_t t = 0; t < s.H().n(); ++t) {
      auto r = boundary_conditions_report(s.H(), t);
      const bool in = std::find(ch.begin(), ch.end(), t) != ch.end();
      const bool agree = r.cond1 == in && r.cond2 == in && r.cond3 == in && r.cond4 == in && (!r.cond5 || *r.cond5 == in);
      c.expect(agree, "boundary conditions disagree on " + s.name + " at " + s.H().points().label(t));
    }
  }
}

void operator_ball_criterion(Criterion& c) {
  auto Hinf = spaces::chH_protipr(NormSpec::linf(2));
  c.expect(!operator_ball_extreme(Hinf, 0), "phi_H(0) not extreme for p = inf");
  auto H1 = spaces::chH_protipr(NormSpec::l1(2));
  c.expect(operator_ball_extreme(H1, 0) && operator_ball_extreme(H1, 1), "both evaluations extreme for p = 1");
  ScalarSpace Hw = weak_space(Hinf);
  c.expect(hs_evaluation(Hinf, Hw, 0, V({"1", "0"})) == hs_evaluation(Hinf, Hw, 0, V({"0", "0"})),
           "phi_Hs(0,(1,0)) = phi_Hs(0,0)");
  c.expect(!hs_is_extreme(Hinf, 0, V({"1", "0"})), "phi_Hs(0,(1,0)) not extreme");
}

void representing_criterion(Criterion& c) {
  auto H = spaces::nezachovani();
  auto M = representing_measures_vector(H, 2, V({"1", "1"}));
  c.expect(M.norm && *M.norm == R("3/2"), "functional norm 3/2");
  VectorMeasure s0 = measure({{"1/4", "0"}, {"0", "0"}, {"0", "1"}, {"0", "0"}, {"1/4", "0"}});
  VectorMeasure s1 = measure({{"1/4", "0"}, {"0", "1/2"}, {"0", "0"}, {"0", "1/2"}, {"1/4", "0"}});
  c.expect(flat_all(M.vertices) == flat_all({s0, s1}), "the two endpoint vertices at t = 0");
  oracle::RandomRationals rng(101);
  for (std::size_t t : {0u, 1u, 3u, 4u})
    for (int rep = 0; rep < 10; ++rep) {
      Vec x = rng.vec(2);
      if (is_zero(x)) x = V({"1", "0"});
      auto N = representing_measures_vector(H, t, x);
      VectorMeasure point(5, zeros(2));
      point[t] = x;
      c.expect(N.vertices == std::vector<VectorMeasure>{point}, "singleton eps_t (x) x* at " + H.points().label(t));
    }
}

void simpliciality_criterion(Criterion& c) {
  auto H = spaces::nezachovani();
  c.expect(weak_simplicial(H).status == SimplicialityStatus::Holds, "nezachovani weak Holds");
  c.expect(vector_simplicial(H).status == SimplicialityStatus::HoldsOnProbes, "nezachovani vector HoldsOnProbes");

  auto W = spaces::wsnevs_const();
  c.expect(weak_simplicial(W).status == SimplicialityStatus::Holds, "wsnevs-const weak Holds");
  auto vw = vector_simplicial(W);
  c.expect(vw.status == SimplicialityStatus::Fails && vw.witness->first == measure({{"0", "1"}, {"0", "0"}}) &&
               vw.witness->second == measure({{"0", "0"}, {"0", "1"}}),
           "wsnevs-const witness (eps_0 (x) e2*, eps_1 (x) e2*)");

  auto C = spaces::renorm_const();
  auto vc = vector_simplicial(C, {{1, V({"1", "1"})}});
  const VectorMeasure mu1 = measure({{"0", "0"}, {"1", "1"}, {"0", "0"}});
  const VectorMeasure mu2 = measure({{"0", "1"}, {"0", "0"}, {"1", "0"}});
  c.expect(vc.status == SimplicialityStatus::Fails && vc.witness->mass && *vc.witness->mass == 2 &&
               flat_all({vc.witness->first, vc.witness->second}) == flat_all({mu1, mu2}),
           "renorm-const l_inf witness of mass 2");
  c.expect(total_variation(C.target(), mu1) == 2 && total_variation(C.target(), mu2) == 2, "both witnesses mass 2");

  c.expect(weak_simplicial(spaces::square()).status == SimplicialityStatus::Fails, "square weak Fails");
}

void ac_criterion(Criterion& c, const std::vector<NamedSpace>& all) {
  auto H = spaces::nezachovani();
  auto ac = ac_spaces(H);
  Mat w{spaces::row(5, 2, {{2, 0, "1"}, {1, 0, "-1/2"}, {3, 0, "-1/2"}}),
        spaces::row(5, 2, {{2, 1, "1"}, {1, 1, "-1/2"}, {3, 1, "-1/2"}})};
  Mat v{spaces::row(5, 2, {{2, 1, "1"}, {1, 1, "-1/2"}, {3, 1, "-1/2"}}),
        spaces::row(5, 2, {{2, 0, "1"}, {0, 0, "-1/4"}, {4, 0, "-1/4"}})};
  const Subspace want_w = Subspace::kernel(w, 10), want_v = Subspace::kernel(v, 10);
  c.expect(ac.ac_w.dim() == 8 && ac.ac_w.basis == want_w.basis, "A_c^w(H) on nezachovani");
  c.expect(ac.ac_v_upper.dim() == 8 && ac.ac_v_upper.basis == want_v.basis, "A_c^v bound on nezachovani");
  c.expect(!ac.ac_w.subset_of(ac.ac_v_upper) && !ac.ac_v_upper.subset_of(ac.ac_w), "incomparable");
  c.expect(ac.ac_v_upper_weak.dim() == 5, "(A_c^v bound)_w = C(K)");

  for (const auto& H2 : {spaces::nezachovani(NormSpec::lp(2, R("3"))), spaces::wsnevs_const()})
    c.expect(ac_spaces(H2).ac_v_upper == H2.as_subspace(), "A_c^v(H) = H");

  // With constants, vector simplicial iff weakly simplicial and A_c^w(H) inside A_c^v(H).
  for (const auto& s : all) {
    const FunctionSpace& G = s.H();
    if (constants_status(G) != ConstantsStatus::Full || !separates_points(weak_space(G))) continue;
    auto vec = vector_simplicial(G, s.spec.probes);
    auto weak = weak_simplicial(G);
    auto acs = ac_spaces(G, s.spec.probes);
    const bool definitive = vec.status == SimplicialityStatus::Fails || acs.ac_w.subset_of(acs.ac_v_upper);
    if (!definitive) continue;
    const bool vector_ok = vec.status != SimplicialityStatus::Fails;
    const bool criterion = weak.status == SimplicialityStatus::Holds && !acs.ac_v_certified_negative;
    c.expect(vector_ok == criterion, "vector verdict vs weak and A_c criterion on " + s.name);
  }
}

void renorming_criterion(Criterion& c) {
  auto H = spaces::nezachovani(spaces::renorm2_norm());
  c.expect(norm_exact(H.target(), V({"1", "1"}), Side::Dual) == R("3/2"), "||(1,1)||* = 3/2");
  VectorMeasure mu = measure({{"0", "0"}, {"1/2", "1/2"}, {"0", "0"}, {"1/2", "1/2"}, {"0", "0"}});
  VectorMeasure nu = measure({{"1/4", "0"}, {"0", "1/2"}, {"0", "0"}, {"0", "1/2"}, {"1/4", "0"}});
  auto M = representing_measures_vector(H, 2, V({"1", "1"}));
  c.expect(M.norm && *M.norm == R("3/2"), "representing mass 3/2");
  for (const auto* m : {&mu, &nu}) {
    c.expect(total_variation(H.target(), *m) == R("3/2"), "measure of mass 3/2");
    c.expect(H.action(*m) == H.lin_evaluation(2, V({"1", "1"})), "measure represents (1,1) o phi_H(0)");
    c.expect(std::find(M.vertices.begin(), M.vertices.end(), *m) != M.vertices.end(), "measure in representing set");
  }
  c.expect(vector_simplicial(H).status == SimplicialityStatus::Fails, "renormed vector Fails");

  auto P = spaces::nezachovani(NormSpec::lp(2, R("3")));
  auto vp = vector_simplicial(P);
  c.expect(vp.status == SimplicialityStatus::HoldsOnProbes, "l_p vector HoldsOnProbes");
  for (const auto& r : vp.probe_log) c.expect(r.unique && r.note.empty(), "l_p probe reduced with a singleton");
  for (const auto& x : {V({"0", "1"}), V({"1", "0"}), V({"1/8", "1"}), V({"-1/8", "1"})}) {
    const Probe at_zero{2, x};
    c.expect(std::any_of(vp.probe_log.begin(), vp.probe_log.end(), [&](const ProbeRecord& r) { return r.probe == at_zero; }),
             "l_p probe set contains the reduction probes at 0");
  }
}

void dilation_criterion(Criterion& c, const std::vector<NamedSpace>& all) {
  std::size_t checked = 0;
  for (const auto& s : all) {
    const FunctionSpace& G = s.H();
    if (!weak_space(G).contains_constants()) continue;
    if (weak_simplicial(G).status != SimplicialityStatus::Holds) continue;
    auto ds = dilation_suite(G);
    const auto& k = ds.checks;
    c.expect(k.idempotent, "D^2 = D on " + s.name);
    c.expect(k.rows_boundary_probabilities, "rows of D on " + s.name);
    c.expect(k.fixed_space_is_ac_w, "fixed space on " + s.name);
    c.expect(k.restriction_bijective && k.restriction_isometric, "restriction to Ch on " + s.name);
    c.expect(k.dim_ac_w == k.boundary_size * G.d(), "dim A_c^w = |Ch| d on " + s.name);
    ++checked;
  }
  c.expect(checked >= 5, "dilation checked on too few fixtures");
}

void orders_criterion(Criterion& c, const std::vector<NamedSpace>& all) {
  oracle::RandomRationals rng(103);
  for (const auto& s : all) {
    const FunctionSpace& G = s.H();
    ScalarSpace W = weak_space(G);
    if (!W.contains_constants()) continue;
    std::vector<ScalarMeasure> sigmas;
    for (const auto& [label, sigma] : s.spec.measures) sigmas.push_back(sigma);
    for (int rep = 0; rep < 50; ++rep) sigmas.push_back(oracle::random_probability(rng, W.n()));
    for (const auto& m : maximality_checks(W, sigmas))
      c.expect(m.carried_by_boundary == m.envelope_test, "maximality criteria on " + s.name);
    if (!polyhedral(G)) continue;
    std::vector<VectorMeasure> mus;
    std::vector<ScalarMeasure> variations;
    for (int rep = 0; rep < 50; ++rep) {
      VectorMeasure mu(G.n());
      Vec var(G.n());
      for (std::size_t t = 0; t < G.n(); ++t) {
        mu[t] = rng.index(2) == 0 ? rng.vec(G.d()) : zeros(G.d());
        var[t] = norm_exact(G.target(), mu[t], Side::Dual);
      }
      mus.push_back(mu);
      variations.push_back(var);
    }
    auto maximal = maximality_checks(W, variations);
    for (std::size_t k = 0; k < mus.size(); ++k)
      c.expect(is_boundary_measure(G, mus[k]) == (maximal[k].carried_by_boundary && maximal[k].envelope_test),
               "boundary vector measure vs maximal variation on " + s.name);
    for (int rep = 0; rep < 20; ++rep) {
      ProductMeasure nu = oracle::random_nu(rng, G);
      VectorMeasure mu = t_star(nu, G.n(), G.d());
      ProductMeasure w = w_map(G.target(), mu);
      canonicalize(w);
      auto rel = n_mu_compare(G, mu, nu, w);
      c.expect(rel == OrderRelation::Leq || (rel == OrderRelation::Equal && nu == w), "nu <= W(T* nu) on " + s.name);
    }
  }
}

void simplexoid_criterion(Criterion& c) {
  for (const auto& E : {NormSpec::linf(2), NormSpec::l1(2), spaces::renorm2_norm()})
    c.expect(is_simplexoid(E), "planar norms are simplexoids");
  c.expect(is_simplexoid(NormSpec::linf(3)), "cross-polytope dual ball");
  c.expect(!is_simplexoid(NormSpec::l1(3)), "cube dual ball");

  oracle::RandomRationals rng(107);
  for (const auto& H : {FunctionSpace::full(spaces::labels({"a", "b"}), NormSpec::linf(3)),
                        FunctionSpace::full(spaces::labels({"a", "b"}), NormSpec::l1(3)), spaces::nezachovani(),
                        spaces::nezachovani(spaces::renorm2_norm())}) {
    for (int rep = 0; rep < 10; ++rep) {
      VectorMeasure mu = t_star(oracle::random_nu(rng, H), H.n(), H.d());
      if (is_simplexoid(H.target())) c.expect(n_mu_minimal(H, mu).unique, "unique minimal element over a simplexoid");
    }
  }
  auto cube = FunctionSpace::full(spaces::labels({"a", "b"}), NormSpec::l1(3));
  VectorMeasure facet{V({"1", "0", "0"}), V({"0", "0", "0"})};
  auto m = n_mu_minimal(cube, facet);
  c.expect(!m.unique && m.alternative && *m.alternative != m.minimal, "non-uniqueness at a cube facet center");
  if (m.alternative) {
    c.expect(t_star(*m.alternative, 2, 3) == facet && t_star(m.minimal, 2, 3) == facet, "both project to mu");
    c.expect(n_mu_compare(cube, facet, m.minimal, *m.alternative) == OrderRelation::Incomparable,
             "the two minimal elements are incomparable");
  }
}

void product_criterion(Criterion& c, const std::vector<NamedSpace>& all) {
  oracle::RandomRationals rng(109);
  for (const auto& s : all) {
    const FunctionSpace& G = s.H();
    if (!polyhedral(G) || !weak_space(G).contains_constants()) continue;
    for (int rep = 0; rep < 20; ++rep) {
      Vec phi = rng.vec(G.m());
      auto r = product_representation(G, phi);
      c.expect(r.mass == functional_norm(G, phi).value && total_mass(r.nu) == r.mass, "product mass on " + s.name);
    }
  }
  auto H = spaces::nezachovani();
  auto p = product_representation(H, H.lin_evaluation(2, V({"1", "1"})));
  ProductMeasure expected{{0, V({"1", "0"}), R("1/4")},
                          {1, V({"0", "1"}), R("1/2")},
                          {3, V({"0", "1"}), R("1/2")},
                          {4, V({"1", "0"}), R("1/4")}};
  c.expect(p.mass == R("3/2") && p.nu == expected, "four atoms of mass 3/2 on nezachovani");
}

void l1_predual_criterion(Criterion& c) {
  for (const auto& H : {FunctionSpace::full(spaces::labels({"a", "b"}), NormSpec::linf(2)), spaces::nezachovani()}) {
    auto r = l1_predual_check(H);
    c.expect(r.weakly_simplicial && r.E_is_l1_predual && r.acw_is_l1_predual, "l_inf^2 weakly simplicial passes");
  }
  auto s = l1_predual_check(FunctionSpace::full(spaces::labels({"a", "b"}), NormSpec::l1(3)));
  c.expect(s.weakly_simplicial && !s.E_is_l1_predual && !s.acw_is_l1_predual, "C(K, l_1^3) fails");
}

void property_criterion(Criterion& c, const std::vector<NamedSpace>& all) {
  std::size_t recomputed = 0;
  for (const auto& s : all)
    for (const auto& e : s.spec.expectations) {
      if (e.value("origin", "") != "oracle") continue;
      const Json args = e.value("args", Json::object());
      auto value = corpus_oracle::evaluate(s.spec, e.at("oracle"), e.at("check"), args);
      if (!value) {
        c.expect(false, "no oracle for " + s.name + ": " + e.dump());
        continue;
      }
      c.expect(json_matches(e.at("expected"), *value), "oracle disagrees with " + s.name + ": " + e.dump());
      c.expect(json_matches(e.at("expected"), evaluate_check(s.spec, e.at("check"), args)),
               "library disagrees with " + s.name + ": " + e.dump());
      ++recomputed;
    }
  c.expect(recomputed >= 20, "too few oracle expectations");

  oracle::RandomRationals rng(113);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng.index(2);
    LinearProgram lp(n);
    for (std::size_t j = 0; j < n; ++j) {
      lp.add_le(unit(n, j), 2);
      lp.add_ge(unit(n, j), -2);
    }
    for (int k = 0; k < 3; ++k) lp.add_le(rng.vec(n), 1 + rng.next_nonneg());
    if (trial % 3 == 0) lp.add_eq(rng.vec(n), rng.next());
    lp.objective = rng.vec(n);
    auto r = lp_solve(lp);
    auto verts = oracle::vertices(lp.le_lhs, lp.le_rhs, lp.eq_lhs, lp.eq_rhs, n);
    if (verts.empty()) {
      c.expect(r.status == LPStatus::Infeasible, "infeasible LP");
      continue;
    }
    c.expect(r.status == LPStatus::Optimal && r.value == oracle::min_over(verts, lp.objective), "LP optimum");
    auto d = lp_solve(dual_program(lp), false);
    c.expect(d.status == LPStatus::Optimal && d.value == -r.value, "LP strong duality");

    HRep h(n);
    for (std::size_t i = 0; i < lp.le_lhs.size(); ++i) h.add_le(lp.le_lhs[i], lp.le_rhs[i]);
    for (std::size_t i = 0; i < lp.eq_lhs.size(); ++i) h.add_eq(lp.eq_lhs[i], lp.eq_rhs[i]);
    auto got = vertex_enumeration(h);
    c.expect(got == verts, "vertex enumeration vs subset oracle");
    if (got.size() >= 2) {
      Polytope P = facet_enumeration(got);
      HRep back(n);
      for (const auto& f : *P.facets) back.add_le(f.normal, f.offset);
      for (std::size_t i = 0; i < P.hull_lhs.size(); ++i) back.add_eq(P.hull_lhs[i], P.hull_rhs[i]);
      c.expect(vertex_enumeration(back) == got, "V -> H -> V round trip");
    }
  }
  for (const auto& s : all) {
    if (!polyhedral(s.H())) continue;
    const auto& dv = s.H().target().dual_vertices();
    if (dv.size() < 2) continue;
    Polytope P = facet_enumeration(dv);
    HRep back(s.H().d());
    for (const auto& f : *P.facets) back.add_le(f.normal, f.offset);
    c.expect(vertex_enumeration(back) == dv, "dual ball round trip on " + s.name);
  }
}

}  // namespace

// Optional arguments select criteria by number.
int main(int argc, char** argv) {
  const std::vector<NamedSpace> all = corpus_spaces();
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
      {"evaluation norms", evaluation_norms_criterion},
      {"Choquet boundary and its equivalent conditions", [&](Criterion& c) { boundary_criterion(c, all); }},
      {"operator-ball extreme points", operator_ball_criterion},
      {"representing polytopes", representing_criterion},
      {"weak and vector simpliciality", simpliciality_criterion},
      {"A_c spaces", [&](Criterion& c) { ac_criterion(c, all); }},
      {"renorming sensitivity", renorming_criterion},
      {"dilation", [&](Criterion& c) { dilation_criterion(c, all); }},
      {"orders and maximality", [&](Criterion& c) { orders_criterion(c, all); }},
      {"simplexoids and N(mu)", simplexoid_criterion},
      {"product representation", [&](Criterion& c) { product_criterion(c, all); }},
      {"L1-predual test", l1_predual_criterion},
      {"oracle equivalence, LP duality, V/H round trips", [&](Criterion& c) { property_criterion(c, all); }},
  };
  int failed = 0;
  std::vector<bool> selected(criteria.size(), argc == 1);
  for (int a = 1; a < argc; ++a) {
    const std::size_t k = std::stoul(argv[a]);
    if (k >= 1 && k <= criteria.size()) selected[k - 1] = true;
  }
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected[i]) continue;
    Criterion c;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (c.failures.empty() ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << "\n";
    for (std::size_t k = 0; k < std::min<std::size_t>(c.failures.size(), 5); ++k)
      std::cout << "     " << c.failures[k] << "\n";
    if (!c.failures.empty()) ++failed;
    std::cerr << "time " << (i + 1) << ": "
              << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s\n";
  }
  return failed == 0 ? 0 : 1;
}
