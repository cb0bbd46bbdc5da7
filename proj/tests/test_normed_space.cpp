#include "doctest.h"

#include "choquet/errors.hpp"
#include "choquet/lp.hpp"
#include "choquet/normed_space.hpp"
#include "oracles.hpp"
#include "spaces.hpp"

using namespace choquet;
using spaces::R;
using spaces::V;

namespace {

std::vector<NormSpec> sample_norms() {
  return {NormSpec::linf(2), NormSpec::l1(2), NormSpec::linf(3), NormSpec::l1(3), spaces::renorm2_norm(),
          NormSpec::from_ball_vertices({V({"2", "1"}), V({"-2", "-1"}), V({"0", "1"}), V({"0", "-1"}),
                                        V({"1", "-1"}), V({"-1", "1"})})};
}

// sup <x, y> over the primal ball, written as an LP over { y : <w, y> <= 1 } for all dual vertices w.
Rational dual_norm_by_lp(const NormSpec& E, const Vec& x) {
  LinearProgram lp(E.dim());
  for (const auto& w : E.dual_vertices()) lp.add_le(w, 1);
  lp.objective = neg(x);
  return -lp_solve(lp, false).value;
}

}  // namespace

TEST_CASE("dual balls of the standard norms") {
  CHECK(dual_ball(NormSpec::linf(2)).ext_points ==
        std::vector<Vec>{V({"-1", "0"}), V({"0", "-1"}), V({"0", "1"}), V({"1", "0"})});
  CHECK(dual_ball(NormSpec::l1(3)).ext_points.size() == 8);
  CHECK_THROWS_AS(dual_ball(NormSpec::lp(2, R("3/2"))), Error);
  try {
    dual_ball(NormSpec::lp(2, R("3")));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SmoothNormUnsupported);
  }
}

TEST_CASE("renormed plane from facets") {
  NormSpec E = spaces::renorm2_norm();
  CHECK(norm_exact(E, V({"1", "1"}), Side::Dual) == R("3/2"));
  CHECK(norm_exact(E, V({"0", "1"}), Side::Dual) == 1);
  CHECK(norm_exact(E, V({"1", "0"}), Side::Dual) == 1);
  CHECK(norm_exact(E, V({"1", "1/2"}), Side::Primal) == 1);
  CHECK(E.primal_vertices().size() == 8);
  // Polar brute force: vertices of { y : <v, y> <= 1 } over primal vertices.
  HRep h(2);
  for (const auto& v : E.primal_vertices()) h.add_le(v, 1);
  CHECK(oracle::vertices(h.A, h.b, h.Aeq, h.beq, 2) == E.dual_vertices());
  DualBall b = dual_ball(E);
  CHECK(b.polytope.facets->size() == E.primal_vertices().size());
}

TEST_CASE("norm values") {
  CHECK(norm_exact(NormSpec::linf(2), V({"1", "-1"}), Side::Primal) == 1);
  CHECK(norm_exact(NormSpec::linf(2), V({"1", "-1"}), Side::Dual) == 2);
  NormValue a = norm_value(NormSpec::lp(2, R("2")), V({"3", "4"}), Side::Primal);
  CHECK_FALSE(a.exact.has_value());
  CHECK(a.approx == doctest::Approx(5.0));
  CHECK_THROWS_AS(norm_exact(NormSpec::linf(2), V({"1"}), Side::Primal), Error);
}

TEST_CASE("bipolar and dual norm formula on sample norms") {
  oracle::RandomRationals rng(3);
  for (const auto& E : sample_norms()) {
    // The dual of the dual ball is the primal ball again.
    NormSpec dual = NormSpec::from_ball_vertices(E.dual_vertices());
    CHECK(dual.dual_vertices() == E.primal_vertices());
    // Generic polyhedral path agrees with the closed-form kinds.
    NormSpec generic = NormSpec::from_ball_vertices(E.primal_vertices());
    for (int k = 0; k < 50; ++k) {
      Vec x = rng.vec(E.dim());
      CHECK(norm_exact(E, x, Side::Dual) == dual_norm_by_lp(E, x));
      CHECK(norm_exact(generic, x, Side::Dual) == norm_exact(E, x, Side::Dual));
      CHECK(norm_exact(generic, x, Side::Primal) == norm_exact(E, x, Side::Primal));
    }
  }
}

TEST_CASE("ball validation") {
  CHECK_THROWS_AS(NormSpec::from_ball_vertices({V({"1", "0"}), V({"-1", "0"})}), Error);
  CHECK_THROWS_AS(NormSpec::from_ball_vertices({V({"1", "0"}), V({"0", "1"}), V({"-1", "0"})}), Error);
  CHECK_THROWS_AS(NormSpec::lp(2, R("1")), Error);
  // Interior generators are dropped.
  NormSpec s = NormSpec::from_ball_vertices({V({"1", "1"}), V({"-1", "-1"}), V({"1", "-1"}), V({"-1", "1"}),
                                             V({"1/2", "0"}), V({"-1/2", "0"})});
  CHECK(s.primal_vertices().size() == 4);
}

TEST_CASE("simplexoids") {
  CHECK(is_simplexoid(NormSpec::linf(2)));
  CHECK(is_simplexoid(NormSpec::l1(2)));
  CHECK(is_simplexoid(spaces::renorm2_norm()));
  CHECK(is_simplexoid(NormSpec::linf(3)));
  CHECK_FALSE(is_simplexoid(NormSpec::l1(3)));
  CHECK(is_simplexoid(NormSpec::linf(1)));
  CHECK_THROWS_AS(is_simplexoid(NormSpec::lp(3, R("2"))), Error);
}

TEST_CASE("barycenter decompositions") {
  NormSpec E = NormSpec::linf(2);  // dual = cross-polytope
  auto v = barycenter_decomposition(E, V({"1", "0"}));
  CHECK(v.unique);
  CHECK(v.weights == WeightedVertices{{V({"1", "0"}), R("1")}});
  auto mid = barycenter_decomposition(E, V({"1/2", "1/2"}));
  CHECK(mid.unique);
  CHECK(mid.weights == WeightedVertices{{V({"0", "1"}), R("1/2")}, {V({"1", "0"}), R("1/2")}});
  CHECK_THROWS_AS(barycenter_decomposition(E, V({"1/2", "0"})), Error);

  NormSpec cube = NormSpec::l1(3);  // dual = cube
  auto c = barycenter_decomposition(cube, V({"1", "0", "0"}));
  CHECK_FALSE(c.unique);
  REQUIRE(c.alternative);
  CHECK(c.face.size() == 4);
  CHECK(c.weights != *c.alternative);
  for (const auto* w : {&c.weights, &*c.alternative}) {
    Vec bar = zeros(3);
    Rational total = 0;
    for (const auto& [p, lam] : *w) {
      bar = add(bar, scale(lam, p));
      total += lam;
    }
    CHECK(bar == V({"1", "0", "0"}));
    CHECK(total == 1);
  }
}

TEST_CASE("simplexoid iff unique decompositions at facet barycenters") {
  for (const auto& E : sample_norms()) {
    DualBall b = dual_ball(E);
    bool all_unique = true;
    for (const auto& f : *b.polytope.facets) {
      Vec bar = zeros(E.dim());
      for (auto i : f.incident) bar = add(bar, b.ext_points[i]);
      bar = scale(Rational(1) / Rational(static_cast<long>(f.incident.size())), bar);
      all_unique = all_unique && barycenter_decomposition(E, bar).unique;
    }
    CHECK(all_unique == is_simplexoid(E));
  }
}

TEST_CASE("strictly convex duals") {
  CHECK(strictly_convex_dual(NormSpec::lp(2, R("3/2"))));
  CHECK_FALSE(strictly_convex_dual(NormSpec::linf(2)));
  CHECK(strictly_convex_dual(NormSpec::linf(1)));
  CHECK(strictly_convex_dual(NormSpec::l1(1)));
}
