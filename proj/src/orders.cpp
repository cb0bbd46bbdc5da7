#include "choquet/orders.hpp"

#include <optional>

#include <algorithm>
#include <map>

#include "choquet/boundary.hpp"
#include "choquet/errors.hpp"
#include "choquet/lp.hpp"
#include "choquet/parallel.hpp"

namespace choquet {

namespace {

void require_nonnegative(const Vec& sigma, std::size_t n) {
  if (sigma.size() != n) throw Error(ErrorCode::DimensionMismatch, "measure must have one entry per point");
  for (const auto& x : sigma)
    if (sgn(x) < 0) throw Error(ErrorCode::NegativeMeasure, "measure " + to_string(sigma) + " is not positive");
}

void require_polyhedral(const NormSpec& E, const char* op) {
  if (!E.polyhedral()) throw Error(ErrorCode::SmoothNormUnsupported, std::string(op) + " with target " + E.describe());
}

}  // namespace

bool ConvexCone::contains(const Vec& f) const {
  for (const auto& r : rows)
    if (dot(r, f) > 0) return false;
  return true;
}

ConvexCone convex_cone(const ScalarSpace& Hw) {
  ConvexCone c;
  c.n = Hw.n();
  auto sets = parallel_map<ScalarRepresentingSet>(c.n, [&](std::size_t t) { return representing_measures_scalar(Hw, t); });
  for (std::size_t t = 0; t < c.n; ++t)
    for (const auto& mu : sets[t].vertices) {
      Vec r = neg(mu);
      r[t] += 1;
      if (!is_zero(r)) c.rows.push_back(std::move(r));
    }
  sort_unique(c.rows);
  return c;
}

bool choquet_leq(const ScalarSpace& Hw, const ScalarMeasure& sigma1, const ScalarMeasure& sigma2) {
  require_nonnegative(sigma1, Hw.n());
  require_nonnegative(sigma2, Hw.n());
  // Farkas: <sigma2 - sigma1, f> >= 0 on { rows . f <= 0 } iff sigma1 - sigma2 = rows^T y with y >= 0.
  ConvexCone c = convex_cone(Hw);
  const std::size_t k = c.rows.size();
  LinearProgram lp(k);
  for (std::size_t j = 0; j < k; ++j) lp.set_nonneg(j);
  for (std::size_t s = 0; s < Hw.n(); ++s) {
    Vec row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = c.rows[j][s];
    lp.add_eq(std::move(row), sigma1[s] - sigma2[s]);
  }
  return lp_solve(lp, false).status == LPStatus::Optimal;
}

namespace {

Vec envelope(const ConvexCone& c, const Vec& f) {
  const std::size_t n = c.n;
  Vec out(n);
  for (std::size_t t = 0; t < n; ++t) {
    LinearProgram lp(n);
    lp.objective[t] = -1;
    for (const auto& r : c.rows) lp.add_le(r, 0);
    for (std::size_t s = 0; s < n; ++s) lp.add_le(unit(n, s), f[s]);
    LPOutcome r = lp_solve(lp, false);
    if (r.status != LPStatus::Optimal)
      throw Error(ErrorCode::InvalidInput, "no H_w-convex minorant of " + to_string(f));
    out[t] = -r.value;
  }
  return out;
}

}  // namespace

Vec lower_envelope(const ScalarSpace& Hw, const Vec& f) {
  if (f.size() != Hw.n()) throw Error(ErrorCode::DimensionMismatch, "function must have one value per point");
  return envelope(convex_cone(Hw), f);
}

std::vector<MaximalityCheck> maximality_checks(const ScalarSpace& Hw, const std::vector<ScalarMeasure>& sigmas) {
  if (!Hw.contains_constants()) throw Error(ErrorCode::NoConstantsInHw, "maximality needs constants in H_w");
  for (const auto& sigma : sigmas) require_nonnegative(sigma, Hw.n());
  const std::size_t n = Hw.n();
  std::vector<bool> ch(n, false);
  for (auto s : choquet_boundary(Hw)) ch[s] = true;

  ConvexCone c = convex_cone(Hw);
  std::vector<Vec> family;
  for (std::size_t s = 0; s < n; ++s) {
    family.push_back(unit(n, s));
    family.push_back(neg(unit(n, s)));
  }
  for (const auto& r : c.rows) {
    family.push_back(r);
    family.push_back(neg(r));
  }
  // f - envelope(f), computed on first use.
  std::vector<std::optional<Vec>> gap(family.size());

  std::vector<MaximalityCheck> out(sigmas.size());
  for (std::size_t k = 0; k < sigmas.size(); ++k) {
    const ScalarMeasure& sigma = sigmas[k];
    out[k].carried_by_boundary = true;
    for (std::size_t s = 0; s < n; ++s)
      if (sgn(sigma[s]) != 0 && !ch[s]) out[k].carried_by_boundary = false;
    out[k].envelope_test = true;
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (!gap[i]) gap[i] = sub(family[i], envelope(c, family[i]));
      if (dot(sigma, *gap[i]) != 0) {
        out[k].envelope_test = false;
        break;
      }
    }
  }
  return out;
}

MaximalityCheck maximality_check(const ScalarSpace& Hw, const ScalarMeasure& sigma) {
  return maximality_checks(Hw, {sigma}).front();
}

Rational total_mass(const ProductMeasure& nu) {
  Rational s = 0;
  for (const auto& a : nu) s += a.mass;
  return s;
}

void canonicalize(ProductMeasure& nu) {
  std::map<std::pair<std::size_t, Vec>, Rational> merged;
  for (const auto& a : nu) merged[{a.point, a.x_star}] += a.mass;
  nu.clear();
  for (const auto& [key, m] : merged)
    if (sgn(m) != 0) nu.push_back({key.first, key.second, m});
}

VectorMeasure t_star(const ProductMeasure& nu, std::size_t n, std::size_t d) {
  VectorMeasure mu(n, zeros(d));
  for (const auto& a : nu) {
    if (a.point >= n) throw Error(ErrorCode::InvalidInput, "atom point out of range");
    if (a.x_star.size() != d) throw Error(ErrorCode::DimensionMismatch, "atom functional length");
    mu[a.point] = add(mu[a.point], scale(a.mass, a.x_star));
  }
  return mu;
}

ProductMeasure w_map(const NormSpec& E, const VectorMeasure& mu) {
  require_polyhedral(E, "w_map");
  ProductMeasure nu;
  for (std::size_t s = 0; s < mu.size(); ++s) {
    if (is_zero(mu[s])) continue;
    Rational c = norm_exact(E, mu[s], Side::Dual);
    nu.push_back({s, scale(1 / c, mu[s]), c});
  }
  return nu;
}

bool choquet_leq_ball(const NormSpec& E, const BallMeasure& sigma1, const BallMeasure& sigma2) {
  require_polyhedral(E, "choquet_leq_ball");
  const std::size_t d = E.dim();
  auto moments = [&](const BallMeasure& s) {
    Rational m = 0;
    Vec b = zeros(d);
    for (const auto& [x, w] : s) {
      if (x.size() != d) throw Error(ErrorCode::DimensionMismatch, "ball point length");
      if (sgn(w) < 0) throw Error(ErrorCode::NegativeMeasure, "negative ball-measure weight");
      if (norm_exact(E, x, Side::Dual) > 1) throw Error(ErrorCode::InvalidInput, to_string(x) + " is outside B_{E*}");
      m += w;
      b = add(b, scale(w, x));
    }
    return std::make_pair(m, b);
  };
  if (moments(sigma1) != moments(sigma2))
    throw Error(ErrorCode::BarycenterMismatch, "ball measures differ in mass or barycenter");
  // w_ij >= 0 splits atom i of sigma1 into sigma2's support keeping its barycenter.
  const std::size_t a = sigma1.size(), b = sigma2.size();
  LinearProgram lp(a * b);
  for (std::size_t v = 0; v < a * b; ++v) lp.set_nonneg(v);
  for (std::size_t i = 0; i < a; ++i) {
    Vec row = zeros(a * b);
    for (std::size_t j = 0; j < b; ++j) row[i * b + j] = 1;
    lp.add_eq(row, sigma1[i].second);
    for (std::size_t k = 0; k < d; ++k) {
      Vec r = zeros(a * b);
      for (std::size_t j = 0; j < b; ++j) r[i * b + j] = sigma2[j].first[k];
      lp.add_eq(std::move(r), sigma1[i].second * sigma1[i].first[k]);
    }
  }
  for (std::size_t j = 0; j < b; ++j) {
    Vec row = zeros(a * b);
    for (std::size_t i = 0; i < a; ++i) row[i * b + j] = 1;
    lp.add_eq(std::move(row), sigma2[j].second);
  }
  return lp_solve(lp, false).status == LPStatus::Optimal;
}

const char* to_string(OrderRelation r) {
  switch (r) {
    case OrderRelation::Leq: return "Leq";
    case OrderRelation::Geq: return "Geq";
    case OrderRelation::Equal: return "Equal";
    case OrderRelation::Incomparable: return "Incomparable";
  }
  return "?";
}

namespace {

void require_boundary(const FunctionSpace& H, const VectorMeasure& mu) {
  if (mu.size() != H.n()) throw Error(ErrorCode::DimensionMismatch, "vector measure must have one row per point");
  if (!is_boundary_measure(H, mu)) throw Error(ErrorCode::NotMaximal, "measure is not carried by the Choquet boundary");
}

// Kernel at t: atoms of nu at t with masses divided by ||mu_t||.
std::vector<BallMeasure> kernels(const FunctionSpace& H, const VectorMeasure& mu, ProductMeasure nu) {
  const NormSpec& E = H.target();
  canonicalize(nu);
  for (const auto& a : nu)
    if (sgn(a.mass) <= 0 || norm_exact(E, a.x_star, Side::Dual) > 1)
      throw Error(ErrorCode::NotInNMu, "atoms need positive mass and x* in B_{E*}");
  if (t_star(nu, H.n(), H.d()) != mu) throw Error(ErrorCode::NotInNMu, "T* nu differs from mu");
  if (total_mass(nu) != total_variation(E, mu)) throw Error(ErrorCode::NotInNMu, "||nu|| differs from ||mu||");
  std::vector<BallMeasure> out(H.n());
  for (const auto& a : nu) out[a.point].emplace_back(a.x_star, a.mass / norm_exact(E, mu[a.point], Side::Dual));
  return out;
}

}  // namespace

OrderRelation n_mu_compare(const FunctionSpace& H, const VectorMeasure& mu, const ProductMeasure& nu1,
                           const ProductMeasure& nu2) {
  require_polyhedral(H.target(), "n_mu_compare");
  require_boundary(H, mu);
  auto k1 = kernels(H, mu, nu1), k2 = kernels(H, mu, nu2);
  bool leq = true, geq = true;
  for (std::size_t t = 0; t < H.n(); ++t) {
    if (k1[t].empty()) continue;
    // nu1 <_{H,c} nu2 iff the kernels of nu2 precede those of nu1.
    leq = leq && choquet_leq_ball(H.target(), k2[t], k1[t]);
    geq = geq && choquet_leq_ball(H.target(), k1[t], k2[t]);
  }
  if (leq && geq) return OrderRelation::Equal;
  if (leq) return OrderRelation::Leq;
  if (geq) return OrderRelation::Geq;
  return OrderRelation::Incomparable;
}

NMuMinimal n_mu_minimal(const FunctionSpace& H, const VectorMeasure& mu) {
  const NormSpec& E = H.target();
  require_polyhedral(E, "n_mu_minimal");
  require_boundary(H, mu);
  NMuMinimal out;
  std::optional<std::size_t> split;
  std::vector<BarycenterDecomposition> decs(H.n());
  for (std::size_t t = 0; t < H.n(); ++t) {
    if (is_zero(mu[t])) continue;
    Rational c = norm_exact(E, mu[t], Side::Dual);
    decs[t] = barycenter_decomposition(E, scale(1 / c, mu[t]));
    for (const auto& [v, w] : decs[t].weights) out.minimal.push_back({t, v, c * w});
    if (!decs[t].unique && !split) split = t;
  }
  out.unique = !split;
  if (split) {
    ProductMeasure alt;
    for (const auto& a : out.minimal)
      if (a.point != *split) alt.push_back(a);
    Rational c = norm_exact(E, mu[*split], Side::Dual);
    for (const auto& [v, w] : *decs[*split].alternative) alt.push_back({*split, v, c * w});
    canonicalize(alt);
    out.alternative = std::move(alt);
  }
  canonicalize(out.minimal);
  if (is_simplexoid(E)) check(out.unique, "simplexoid ball with a non-unique minimal element");
  return out;
}

ProductRepresentation product_representation(const FunctionSpace& H, const Vec& phi) {
  const NormSpec& E = H.target();
  require_polyhedral(E, "product_representation");
  if (!weak_space(H).contains_constants())
    throw Error(ErrorCode::NoConstantsInHw, "product representation needs constants in H_w");
  if (phi.size() != H.m()) throw Error(ErrorCode::DimensionMismatch, "functional must have one value per basis element");
  const auto ch = choquet_boundary(H);
  const auto& ext = E.dual_vertices();
  const std::size_t k = ch.size() * ext.size();
  LinearProgram lp(k);
  for (std::size_t v = 0; v < k; ++v) {
    lp.set_nonneg(v);
    lp.objective[v] = 1;
  }
  for (std::size_t j = 0; j < H.m(); ++j) {
    Vec row(k);
    for (std::size_t a = 0; a < ch.size(); ++a)
      for (std::size_t e = 0; e < ext.size(); ++e) row[a * ext.size() + e] = dot(ext[e], H.value(j, ch[a]));
    lp.add_eq(std::move(row), phi[j]);
  }
  LPOutcome r = lp_solve(lp, false);
  check(r.status == LPStatus::Optimal, "no product representation on the boundary");
  ProductRepresentation out;
  out.mass = r.value;
  for (std::size_t a = 0; a < ch.size(); ++a)
    for (std::size_t e = 0; e < ext.size(); ++e)
      if (sgn(r.point[a * ext.size() + e]) > 0) out.nu.push_back({ch[a], ext[e], r.point[a * ext.size() + e]});
  canonicalize(out.nu);
  Rational fn = functional_norm(H, phi).value;
  if (fn != out.mass)
    throw Error(ErrorCode::MassMismatch,
                "product representation mass " + to_string(out.mass) + " differs from ||phi|| = " + to_string(fn));
  return out;
}

}  // namespace choquet
