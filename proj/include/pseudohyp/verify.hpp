#pragma once

#include <nlohmann/json.hpp>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "pseudohyp/barbot.hpp"
#include "pseudohyp/boundary.hpp"
#include "pseudohyp/cone_metric.hpp"
#include "pseudohyp/einstein.hpp"
#include "pseudohyp/fixture.hpp"
#include "pseudohyp/pseudo_hyperbolic.hpp"
#include "pseudohyp/rng.hpp"
#include "pseudohyp/surface_geom.hpp"

#ifndef PSEUDOHYP_FIXTURE_DIR
#define PSEUDOHYP_FIXTURE_DIR "tests/fixtures"
#endif

namespace pseudohyp {

// abs: |m - t| <= tol; rel: |m - t| <= tol |t|; upper: m <= t + tol;
// lower: m >= t - tol; count: number of violations m <= tol.
enum class CheckKind { Abs, Rel, Upper, Lower, Count };

inline const char* to_string(CheckKind k) {
  switch (k) {
    case CheckKind::Abs: return "abs";
    case CheckKind::Rel: return "rel";
    case CheckKind::Upper: return "upper";
    case CheckKind::Lower: return "lower";
    case CheckKind::Count: return "count";
  }
  return "?";
}

struct Check {
  std::string name;
  std::string tolerance_key;
  double measured = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  CheckKind kind = CheckKind::Abs;
  bool pass = false;
};

inline bool evaluate(const Check& c) {
  if (!(c.tolerance > 0) || !std::isfinite(c.measured)) return false;
  switch (c.kind) {
    case CheckKind::Abs: return std::abs(c.measured - c.target) <= c.tolerance;
    case CheckKind::Rel: return std::abs(c.measured - c.target) <= c.tolerance * std::abs(c.target);
    case CheckKind::Upper: return c.measured <= c.target + c.tolerance;
    case CheckKind::Lower: return c.measured >= c.target - c.tolerance;
    case CheckKind::Count: return c.measured <= c.tolerance;
  }
  return false;
}

inline std::map<std::string, double> default_tolerances() {
  return {
      {"barbot_mean_curvature", 1e-6},  {"barbot_gauss_curvature", 1e-6}, {"second_form_analytic", 1e-12},
      {"second_form_fd", 1e-6},         {"spacelike_distance", 1e-10},    {"warped_pullback", 1e-6},
      {"horo_gradient_fd", 1e-6},       {"horo_hessian_fd", 1e-4},        {"horo_vertex_q", 1e-8},
      {"horo_q_upper", 1e-9},           {"horo_critical_hessian", 1e-8},  {"horo_beta", 1e-8},
      {"space_boundary", 1e-3},         {"basis_pairing", 1e-15},         {"crown_semi_positive", 0.5},
      {"complete_crown", 1e-12},        {"renorm_final", 1e-3},           {"renorm_monotone", 0.5},
      {"cone_perimeter_quadrature", 1e-9}, {"cone_ray_length", 1e-9},     {"cone_deficit", 1e-12},
      {"grid_distance_rel", 0.03},      {"grid_refinement", 0.5},         {"poly_perimeter_rel", 0.02},
      {"tits_identity", 1e-6},          {"barbot_tits", 1e-9},            {"tits_perimeter_grid_rel", 0.02},
      {"tits_perimeter_analytic", 1e-9}, {"ohtsuka", 1e-6},               {"gauss_bonnet_triangle", 1e-9},
      {"curvature_identity_exact", 1e-9}, {"curvature_identity_grid_rel", 0.02}, {"bookkeeping", 1e-12},
  };
}

struct Config {
  int n = 2;
  std::map<std::string, double> tol = default_tolerances();
  int resolution = 801;
  std::string out = "out";
  std::uint64_t seed = 1;
  std::string fixture = std::string(PSEUDOHYP_FIXTURE_DIR) + "/hexagon.json";

  double t(const std::string& key) const {
    const auto it = tol.find(key);
    if (it == tol.end()) throw Error(ErrorCode::Precondition, "unknown tolerance " + key);
    return it->second;
  }

  // key=value; tol.<name> sets a tolerance, tol.all sets every tolerance.
  void set(const std::string& key, const std::string& value) {
    if (key == "n") n = std::stoi(value);
    else if (key == "resolution") resolution = std::stoi(value);
    else if (key == "out") out = value;
    else if (key == "seed") seed = std::stoull(value);
    else if (key == "fixture") fixture = value;
    else if (key.rfind("tol.", 0) == 0) {
      const std::string name = key.substr(4);
      const double v = std::stod(value);
      if (name == "all") {
        for (auto& [k, x] : tol) x = v;
      } else {
        if (!tol.count(name)) throw Error(ErrorCode::Precondition, "unknown tolerance " + name);
        tol[name] = v;
      }
    } else {
      throw Error(ErrorCode::Precondition, "unknown config key " + key);
    }
  }
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  std::string error;
  bool pass = false;
  double seconds = 0.0;  // not part of the JSON summary
  std::map<std::string, double> extras;
};

class CriterionBuilder {
 public:
  CriterionBuilder(const Config& c, CriterionResult& r) : cfg_(c), r_(r) {}
  void add(const std::string& name, const std::string& key, double measured, double target, CheckKind kind) {
    Check c{name, key, measured, target, cfg_.t(key), kind, false};
    c.pass = evaluate(c);
    r_.checks.push_back(c);
  }
  const Config& cfg() const { return cfg_; }
  CriterionResult& result() { return r_; }

 private:
  const Config& cfg_;
  CriterionResult& r_;
};

namespace criteria {

inline constexpr double pi = std::numbers::pi;

inline void barbot_flat(CriterionBuilder& b) {
  const BarbotSurface S = standard_barbot(b.cfg().n);
  const Immersion F = barbot_immersion(S);
  double h = 0.0, k = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const double u = -2.0 + i, v = -2.0 + j;
      h = std::max(h, mean_curvature(S.space, F, u, v).norm());
      k = std::max(k, std::abs(gauss_curvature(S.space, F, u, v)));
    }
  b.add("max |H| over 25 points", "barbot_mean_curvature", h, 0.0, CheckKind::Upper);
  b.add("max |K| over 25 points", "barbot_gauss_curvature", k, 0.0, CheckKind::Upper);
}

inline void second_form(CriterionBuilder& b) {
  const BarbotSurface S = standard_barbot(b.cfg().n);
  const Immersion F = barbot_immersion(S);
  double ea = 0.0, ef = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const double u = -2.0 + i, v = -2.0 + j;
      const VectorE half_n = 0.5 * barbot_frame(S, u, v).n;
      const Eigen::Vector2d du(1, 0);
      ea = std::max(ea, (barbot_second_fundamental_form(S, u, v, du, du) - half_n).norm());
      ef = std::max(ef, (fundamental_forms(S.space, F, u, v).II[0][0] - half_n).norm());
    }
  b.add("analytic II(du,du) - n/2", "second_form_analytic", ea, 0.0, CheckKind::Upper);
  b.add("finite-difference II(du,du) - n/2", "second_form_fd", ef, 0.0, CheckKind::Upper);
}

inline void spacelike_closed_form(CriterionBuilder& b) {
  const BarbotSurface S = standard_barbot(b.cfg().n);
  Rng rng(b.cfg().seed + 3);
  const PointHH x0 = barbot_point(S, 0, 0);
  double e = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double u = uniform(rng, -3, 3), v = uniform(rng, -3, 3);
    if (std::abs(u) + std::abs(v) < 1e-6) continue;
    const double d = spacelike_distance(S.space, barbot_point(S, u, v), x0);
    e = std::max(e, std::abs(d - std::acosh((std::cosh(u) + std::cosh(v)) / 2.0)));
  }
  b.add("max |delta - arccosh((cosh u + cosh v)/2)|", "spacelike_distance", e, 0.0, CheckKind::Upper);
}

inline void warped_pullback(CriterionBuilder& b) {
  const QuadraticSpace s(b.cfg().n);
  const WarpedSplitting w = standard_splitting(s);
  Rng rng(b.cfg().seed + 4);
  const int nq = s.dim() - 2;
  double e = 0.0;
  for (int k = 0; k < 50; ++k) {
    Eigen::Vector2d u;
    do u = Eigen::Vector2d(uniform(rng, -0.8, 0.8), uniform(rng, -0.8, 0.8));
    while (u.norm() > 0.8);
    VectorE v(nq);
    for (int i = 0; i < nq; ++i) v[i] = normal(rng);
    v.normalize();
    auto tangent = [&]() {
      Eigen::Vector2d a(normal(rng), normal(rng));
      VectorE c(nq);
      for (int i = 0; i < nq; ++i) c[i] = normal(rng);
      c -= c.dot(v) * v;
      return std::pair{a, c};
    };
    const auto X = tangent(), Y = tangent();
    // psi extended off the sphere by radial normalization
    auto dpsi = [&](const std::pair<Eigen::Vector2d, VectorE>& T) {
      auto at = [&](double t) -> VectorE {
        const VectorE vv = v + t * T.second;
        return warped_embed(s, w, u + t * T.first, vv / vv.norm()).v;
      };
      auto D = [&](double h) -> VectorE { return (at(h) - at(-h)) / (2.0 * h); };
      return VectorE((4.0 * D(5e-4) - D(1e-3)) / 3.0);
    };
    const double lhs = s.pair(dpsi(X), dpsi(Y));
    const double r2 = u.squaredNorm();
    const double f = std::pow((1.0 + r2) / (1.0 - r2), 2);
    const double rhs = 4.0 * X.first.dot(Y.first) / std::pow(1.0 - r2, 2) - f * X.second.dot(Y.second);
    e = std::max(e, std::abs(lhs - rhs));
  }
  b.add("max |psi*q - (g_hyp - f g_n)| at 50 pairs", "warped_pullback", e, 0.0, CheckKind::Upper);
}

inline void horofunctions(CriterionBuilder& b) {
  const BarbotSurface S = standard_barbot(b.cfg().n);
  const Immersion F = barbot_immersion(S, true);
  const auto& z = S.basis.z;
  Rng rng(b.cfg().seed + 5);
  const std::vector<VectorE> targets{z[0], VectorE(z[0] + z[1]), VectorE(z[1] + 0.3 * z[2])};
  double eg = 0.0, eh = 0.0;
  for (const auto& t : targets) {
    const HorofunctionHandle h = make_horofunction(S.space, t, F);
    for (int k = 0; k < 10; ++k) {
      const double u = uniform(rng, -2, 2), v = uniform(rng, -2, 2);
      const Eigen::Vector2d g = h_gradient(S.space, h, u, v), gf = h_gradient_fd(S.space, h, u, v);
      eg = std::max(eg, (g - gf).norm() / (1.0 + g.norm()));
      const Eigen::Matrix2d H = h_hessian(S.space, h, u, v), Hf = h_hessian_fd(S.space, h, u, v);
      eh = std::max(eh, (H - Hf).cwiseAbs().maxCoeff() / (1.0 + H.cwiseAbs().maxCoeff()));
    }
  }
  b.add("gradient vs FD (relative)", "horo_gradient_fd", eg, 0.0, CheckKind::Upper);
  b.add("Hessian vs FD (relative)", "horo_hessian_fd", eh, 0.0, CheckKind::Upper);

  const HorofunctionHandle hv = make_horofunction(S.space, z[0], F);
  double ev = 0.0;
  for (int k = 0; k < 25; ++k)
    ev = std::max(ev, std::abs(h_gradient_q(S.space, hv, uniform(rng, -3, 3), uniform(rng, -3, 3)) - 2.0));
  b.add("|q(grad h_v1) - 2|", "horo_vertex_q", ev, 0.0, CheckKind::Upper);

  double qmin = std::numeric_limits<double>::infinity(), qmax = -qmin;
  for (int k = 0; k < 1000; ++k) {
    const int i = static_cast<int>(rng() % 4);
    const double t = uniform01(rng);
    const VectorE zz = (1.0 - t) * z[static_cast<std::size_t>(i)] + t * z[static_cast<std::size_t>((i + 1) % 4)];
    const double u = uniform(rng, -3, 3), v = uniform(rng, -3, 3);
    const double q = h_gradient_q(S.space, make_horofunction(S.space, zz, F), u, v);
    qmin = std::min(qmin, q);
    qmax = std::max(qmax, q);
  }
  b.add("min q(grad h) at 1000 samples (> 0)", "horo_q_upper", qmin, 0.0, CheckKind::Lower);
  b.result().checks.back().pass = qmin > 0 && b.cfg().t("horo_q_upper") > 0;
  b.add("max q(grad h) at 1000 samples", "horo_q_upper", qmax, 2.0, CheckKind::Upper);

  double crit = std::numeric_limits<double>::infinity(), beta = crit;
  for (const auto& t : {z[0], VectorE(z[0] + z[1]), VectorE(z[0] + 2.0 * z[1])}) {
    const auto rep = quasiconvexity_scan(S.space, make_horofunction(S.space, t, F), -2, 2, -2, 2, 9, 9);
    crit = std::min(crit, rep.min_critical_hessian);
    beta = std::min(beta, rep.min_beta);
  }
  b.add("min critical-direction Hessian", "horo_critical_hessian", crit, 0.0, CheckKind::Lower);
  b.add("min beta", "horo_beta", beta, -1.0, CheckKind::Lower);
}

inline void space_boundary(CriterionBuilder& b) {
  const BarbotSurface S = standard_barbot(b.cfg().n);
  const auto& s = S.space;
  const VectorE z1 = S.basis.z[0];
  const PointHH x0 = barbot_point(S, 0, 0);
  auto defect = [&](double t) {
    const PointHH xt = barbot_point(S, std::sqrt(2.0) * t, 0.0);  // unit-speed regular ray toward z1
    double sup = 0.0;
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) {
        const PointHH y = barbot_point(S, -2.0 + 0.5 * i, -2.0 + 0.5 * j);
        const double lhs = spacelike_distance(s, xt, y) - spacelike_distance(s, xt, x0);
        const double rhs = std::log(std::abs(s.pair(z1, y.v))) - std::log(std::abs(s.pair(z1, x0.v)));
        sup = std::max(sup, std::abs(lhs - rhs));
      }
    return sup;
  };
  b.result().extras["defect_t5"] = defect(5.0);
  b.result().extras["defect_t10"] = defect(10.0);
  b.add("sup |renormalized distance - horofunction| at t = 20", "space_boundary", defect(20.0), 0.0, CheckKind::Upper);
}

inline void crown_machinery(CriterionBuilder& b) {
  const QuadraticSpace s(b.cfg().n);
  const VectorE w3 = -2.0 * s.e(3);
  const HyperbolicBasis hb = make_hyperbolic_basis(s, s.e(1), s.e(2), w3, s.e(4));
  const double pr = std::max(hyperbolic_basis_residual(s, hb), hyperbolic_basis_residual(s, standard_hyperbolic_basis(s)));
  b.add("hyperbolic-basis pairing residual", "basis_pairing", pr, 0.0, CheckKind::Upper);

  Rng rng(b.cfg().seed + 7);
  int violations = 0;
  double cres = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const GroupElement g = trial == 0 ? identity_element(s) : random_isometry(s, rng);
    const HyperbolicBasis zb = apply(g, standard_hyperbolic_basis(s));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int a = 0; a < 10; ++a)
          for (int c = 0; c < 10; ++c) {
            const double t = a / 9.0, r = c / 9.0;
            const VectorE x = (1 - t) * zb[i] + t * zb[(i + 1) % 4];
            const VectorE y = (1 - r) * zb[j] + r * zb[(j + 1) % 4];
            if (s.pair(x, y) > 1e-12 * x.norm() * y.norm()) ++violations;
          }
    const auto crown = crown_from_basis(s, zb);
    if (!validate_semi_positive(s, sample_polygon(crown.polygon, 8)).ok) ++violations;

    VectorE w = VectorE::Zero(s.n() - 1);
    for (int k = 0; k < w.size(); ++k) w[k] = trial == 0 ? 0.0 : normal(rng);
    const VectorE v4 = complete_crown(s, {zb[0]}, {zb[1]}, {zb[2]}, w).v;
    const double sc = v4.norm();
    cres = std::max({cres, std::abs(s.q(v4)) / (sc * sc), std::abs(s.pair(v4, zb[0])) / (sc * zb[0].norm()),
                     std::abs(s.pair(v4, zb[2])) / (sc * zb[2].norm())});
    if (!(s.pair(v4, zb[1]) < 0)) ++violations;
  }
  b.add("crown pairing and semi-positivity violations", "crown_semi_positive", violations, 0.0, CheckKind::Count);
  b.add("complete_crown residual", "complete_crown", cres, 0.0, CheckKind::Upper);
}

inline void renormalization(CriterionBuilder& b) {
  const PolygonFixture f = load_fixture(b.cfg().fixture);
  const QuadraticSpace s(f.n, f.kind);
  const PolygonReport pr = validate_polygon(s, f.polygon);
  if (!pr.ok) throw Error(ErrorCode::Precondition, "fixture polygon is invalid: " + pr.reason);
  const BarbotCrown crown = osculating_crown(s, f.polygon);
  const auto d = renormalization_experiment(s, sample_polygon(f.polygon, f.samples_per_edge),
                                            sample_polygon(crown.polygon, f.samples_per_edge), crown.basis,
                                            geometric_schedule(0.5, 12));
  int ups = 0;
  for (std::size_t k = 3; k + 1 < d.size(); ++k)
    if (d[k + 1] >= d[k]) ++ups;
  for (std::size_t k = 0; k < d.size(); ++k) b.result().extras["d_" + std::to_string(k)] = d[k];
  b.add("distance to osculating crown at k = 12", "renorm_final", d.back(), 0.0, CheckKind::Upper);
  b.add("non-decreasing steps after k = 3", "renorm_monotone", ups, 0.0, CheckKind::Count);
}

inline void cone_exact(CriterionBuilder& b) {
  double ep = 0.0, er = 0.0, ed = 0.0;
  for (int N : {0, 1, 2, 3, 4, 6}) {
    ep = std::max(ep, std::abs(monomial_circle_perimeter_quadrature(N, 0.7) - monomial_circle_perimeter(N, 0.7)));
    er = std::max(er, std::abs(monomial_ray_length_quadrature(N, 0.4, 2.0) - 2.0));
    ed = std::max(ed, std::abs(total_curvature(PolynomialQuartic::monomial(N)) + pi / 2 * N));
  }
  ed = std::max(ed, std::abs(total_curvature(PolynomialQuartic({0.1, 0.3, 1.0})) + pi));
  b.add("perimeter quadrature vs (pi/2)(N+4)r", "cone_perimeter_quadrature", ep, 0.0, CheckKind::Upper);
  b.add("ray arclength quadrature vs t", "cone_ray_length", er, 0.0, CheckKind::Upper);
  b.add("total deficit vs -(pi/2)N", "cone_deficit", ed, 0.0, CheckKind::Upper);
}

inline void cone_grid(CriterionBuilder& b) {
  const int res = b.cfg().resolution;
  double worst = 0.0;
  for (int N : {2, 4}) {
    const MetricGrid g(PolynomialQuartic::monomial(N), 0.0, 1.0, res);
    const std::vector<std::pair<cplx, cplx>> pairs = N == 2
        ? std::vector<std::pair<cplx, cplx>>{{std::polar(0.5, 0.3), std::polar(0.6, 0.8)},
                                             {std::polar(0.5, 0.3), std::polar(0.6, 2.3)},
                                             {std::polar(0.5, 0.3), std::polar(0.6, 0.3 + pi)},
                                             {{0.4, 0.1}, {0.1, 0.6}}}
        : std::vector<std::pair<cplx, cplx>>{{std::polar(0.5, 0.2), std::polar(0.7, 0.2 + pi)}};
    for (const auto& [a, c] : pairs) {
      const double gd = grid_distance(g, a, c);
      const double md = monomial_distance(N, monomial_point_from_plane(N, a), monomial_point_from_plane(N, c));
      worst = std::max(worst, std::abs(gd / md - 1.0));
    }
  }
  b.add("max relative |grid - monomial| distance", "grid_distance_rel", worst, 0.0, CheckKind::Upper);

  // node-aligned pairs whose geodesic avoids the cone point
  int nonmono = 0;
  for (const auto& [a, c] : std::vector<std::pair<cplx, cplx>>{{{0.5, 0.2}, {-0.3, 0.4}}, {{0.4, 0.1}, {0.1, 0.6}}}) {
    double prev = std::numeric_limits<double>::infinity();
    for (int r : {201, 401, 801}) {
      const double d = grid_distance(MetricGrid(PolynomialQuartic::monomial(2), 0.0, 1.0, r), a, c);
      if (d > prev + 1e-12) ++nonmono;
      prev = d;
    }
  }
  b.add("refinement increases (201, 401, 801)", "grid_refinement", nonmono, 0.0, CheckKind::Count);

  const PolynomialQuartic p({0.1, 0.3, 1.0});
  const double R = quasi_isometry_bound(p, 0.1).R;
  // g4-radius beyond which metric balls contain {|z| <= R}
  const double r0 = 2.0 / 3.0 * std::pow(R, 1.5) * 1.1;
  const MetricGrid g(p, 0.0, 13.0, res);
  const std::vector<double> radii{r0, 10.0, 15.0, 20.0};
  const auto pr = perimeter_growth(g, 0.0, radii);
  double e = 0.0;
  for (std::size_t i = 0; i < pr.size(); ++i) {
    e = std::max(e, std::abs(pr[i] / (3.0 * pi) - 1.0));
    b.result().extras["poly_P_over_r_" + std::to_string(static_cast<int>(radii[i]))] = pr[i];
  }
  b.result().extras["quasi_isometry_R"] = R;
  b.add("max relative |P(r)/r - 3 pi| for r >= R(0.1)", "poly_perimeter_rel", e, 0.0, CheckKind::Upper);
}

inline void tits(CriterionBuilder& b) {
  double id = 0.0;
  for (int N : {0, 1, 2, 3, 4, 6}) id = std::max(id, monomial_tits_sample(N, 12).max_identity_residual());
  id = std::max(id, barbot_tits_sample(12).max_identity_residual());
  id = std::max(id, barbot_tits_sample(8, 0.7, -1.3).max_identity_residual());
  {
    const ConeModel c = monomial_cone(2);
    TitsSample ts;
    for (double p1 : {-2.5, -1.0, 0.2, 1.7})
      for (double p2 : {-2.0, 0.4, 2.8}) ts.pairs.push_back(tits_pair(cone_direction(c, 1.0, 0.3, p1), cone_direction(c, 1.0, 0.3, p2)));
    id = std::max(id, ts.max_identity_residual());
  }
  b.add("max |l - 2 sin(angle/2)|", "tits_identity", id, 0.0, CheckKind::Upper);

  const BarbotSurface S = standard_barbot();
  const auto rd = regular_directions(S, 0, 0);
  double td = 0.0;
  for (int i = 0; i < 4; ++i) {
    const auto a = barbot_direction(0, 0, rd[static_cast<std::size_t>(i)]);
    const auto c = barbot_direction(0, 0, rd[static_cast<std::size_t>((i + 1) % 4)]);
    td = std::max({td, std::abs(tits_distance(a, c) - pi / 2), std::abs(angle_distance_along_ray(a, c).value - pi / 2)});
  }
  b.add("Barbot adjacent regular points |Td - pi/2|", "barbot_tits", td, 0.0, CheckKind::Upper);

  double ta = 0.0, tg = 0.0;
  for (int N : {0, 1, 2, 3, 4, 6}) {
    const double target = (N + 4) * pi / 2;
    ta = std::max(ta, std::abs(tits_perimeter(monomial_cone(N).Theta) - target));
    const MetricGrid g(PolynomialQuartic::monomial(N), 0.0, 1.0, b.cfg().resolution);
    const double k = (N + 4) / 4.0;
    const double r = std::pow(0.9, k) / k;
    const double pg = perimeter_growth(g, 0.0, {r}).back();
    tg = std::max(tg, std::abs(pg / target - 1.0));
    b.result().extras["tits_perimeter_grid_N" + std::to_string(N)] = pg;
  }
  b.add("analytic monomial Tits perimeter", "tits_perimeter_analytic", ta, 0.0, CheckKind::Upper);
  b.add("grid monomial Tits perimeter (relative)", "tits_perimeter_grid_rel", tg, 0.0, CheckKind::Upper);

  const auto o1 = ohtsuka_check(2, 7 * pi / 8, -7 * pi / 8, 1.0, 0.0);
  const auto o2 = ohtsuka_check(2, pi / 4, 3 * pi / 4, 1.0, 0.0);
  const auto o3 = ohtsuka_check(6, 1.0, 5.5, 2.0, 3.0);
  b.add("Ohtsuka residual", "ohtsuka", std::max({o1.residual, o2.residual, o3.residual}), 0.0, CheckKind::Upper);
  b.add("flat triangle angle excess", "gauss_bonnet_triangle",
        std::abs(triangle_angle_excess(monomial_cone(2), {1.0, 0.1}, {1.5, 0.9}, {0.7, 1.6})), 0.0, CheckKind::Upper);

  double ex = perimeter_vs_curvature_barbot().residual;
  for (int N : {0, 1, 2, 3, 4, 6}) ex = std::max(ex, perimeter_vs_curvature_monomial(N).residual);
  b.add("int K = 2 pi - P (exact models)", "curvature_identity_exact", ex, 0.0, CheckKind::Upper);
  const PolynomialQuartic p({0.1, 0.3, 1.0});
  const auto gi = perimeter_vs_curvature_grid(MetricGrid(p, 0.0, 13.0, b.cfg().resolution), p, {20.0});
  b.result().extras["poly_identity_perimeter"] = gi.perimeter;
  b.add("int K = 2 pi - P (grid, relative to 2 pi)", "curvature_identity_grid_rel", gi.residual / (2 * pi), 0.0,
        CheckKind::Upper);
}

inline void bookkeeping(CriterionBuilder& b) {
  const QuadraticSpace s(std::max(2, b.cfg().n));
  double worst = 0.0;
  for (int N : {0, 1, 2, 4}) {
    const LightlikePolygon p = build_polygon(s, N + 4, b.cfg().seed);
    const PolygonReport rep = validate_polygon(s, p);
    const MainTheoremBook bk = main_theorem_bookkeeping(N, rep.ok ? static_cast<int>(p.size()) : -1);
    worst = std::max(worst, bk.residual);
  }
  b.add("perimeter / curvature / vertex-count consistency", "bookkeeping", worst, 0.0, CheckKind::Upper);
}

}  // namespace criteria

struct CriterionSpec {
  int id;
  const char* title;
  double budget_seconds;
  void (*run)(CriterionBuilder&);
};

inline const std::vector<CriterionSpec>& criterion_table() {
  static const std::vector<CriterionSpec> t{
      {1, "Barbot maximality and flatness", 1.0, criteria::barbot_flat},
      {2, "second fundamental form", 1.0, criteria::second_form},
      {3, "spacelike distance closed form", 1.0, criteria::spacelike_closed_form},
      {4, "warped-product pullback", 2.0, criteria::warped_pullback},
      {5, "horofunction calculus", 5.0, criteria::horofunctions},
      {6, "space-boundary limit", 2.0, criteria::space_boundary},
      {7, "crown machinery", 1.0, criteria::crown_machinery},
      {8, "renormalization to the osculating crown", 5.0, criteria::renormalization},
      {9, "cone exact values", 2.0, criteria::cone_exact},
      {10, "cone grid values", 60.0, criteria::cone_grid},
      {11, "Tits identities", 30.0, criteria::tits},
      {12, "main-theorem bookkeeping", 5.0, criteria::bookkeeping},
  };
  return t;
}

inline CriterionResult run_criterion(const CriterionSpec& spec, const Config& cfg) {
  CriterionResult r;
  r.id = spec.id;
  r.title = spec.title;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    CriterionBuilder b(cfg, r);
    spec.run(b);
    r.pass = !r.checks.empty();
    for (const auto& c : r.checks) r.pass = r.pass && c.pass;
  } catch (const std::exception& e) {
    r.error = e.what();
    r.pass = false;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

struct VerifyReport {
  std::vector<CriterionResult> criteria;
  bool pass = false;
  nlohmann::json json;
};

inline nlohmann::json summary_json(const Config& cfg, const std::vector<CriterionResult>& rs) {
  nlohmann::json j;
  j["seed"] = cfg.seed;
  j["n"] = cfg.n;
  j["resolution"] = cfg.resolution;
  j["tolerances"] = cfg.tol;
  bool all = true;
  auto& arr = j["criteria"] = nlohmann::json::array();
  for (const auto& r : rs) {
    nlohmann::json c;
    c["id"] = r.id;
    c["title"] = r.title;
    c["pass"] = r.pass;
    if (!r.error.empty()) c["error"] = r.error;
    c["checks"] = nlohmann::json::array();
    for (const auto& k : r.checks)
      c["checks"].push_back({{"name", k.name},
                             {"tolerance_key", k.tolerance_key},
                             {"measured", k.measured},
                             {"target", k.target},
                             {"tolerance", k.tolerance},
                             {"kind", to_string(k.kind)},
                             {"pass", k.pass}});
    c["values"] = r.extras;
    arr.push_back(c);
    all = all && r.pass;
    if (r.id == 11 && r.extras.count("tits_perimeter_grid_N2")) {
      const double target = 3.0 * std::numbers::pi;
      const double m = r.extras.at("tits_perimeter_grid_N2");
      const double tol = cfg.t("tits_perimeter_grid_rel");
      j["tits_perimeter_N2"] = {{"measured", m}, {"target", target}, {"tolerance_rel", tol},
                                {"pass", tol > 0 && std::abs(m / target - 1.0) <= tol}};
    }
  }
  j["failing"] = nlohmann::json::array();
  for (const auto& r : rs)
    if (!r.pass) j["failing"].push_back(r.id);
  j["pass"] = all;
  return j;
}

inline VerifyReport run_verify(const Config& cfg) {
  VerifyReport rep;
  for (const auto& spec : criterion_table()) rep.criteria.push_back(run_criterion(spec, cfg));
  rep.json = summary_json(cfg, rep.criteria);
  rep.pass = rep.json["pass"].get<bool>();
  return rep;
}

}  // namespace pseudohyp
