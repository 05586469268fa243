#include <gtest/gtest.h>

#include <numbers>

#include "pseudohyp/barbot.hpp"
#include "pseudohyp/contour.hpp"
#include "pseudohyp/surface_geom.hpp"

using namespace pseudohyp;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::pair<double, double>> grid5() {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) pts.emplace_back(-2.0 + i, -2.0 + j);
  return pts;
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Unsupported;
}

}  // namespace

TEST(BarbotPoint, Examples) {
  const BarbotSurface S = standard_barbot(2);
  const auto& z = S.basis.z;
  EXPECT_LT((barbot_vector(S, 0, 0) - (z[0] + z[1] + z[2] + z[3])).norm(), 1e-15);
  EXPECT_NEAR(S.space.q(barbot_vector(S, 3, -2)), -1.0, 1e-12);
  const auto a = cartan_element(S.space, S.basis, std::exp(0.7), std::exp(-1.1));
  for (auto [u, v] : grid5()) {
    const VectorE moved = a * barbot_vector(S, u, v);
    const VectorE shifted = barbot_vector(S, u + 0.7, v - 1.1);
    EXPECT_LT((moved - shifted).norm(), 1e-12 * shifted.norm());
  }
}

TEST(BarbotFrame, Invariants) {
  const BarbotSurface S = standard_barbot(2);
  const auto& z = S.basis.z;
  const BarbotFrame f0 = barbot_frame(S, 0, 0);
  EXPECT_LT((f0.du - (z[0] - z[2])).norm(), 1e-15);
  EXPECT_NEAR(S.space.pair(f0.du, f0.du), 0.5, 1e-15);
  for (auto [u, v] : grid5()) {
    EXPECT_NEAR(S.space.q(barbot_frame(S, u, v).n), -1.0, 1e-12);
    EXPECT_LE(barbot_frame_residual(S, u, v), 1e-12 * std::exp(2 * std::max(std::abs(u), std::abs(v))));
  }
}

TEST(Property, FrameResidualUnderIsometry) {
  Rng rng(8);
  for (int k = 0; k < 30; ++k) {
    const QuadraticSpace s(3);
    const BarbotSurface S{s, apply(random_isometry(s, rng, 0.2), standard_hyperbolic_basis(s))};
    // residuals are not normalized, so scale with the size of the moved basis
    double scale = 0;
    for (int i = 0; i < 4; ++i) scale = std::max(scale, S.basis[i].norm());
    EXPECT_LE(barbot_frame_residual(S, uniform(rng, -1, 1), uniform(rng, -1, 1)), 1e-12 * std::pow(scale, 4));
  }
}

TEST(SecondForm, ClosedForm) {
  const BarbotSurface S = standard_barbot(2);
  const Immersion F = barbot_immersion(S);
  const Eigen::Vector2d du(1, 0), dv(0, 1);
  for (auto [u, v] : grid5()) {
    const VectorE n = barbot_frame(S, u, v).n;
    EXPECT_LT((barbot_second_fundamental_form(S, u, v, du, du) - 0.5 * n).norm(), 1e-12);
    EXPECT_LT(barbot_second_fundamental_form(S, u, v, du, dv).norm(), 1e-15);
    // trace against g^{-1} = 2 Id
    const VectorE tr = 2.0 * barbot_second_fundamental_form(S, u, v, du, du) +
                       2.0 * barbot_second_fundamental_form(S, u, v, dv, dv);
    EXPECT_LT(tr.norm(), 1e-12);
    if (std::abs(u) <= 1 && std::abs(v) <= 1) {
      const FundamentalForms ff = fundamental_forms(S.space, F, u, v);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          const Eigen::Vector2d X = i ? dv : du, Y = j ? dv : du;
          EXPECT_LT((ff.II[i][j] - barbot_second_fundamental_form(S, u, v, X, Y)).norm(), 1e-6);
        }
      EXPECT_LT((ff.g - 0.5 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-8);
    }
  }
}

TEST(Directions, Classification) {
  const BarbotSurface S = standard_barbot(2);
  const auto& z = S.basis.z;
  const DirectionClass diag = classify_direction(S, 0, 0, Eigen::Vector2d(1, 1));
  EXPECT_EQ(diag.kind, DirectionKind::EdgeMidpointType);
  EXPECT_TRUE(projectively_equal(diag.limit_vector, z[0] + z[1]));
  const DirectionClass c = classify_direction(S, 0, 0, Eigen::Vector2d(1, 0.3));
  EXPECT_EQ(c.kind, DirectionKind::Vertex);
  EXPECT_EQ(c.index, 1);
  EXPECT_DOUBLE_EQ(c.growth_exponent, 1.0);
  EXPECT_EQ(classify_direction(S, 0, 0, Eigen::Vector2d(-0.2, -1)).index, 4);
  EXPECT_EQ(classify_direction(S, 0, 0, Eigen::Vector2d(-1, 1)).index, 2);
  EXPECT_EQ(classify_direction(S, 0, 0, Eigen::Vector2d(-1, 1)).kind, DirectionKind::EdgeMidpointType);
  EXPECT_THROW(classify_direction(S, 0, 0, Eigen::Vector2d::Zero()), Error);
}

TEST(Property, RayConvergesToItsLimit) {
  Rng rng(19);
  const BarbotSurface S = standard_barbot(2);
  for (int k = 0; k < 50; ++k) {
    const double th = uniform(rng, 0, 2 * kPi), u0 = uniform(rng, -1, 1), v0 = uniform(rng, -1, 1);
    const Eigen::Vector2d X = std::sqrt(2.0) * Eigen::Vector2d(std::cos(th), std::sin(th));
    const DirectionClass c = classify_direction(S, u0, v0, X);
    const double t = 30.0;
    const VectorE r = std::exp(-c.growth_exponent * t) * barbot_ray(S, u0, v0, X, t);
    // slowest decaying neglected term: the other coordinate, or the opposite vertices
    const double gap = c.growth_exponent - std::min(std::abs(X[0]), std::abs(X[1]));
    if (gap * t > 14.0) EXPECT_LT((r - c.limit_vector).norm(), 1e-6) << th;
  }
  for (const auto& X : {Eigen::Vector2d(1, 1), Eigen::Vector2d(-1, 1), Eigen::Vector2d(-1, -1), Eigen::Vector2d(1, -1)}) {
    const DirectionClass c = classify_direction(S, 0.3, -0.2, X);
    const VectorE r = std::exp(-c.growth_exponent * 30.0) * barbot_ray(S, 0.3, -0.2, X, 30.0);
    EXPECT_LT((r - c.limit_vector).norm(), 1e-6);
  }
}

TEST(Directions, RegularDirections) {
  const BarbotSurface S = standard_barbot(2);
  const auto d = regular_directions(S, 0, 0);
  for (int i = 0; i < 4; ++i) {
    EXPECT_DOUBLE_EQ(barbot_angle(d[i], d[(i + 1) % 4]), kPi / 2);
    EXPECT_NEAR(barbot_angle(d[i], Eigen::Vector2d(1, 1)), (i == 0 || i == 1) ? kPi / 4 : 3 * kPi / 4, 1e-15);
    EXPECT_NEAR(0.5 * d[i].squaredNorm(), 1.0, 1e-15);
    const DirectionClass c = classify_direction(S, 0, 0, d[i]);
    EXPECT_EQ(c.kind, DirectionKind::Vertex);
    EXPECT_EQ(c.index, i + 1);
  }
  const HoroTarget v1{DirectionKind::Vertex, 1};
  double prev = barbot_horofunction(S, v1, 0, 0);
  for (double t = 1; t <= 40; t += 1) {
    const double h = barbot_horofunction(S, v1, std::sqrt(2.0) * t, 0);
    EXPECT_LT(h, prev);
    prev = h;
  }
  EXPECT_LT(prev, -50);
}

TEST(Horofunction, ClosedForms) {
  const BarbotSurface S = standard_barbot(2);
  EXPECT_EQ(barbot_horofunction(S, {DirectionKind::Vertex, 1}, 2, 5), -2.0);
  for (double t : {-3.0, 0.0, 0.5, 7.0})
    EXPECT_NEAR(barbot_horofunction(S, {DirectionKind::EdgeMidpointType, 1}, t, t), std::log(2.0) - t, 1e-14);
  EXPECT_THROW(barbot_horofunction(S, {DirectionKind::Vertex, 5}, 0, 0), Error);
}

TEST(Property, HorofunctionDifferencesMatchPairing) {
  Rng rng(23);
  const BarbotSurface S = standard_barbot(2);
  for (auto kind : {DirectionKind::Vertex, DirectionKind::EdgeMidpointType})
    for (int i = 1; i <= 4; ++i) {
      const HoroTarget t{kind, i};
      const VectorE z = horo_target_vector(S, t);
      for (int k = 0; k < 20; ++k) {
        const double u1 = uniform(rng, -3, 3), v1 = uniform(rng, -3, 3), u2 = uniform(rng, -3, 3), v2 = uniform(rng, -3, 3);
        const double lhs = barbot_horofunction(S, t, u1, v1) - barbot_horofunction(S, t, u2, v2);
        const double rhs = std::log(std::abs(S.space.pair(z, barbot_vector(S, u1, v1)))) -
                           std::log(std::abs(S.space.pair(z, barbot_vector(S, u2, v2))));
        EXPECT_NEAR(lhs, rhs, 1e-12);
      }
    }
}

TEST(Property, CartanActionIsTranslation) {
  Rng rng(29);
  const BarbotSurface S = standard_barbot(2);
  for (int k = 0; k < 20; ++k) {
    const double a = uniform(rng, -1, 1), b = uniform(rng, -1, 1), u = uniform(rng, -1, 1), v = uniform(rng, -1, 1);
    const auto g = cartan_element(S.space, S.basis, std::exp(a), std::exp(b));
    const BarbotFrame f = barbot_frame(S, u, v), gf = barbot_frame(S, u + a, v + b);
    EXPECT_LT((g * f.du - gf.du).norm(), 1e-12);
    EXPECT_LT((g * f.n - gf.n).norm(), 1e-12);
    const Eigen::Vector2d X(uniform(rng, -1, 1), uniform(rng, -1, 1));
    EXPECT_EQ(classify_direction(S, u, v, X).index, classify_direction(S, u + a, v + b, X).index);
    const HoroTarget t{DirectionKind::Vertex, 1 + k % 4};
    // translation changes a horofunction by a constant
    EXPECT_NEAR(barbot_horofunction(S, t, u + a, v + b) - barbot_horofunction(S, t, a, b),
                barbot_horofunction(S, t, u, v) - barbot_horofunction(S, t, 0, 0), 1e-12);
  }
}

TEST(Horoball, VertexSublevelIsHalfPlane) {
  const BarbotSurface S = standard_barbot(2);
  const HoroTarget v1{DirectionKind::Vertex, 1};
  const double C = 0.4;
  for (auto [u, v] : grid5()) EXPECT_EQ(barbot_horofunction(S, v1, u, v) <= C, -u <= C);
  // the boundary line u = -C goes off toward z2 and z4
  EXPECT_EQ(classify_direction(S, -C, 0, Eigen::Vector2d(0, 1)).index, 2);
  EXPECT_EQ(classify_direction(S, -C, 0, Eigen::Vector2d(0, -1)).index, 4);
}

// ---- surface geometry

TEST(SurfaceGeom, BarbotIsFlatAndMaximal) {
  const BarbotSurface S = standard_barbot(2);
  for (bool analytic : {false, true}) {
    const Immersion F = barbot_immersion(S, analytic);
    for (auto [u, v] : grid5()) {
      const double su = u / 2, sv = v / 2;
      EXPECT_LE(mean_curvature(S.space, F, su, sv).norm(), 1e-6);
      EXPECT_NEAR(gauss_curvature(S.space, F, su, sv), 0.0, 1e-6);
    }
  }
}

TEST(SurfaceGeom, FlatConnectionSplitReconstructs) {
  const BarbotSurface S = standard_barbot(2);
  const Immersion F = barbot_immersion(S);
  const FundamentalForms ff = fundamental_forms(S.space, F, 0.3, -0.4);
  const Eigen::Matrix2d gi = ff.g.inverse();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const VectorE& w = ff.dd(i, j);
      const Eigen::Vector2d c = gi * Eigen::Vector2d(S.space.pair(w, ff.jet.Fu), S.space.pair(w, ff.jet.Fv));
      const VectorE rebuilt = ff.g(i, j) * ff.jet.F + c[0] * ff.jet.Fu + c[1] * ff.jet.Fv + ff.II[i][j];
      EXPECT_LT((rebuilt - w).norm(), 1e-6);
      EXPECT_LE(std::abs(S.space.pair(ff.II[i][j], ff.jet.Fu)), 1e-8);
      EXPECT_LE(std::abs(S.space.pair(ff.II[i][j], ff.jet.Fv)), 1e-8);
      EXPECT_LE(std::abs(S.space.pair(ff.II[i][j], ff.jet.F)), 1e-8);
    }
}

TEST(SurfaceGeom, HyperbolicPlane) {
  const QuadraticSpace s(2);
  const WarpedSplitting w = standard_splitting(s);
  const Immersion F = hyperbolic_plane_immersion(s, w, VectorE::Unit(3, 0));
  for (double a : {-0.4, 0.0, 0.3})
    for (double b : {-0.2, 0.1}) {
      const FundamentalForms ff = fundamental_forms(s, F, a, b);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) EXPECT_LT(ff.II[i][j].norm(), 1e-6);
      EXPECT_GT(ff.g.determinant(), 0.0);
      EXPECT_LT(mean_curvature(s, F, a, b).norm(), 1e-6);
      EXPECT_NEAR(gauss_curvature(s, F, a, b), -1.0, 1e-4);
      const auto phi = quartic_differential(s, F, a, b, {}, 1e-6);
      EXPECT_LT(std::abs(phi), 1e-6);
    }
}

TEST(SurfaceGeom, PerturbedBarbotIsNotMaximal) {
  const BarbotSurface S = standard_barbot(2);
  const VectorE e5 = S.space.e(5);
  Immersion F;
  F.eval = [&](double u, double v) {
    const VectorE x = barbot_vector(S, u, v) + 0.05 * std::exp(-(u * u + v * v)) * e5;
    return normalize_to_quadric(S.space, x).v;
  };
  EXPECT_GT(mean_curvature(S.space, F, 0, 0).norm(), 1e-3);
}

TEST(SurfaceGeom, CurvatureBoundsOnMaximalSamples) {
  const BarbotSurface S = standard_barbot(2);
  Rng rng(4);
  for (int k = 0; k < 10; ++k) {
    const QuadraticSpace& s = S.space;
    const Immersion F = transformed(barbot_immersion(S), random_isometry(s, rng, 0.2));
    const double K = gauss_curvature(s, F, uniform(rng, -1, 1), uniform(rng, -1, 1));
    EXPECT_GE(K, -1 - 1e-3);
    EXPECT_LE(K, 1e-3);
  }
}

TEST(QuarticDifferential, BarbotConstant) {
  const BarbotSurface S = standard_barbot(2);
  const Immersion F = barbot_immersion(S, true);
  double dev = 0.0;
  for (auto [u, v] : grid5()) dev = std::max(dev, std::abs(quartic_differential(S.space, F, u, v) + 0.25));
  EXPECT_LE(dev, 1e-10);
  EXPECT_NEAR(std::sqrt(std::abs(quartic_differential(S.space, F, 0, 0))), 0.5, 1e-12);
  // finite-difference Cauchy-Riemann residual on the FD immersion
  const Immersion G = barbot_immersion(S);
  auto phi = [&](double u, double v) { return quartic_differential(S.space, G, u, v, {}, 1e-6); };
  const double h = 1e-2;
  for (auto [u, v] : grid5()) {
    const double su = u / 4, sv = v / 4;
    const std::complex<double> pu = (phi(su + h, sv) - phi(su - h, sv)) / (2 * h);
    const std::complex<double> pv = (phi(su, sv + h) - phi(su, sv - h)) / (2 * h);
    EXPECT_LE(std::abs(pu + std::complex<double>(0, 1) * pv), 1e-6);
  }
}

TEST(QuarticDifferential, NonConformalChartRejected) {
  const BarbotSurface S = standard_barbot(2);
  Immersion F;
  F.eval = [&](double u, double v) { return barbot_vector(S, 2.0 * u, v); };
  EXPECT_EQ(code_of([&] { quartic_differential(S.space, F, 0, 0); }), ErrorCode::NonConformalChart);
}

TEST(Horofunctions, ValueExamples) {
  const BarbotSurface S = standard_barbot(2);
  const QuadraticSpace& s = S.space;
  const Immersion F = barbot_immersion(S);
  const auto h = make_horofunction(s, S.basis[0], F);
  for (auto [u, v] : grid5()) EXPECT_NEAR(h_value(s, h, u, v), -u + std::log(0.25), 1e-12);
  const auto hm = make_horofunction(s, VectorE(-S.basis[0]), F);
  const auto h7 = make_horofunction(s, VectorE(7.0 * S.basis[0]), F);
  EXPECT_EQ(h_value(s, hm, 0.3, 0.1), h_value(s, h, 0.3, 0.1));
  EXPECT_NEAR(h_value(s, h7, 0.3, 0.1) - h_value(s, h, 0.3, 0.1), std::log(7.0), 1e-14);
  EXPECT_THROW(make_horofunction(s, s.e(5), F), Error);
  Immersion on_cone;
  on_cone.eval = [&](double, double) { return VectorE(std::sqrt(2.0) * (S.basis[1] + S.basis[3])); };
  EXPECT_EQ(code_of([&] { h_value(s, make_horofunction(s, S.basis[0], on_cone), 0, 0); }), ErrorCode::LightconeProximity);
}

TEST(Horofunctions, GradientExamples) {
  const BarbotSurface S = standard_barbot(2);
  const QuadraticSpace& s = S.space;
  const Immersion F = barbot_immersion(S, true);
  const auto h = make_horofunction(s, S.basis[0], F);
  for (auto [u, v] : grid5()) {
    const Eigen::Vector2d g = h_gradient(s, h, u, v);
    EXPECT_LT((g - Eigen::Vector2d(-2, 0)).norm(), 1e-12);
    EXPECT_NEAR(h_gradient_q(s, h, u, v), 2.0, 1e-12);
  }
  const Immersion G = barbot_immersion(S);
  const auto hg = make_horofunction(s, VectorE(S.basis[0] + S.basis[1]), G);
  for (double u : {-0.5, 0.5})
    for (double v : {-1.0, 0.2}) {
      const Eigen::Vector2d a = h_gradient(s, hg, u, v), b = h_gradient_fd(s, hg, u, v);
      EXPECT_LE((a - b).norm(), 1e-6 * a.norm());
    }
}

TEST(Property, GradientBound) {
  // the bound needs z on the boundary of the surface, here the crown edges
  Rng rng(1000);
  const BarbotSurface S = standard_barbot(2);
  const QuadraticSpace& s = S.space;
  const Immersion F = barbot_immersion(S, true);
  double lo = 1e9, hi = -1e9;
  for (int k = 0; k < 1000; ++k) {
    const int e = k % 4;
    const double t = uniform(rng, 0, 1);
    const VectorE z = (1 - t) * S.basis[e] + t * S.basis[(e + 1) % 4];
    const double q = h_gradient_q(s, make_horofunction(s, z, F), uniform(rng, -2, 2), uniform(rng, -2, 2));
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  EXPECT_GT(lo, 0.0);
  EXPECT_LE(hi, 2.0 + 1e-9);
  // an isotropic point off the crown is not covered
  VectorE x(5);
  x << 1, 0, -1, 0, 1;
  EXPECT_GT(h_gradient_q(s, make_horofunction(s, x, F), 1.5, 1.5), 2.0);
}

TEST(Horofunctions, HessianExamples) {
  const BarbotSurface S = standard_barbot(2);
  const QuadraticSpace& s = S.space;
  const Immersion F = barbot_immersion(S, true);
  const auto h = make_horofunction(s, S.basis[0], F);
  const Eigen::Matrix2d H = h_hessian(s, h, 0.2, -0.7);
  EXPECT_NEAR(H(1, 1), 0.0, 1e-12);
  EXPECT_EQ(H(0, 1), H(1, 0));
  const Immersion G = barbot_immersion(S);
  for (const VectorE& z : {S.basis[0], VectorE(S.basis[0] + S.basis[1]), VectorE(S.basis[2] + 0.3 * S.basis[3])}) {
    const auto hz = make_horofunction(s, z, G);
    const Eigen::Matrix2d a = h_hessian(s, hz, 0.1, 0.4), b = h_hessian_fd(s, hz, 0.1, 0.4);
    EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-4);
  }
}

TEST(Horofunctions, QuasiconvexityScan) {
  const BarbotSurface S = standard_barbot(2);
  const QuadraticSpace& s = S.space;
  const Immersion F = barbot_immersion(S, true);
  const auto rv = quasiconvexity_scan(s, make_horofunction(s, S.basis[0], F), -2, 2, -2, 2, 9, 9);
  EXPECT_NEAR(rv.min_critical_hessian, 0.0, 1e-8);
  EXPECT_GE(rv.min_beta, -1 - 1e-8);
  EXPECT_EQ(rv.points, 81);
  const auto re = quasiconvexity_scan(s, make_horofunction(s, VectorE(S.basis[0] + S.basis[1]), F), -2, 2, -2, 2, 9, 9);
  EXPECT_GE(re.min_critical_hessian, -1e-8);
  EXPECT_GE(re.min_beta, -1 - 1e-8);
  EXPECT_GT(re.min_grad_q, 0.0);
  EXPECT_LE(re.max_grad_q, 2.0 + 1e-9);
  if (re.inequality_points > 0) EXPECT_LE(re.max_beta_excess, 1e-8);
}

TEST(Horofunctions, EdgeLevelSetsAreConvex) {
  const BarbotSurface S = standard_barbot(2);
  const HoroTarget e{DirectionKind::EdgeMidpointType, 1};
  GridField f;
  f.nx = f.ny = 161;
  f.x0 = f.y0 = -4;
  f.dx = f.dy = 8.0 / 160;
  for (int j = 0; j < f.ny; ++j)
    for (int i = 0; i < f.nx; ++i) f.values.push_back(barbot_horofunction(S, e, f.point(i, j).x(), f.point(i, j).y()));
  for (double C : {-1.0, 0.0, 1.5}) {
    const auto lines = chain_segments(marching_squares(f, C));
    ASSERT_FALSE(lines.empty());
    for (const auto& l : lines) EXPECT_LE(convexity_defect(l), 1e-6) << C;
  }
  const std::vector<Eigen::Vector2d> zigzag{{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}};
  EXPECT_GT(convexity_defect(zigzag), 1.0);
}

TEST(Property, GeometryIsEquivariant) {
  Rng rng(55);
  const BarbotSurface S = standard_barbot(2);
  const QuadraticSpace& s = S.space;
  const Immersion F = barbot_immersion(S, true);
  for (int k = 0; k < 10; ++k) {
    const GroupElement g = random_isometry(s, rng, 0.2);
    const Immersion gF = transformed(F, g);
    const double u = uniform(rng, -1, 1), v = uniform(rng, -1, 1);
    const VectorE z = S.basis[k % 4] + 0.5 * S.basis[(k + 1) % 4];
    const auto h = make_horofunction(s, z, F), gh = make_horofunction(s, g * z, gF);
    EXPECT_NEAR(h_value(s, h, u, v), h_value(s, gh, u, v), 1e-8);
    EXPECT_LE((h_gradient(s, h, u, v) - h_gradient(s, gh, u, v)).norm(), 1e-8);
    EXPECT_LE((h_hessian(s, h, u, v) - h_hessian(s, gh, u, v)).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LE(std::abs(quartic_differential(s, F, u, v) - quartic_differential(s, gF, u, v)), 1e-8);
  }
}

TEST(Horofunctions, SpaceBoundaryLimitAlongVertexRay) {
  const BarbotSurface S = standard_barbot(2);
  const QuadraticSpace& s = S.space;
  const HoroTarget v1{DirectionKind::Vertex, 1};
  const PointHH x0 = barbot_point(S, 0, 0);
  std::vector<double> sup;
  for (double t : {4.0, 8.0, 16.0}) {
    const PointHH xk = barbot_point(S, t, 0);
    double m = 0.0;
    for (auto [u, v] : grid5()) {
      const PointHH y = barbot_point(S, u / 2, v / 2);
      const double lhs = spacelike_distance(s, xk, y) - spacelike_distance(s, xk, x0);
      const double rhs = barbot_horofunction(S, v1, u / 2, v / 2) - barbot_horofunction(S, v1, 0, 0);
      m = std::max(m, std::abs(lhs - rhs));
    }
    sup.push_back(m);
  }
  EXPECT_LT(sup[1], sup[0]);
  EXPECT_LT(sup[2], sup[1]);
  EXPECT_LT(sup[2], 1e-5);
}
