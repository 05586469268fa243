#include <gtest/gtest.h>

#include "pseudohyp/barbot.hpp"
#include "pseudohyp/einstein.hpp"
#include "pseudohyp/pseudo_hyperbolic.hpp"
#include "pseudohyp/rng.hpp"

using namespace pseudohyp;

namespace {

VectorE random_unit(Rng& rng, int n) {
  VectorE v(n);
  for (int i = 0; i < n; ++i) v[i] = normal(rng);
  return v / v.norm();
}

Eigen::Vector2d random_disc(Rng& rng, double r) {
  Eigen::Vector2d u;
  do u = Eigen::Vector2d(uniform(rng, -r, r), uniform(rng, -r, r));
  while (u.norm() >= r);
  return u;
}

// A point x on a moved Barbot surface and a unit tangent U at x.
std::pair<PointHH, TangentVector> random_point_and_direction(const QuadraticSpace& s, Rng& rng) {
  const BarbotSurface S{s, standard_hyperbolic_basis(s)};
  const GroupElement g = random_isometry(s, rng, 0.2);
  const double u = uniform(rng, -1, 1), v = uniform(rng, -1, 1), th = uniform(rng, 0, 6.3);
  const BarbotFrame f = barbot_frame(S, u, v);
  const PointHH x{g * barbot_vector(S, u, v)};
  return {x, make_tangent(s, x, g * VectorE(std::sqrt(2.0) * (std::cos(th) * f.du + std::sin(th) * f.dv)))};
}

}  // namespace

TEST(Quadric, PointValidation) {
  const QuadraticSpace s(2);
  VectorE x = s.zero();
  x[4] = 1.0;
  EXPECT_NO_THROW(make_point(s, x));
  EXPECT_THROW(make_point(s, VectorE(2.0 * x)), Error);
  EXPECT_NEAR(s.q(normalize_to_quadric(s, VectorE(3.0 * x)).v), -1.0, 1e-15);
}

TEST(Warped, SplittingIsOrthonormal) {
  for (auto kind : {BasisKind::Hyperbolic, BasisKind::Orthonormal}) {
    const QuadraticSpace s(3, kind);
    EXPECT_LE(splitting_residual(s, standard_splitting(s)), 1e-15);
  }
}

TEST(Warped, EmbedAtOriginIsFibre) {
  const QuadraticSpace s(2);
  const WarpedSplitting w = standard_splitting(s);
  const VectorE v = VectorE::Unit(3, 2);
  EXPECT_LT((warped_embed(s, w, Eigen::Vector2d::Zero(), v).v - w.Q * v).norm(), 1e-15);
  EXPECT_THROW(warped_embed(s, w, Eigen::Vector2d(1.0, 0.0), v), Error);
  EXPECT_THROW(warped_embed(s, w, Eigen::Vector2d(0.1, 0.0), VectorE(2.0 * v)), Error);
}

TEST(Property, WarpedEmbedLiesOnQuadricAndRoundTrips) {
  Rng rng(5);
  for (int n : {1, 2, 5}) {
    const QuadraticSpace s(n);
    const WarpedSplitting w = standard_splitting(s);
    for (int k = 0; k < 100; ++k) {
      const Eigen::Vector2d u = random_disc(rng, 0.95);
      const VectorE v = random_unit(rng, n + 1);
      const PointHH p = warped_embed(s, w, u, v);
      EXPECT_NEAR(s.q(p.v), -1.0, 1e-12 * std::max(1.0, p.v.squaredNorm()));
      EXPECT_LT((warped_project(s, w, p) - u).norm(), 1e-10);
      EXPECT_LT((warped_coords(s, w, p).vq - v).norm(), 1e-10);
    }
  }
}

TEST(Warped, BarbotGraphIsTwoLipschitz) {
  const BarbotSurface S = standard_barbot(2);
  const QuadraticSpace& s = S.space;
  const WarpedSplitting w = standard_splitting(s);
  std::vector<WarpedCoords> pts;
  for (int i = 0; i < 15; ++i)
    for (int j = 0; j < 15; ++j) pts.push_back(warped_coords(s, w, barbot_point(S, -4.0 + 8.0 * i / 14, -4.0 + 8.0 * j / 14)));
  double lip = 0.0;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      const double du = (pts[a].u - pts[b].u).norm();
      ASSERT_GT(du, 1e-9) << "projection is not injective";
      const double dv = std::acos(std::clamp(pts[a].vq.dot(pts[b].vq), -1.0, 1.0));
      lip = std::max(lip, dv / du);
    }
  EXPECT_LE(lip, 2.0 + 1e-3);
}

TEST(Geodesics, Classification) {
  const BarbotSurface S = standard_barbot(2);
  const QuadraticSpace& s = S.space;
  const PointHH x = barbot_point(S, 0, 0);
  EXPECT_EQ(classify_geodesic(s, x, barbot_point(S, 1, 1)), GeodesicKind::Spacelike);
  EXPECT_EQ(classify_geodesic(s, x, x), GeodesicKind::Equal);
  const VectorE n = barbot_frame(S, 0, 0).n;
  const PointHH y{std::cos(0.7) * x.v + std::sin(0.7) * n};
  EXPECT_EQ(classify_geodesic(s, x, y), GeodesicKind::Timelike);
  EXPECT_NEAR(timelike_separation(s, x, y), 0.7, 1e-12);
  // lightlike: x + isotropic direction tangent at x
  const VectorE l = barbot_frame(S, 0, 0).du * std::sqrt(2.0) + n;
  EXPECT_EQ(classify_geodesic(s, x, PointHH{x.v + l}), GeodesicKind::Lightlike);
  EXPECT_THROW(spacelike_distance(s, x, y), Error);
}

TEST(Geodesics, SpacelikeDistanceExamples) {
  const BarbotSurface S = standard_barbot(2);
  const QuadraticSpace& s = S.space;
  const PointHH x = barbot_point(S, 0, 0);
  EXPECT_NEAR(spacelike_distance(s, barbot_point(S, 1, 1), x), 1.0, 1e-12);
  EXPECT_EQ(spacelike_distance(s, x, x), 0.0);
  // geodesic through x along U
  const BarbotFrame f = barbot_frame(S, 0, 0);
  const TangentVector U = make_tangent(s, x, VectorE(f.du + f.dv));
  EXPECT_NEAR(s.q(U.dir), 1.0, 1e-15);
  for (double t : {0.5, 1.0, 2.0}) {
    const PointHH c = geodesic_point(s, x, U, t);
    EXPECT_NEAR(spacelike_distance(s, x, c), t, 1e-10);
    EXPECT_LT((c.v - barbot_vector(S, t, t)).norm(), 1e-10 * c.v.norm());
  }
  EXPECT_LT((geodesic_point(s, x, U, 0.0).v - x.v).norm(), 1e-15);
  EXPECT_THROW(geodesic_point(s, x, make_tangent(s, x, f.n), 1.0), Error);
}

TEST(Property, GeodesicPointsStayOnQuadric) {
  Rng rng(31);
  const QuadraticSpace s(2);
  for (int k = 0; k < 100; ++k) {
    const auto [x, U] = random_point_and_direction(s, rng);
    const double t = uniform(rng, -3, 3);
    const PointHH c = geodesic_point(s, x, U, t);
    EXPECT_NEAR(s.q(c.v), -1.0, 1e-10 * std::max(1.0, c.v.squaredNorm()));
    EXPECT_NEAR(spacelike_distance(s, x, c), std::abs(t), 1e-8 * (1 + std::abs(t)));
  }
}

TEST(Property, DistanceAndClassificationAreInvariant) {
  Rng rng(41);
  const QuadraticSpace s(2);
  const BarbotSurface S = standard_barbot(2);
  for (int k = 0; k < 60; ++k) {
    const GroupElement g = random_isometry(s, rng, 0.3);
    const PointHH x = barbot_point(S, uniform(rng, -2, 2), uniform(rng, -2, 2));
    const PointHH y = barbot_point(S, uniform(rng, -2, 2), uniform(rng, -2, 2));
    const PointHH gx{g * x.v}, gy{g * y.v};
    EXPECT_NEAR(spacelike_distance(s, gx, gy), spacelike_distance(s, x, y), 1e-10);
    EXPECT_EQ(classify_geodesic(s, gx, gy), classify_geodesic(s, x, y));
    EXPECT_EQ(classify_geodesic(s, y, x), classify_geodesic(s, x, y));
  }
}

TEST(RadialProjection, SameSurfaceIsIdentity) {
  const BarbotSurface S = standard_barbot(2);
  const QuadraticSpace& s = S.space;
  const PointHH x = barbot_point(S, 0.4, -0.3);
  const BarbotFrame f = barbot_frame(S, 0.4, -0.3);
  const std::array<TangentVector, 2> frame{TangentVector{x.v, f.du}, TangentVector{x.v, f.dv}};
  const SurfaceMap target = [&](const Eigen::Vector2d& p) { return barbot_vector(S, p.x(), p.y()); };
  const auto r = timelike_sphere_intersect(s, x, frame, target, Eigen::Vector2d(0.1, 0.1));
  EXPECT_LE(r.residual, 1e-8);
  EXPECT_LT((r.params - Eigen::Vector2d(0.4, -0.3)).norm(), 1e-6);
  EXPECT_LT(r.timelike_separation, 1e-6);
}

TEST(RadialProjection, CrownPreservingIsometry) {
  const BarbotSurface S = standard_barbot(2);
  const QuadraticSpace& s = S.space;
  const CartanElement a = cartan_element(s, S.basis, 2.0, 0.5);
  const PointHH x = barbot_point(S, 0, 0);
  const BarbotFrame f = barbot_frame(S, 0, 0);
  const std::array<TangentVector, 2> frame{TangentVector{x.v, f.du}, TangentVector{x.v, f.dv}};
  const SurfaceMap target = [&](const Eigen::Vector2d& p) { return VectorE(a * barbot_vector(S, p.x(), p.y())); };
  const auto r = timelike_sphere_intersect(s, x, frame, target, Eigen::Vector2d::Zero());
  EXPECT_LE(r.residual, 1e-8);
  EXPECT_NEAR(s.q(r.point.v), -1.0, 1e-10);
  EXPECT_LT((r.params - Eigen::Vector2d(-std::log(2.0), std::log(2.0))).norm(), 1e-6);
}

TEST(RadialProjection, GraphFormMatchesParametrizedForm) {
  const BarbotSurface S = standard_barbot(2);
  const QuadraticSpace& s = S.space;
  const WarpedSplitting w = standard_splitting(s);
  // the Barbot surface as a graph over the disc, by inverting the projection numerically
  auto graph = [&](const Eigen::Vector2d& u) -> VectorE {
    Eigen::Vector2d p = Eigen::Vector2d::Zero();
    for (int it = 0; it < 60; ++it) {
      const Eigen::Vector2d r = warped_project(s, w, barbot_point(S, p.x(), p.y())) - u;
      if (r.norm() < 1e-14) break;
      Eigen::Matrix2d J;
      for (int k = 0; k < 2; ++k) {
        Eigen::Vector2d d = Eigen::Vector2d::Zero();
        d[k] = 1e-6;
        J.col(k) = (warped_project(s, w, barbot_point(S, p.x() + d.x(), p.y() + d.y())) -
                    warped_project(s, w, barbot_point(S, p.x() - d.x(), p.y() - d.y()))) / 2e-6;
      }
      p -= J.lu().solve(r);
    }
    return warped_coords(s, w, barbot_point(S, p.x(), p.y())).vq;
  };
  const PointHH x = barbot_point(S, 0.5, 0.2);
  const BarbotFrame f = barbot_frame(S, 0.5, 0.2);
  const std::array<TangentVector, 2> frame{TangentVector{x.v, f.du}, TangentVector{x.v, f.dv}};
  const auto r = timelike_sphere_intersect_graph(s, x, frame, w, graph);
  EXPECT_LE(r.residual, 1e-8);
  EXPECT_LT(r.timelike_separation, 1e-6);
}

TEST(RadialProjection, SeparationShrinksTowardSharedEdge) {
  const BarbotSurface S = standard_barbot(2);
  const QuadraticSpace& s = S.space;
  const auto& z = S.basis.z;
  VectorE w(1);
  w << 0.8;
  const VectorE v4 = complete_crown(s, {z[0]}, {z[1]}, {z[2]}, w).v;
  const BarbotSurface S2{s, make_hyperbolic_basis(s, z[0], z[1], z[2], v4)};
  ASSERT_GT(chordal(v4, z[3]), 1e-3);
  std::vector<double> sep;
  for (int k = 1; k <= 6; ++k) {
    const PointHH x = barbot_point(S, k, k);
    const BarbotFrame f = barbot_frame(S, k, k);
    const std::array<TangentVector, 2> frame{TangentVector{x.v, f.du}, TangentVector{x.v, f.dv}};
    const SurfaceMap target = [&](const Eigen::Vector2d& p) { return barbot_vector(S2, p.x(), p.y()); };
    const auto r = timelike_sphere_intersect(s, x, frame, target, Eigen::Vector2d(k, k));
    EXPECT_LE(r.residual, 1e-8);
    sep.push_back(r.timelike_separation);
  }
  for (std::size_t k = 1; k < sep.size(); ++k) EXPECT_LT(sep[k], sep[k - 1]);
  EXPECT_LT(sep.back(), 1e-2 * sep.front());
}
