#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "pseudohyp/linalg_pq.hpp"

namespace pseudohyp {

// A point of the quadric {q = -1}.
struct PointHH {
  VectorE v;
};

struct TangentVector {
  PointHH base;
  VectorE dir;
};

inline double quadric_tol(const VectorE& v, double tol = 1e-10) {
  return tol * std::max(1.0, v.squaredNorm());
}

inline PointHH make_point(const QuadraticSpace& s, const VectorE& v) {
  if (std::abs(s.q(v) + 1.0) > quadric_tol(v))
    throw Error(ErrorCode::Precondition, "point is not on the quadric q = -1");
  return {v};
}

inline PointHH normalize_to_quadric(const QuadraticSpace& s, const VectorE& v) {
  const double qv = s.q(v);
  if (!(qv < 0)) throw Error(ErrorCode::Precondition, "vector is not negative");
  return {v / std::sqrt(-qv)};
}

inline TangentVector make_tangent(const QuadraticSpace& s, const PointHH& x, const VectorE& dir) {
  if (std::abs(s.pair(x.v, dir)) > 1e-10 * std::max(1.0, x.v.norm() * dir.norm()))
    throw Error(ErrorCode::Precondition, "direction is not tangent to the quadric");
  return {x, dir};
}

// E = P + Q with P positive definite (2-dim), Q negative definite (n+1 dim);
// columns are q-orthonormal.
struct WarpedSplitting {
  MatrixE P;
  MatrixE Q;
};

inline WarpedSplitting standard_splitting(const QuadraticSpace& s) {
  const int d = s.dim();
  WarpedSplitting w{MatrixE::Zero(d, 2), MatrixE::Zero(d, d - 2)};
  if (s.kind() == BasisKind::Hyperbolic) {
    w.P.col(0) = s.e(1) - s.e(3);
    w.P.col(1) = s.e(2) - s.e(4);
    w.Q.col(0) = s.e(1) + s.e(3);
    w.Q.col(1) = s.e(2) + s.e(4);
    for (int i = 5; i <= d; ++i) w.Q.col(i - 3) = s.e(i);
  } else {
    w.P.col(0) = s.e(1);
    w.P.col(1) = s.e(2);
    for (int i = 3; i <= d; ++i) w.Q.col(i - 3) = s.e(i);
  }
  return w;
}

// Largest deviation of the splitting from q-orthonormality.
inline double splitting_residual(const QuadraticSpace& s, const WarpedSplitting& w) {
  MatrixE b(s.dim(), s.dim());
  b << w.P, w.Q;
  MatrixE target = MatrixE::Identity(s.dim(), s.dim());
  for (int i = 2; i < s.dim(); ++i) target(i, i) = -1.0;
  return (b.transpose() * s.gram() * b - target).cwiseAbs().maxCoeff();
}

// psi(u, v) = 2u/(1-|u|^2) + (1+|u|^2)/(1-|u|^2) v, with v given by its
// coordinates in the Q basis (Euclidean unit vector).
inline PointHH warped_embed(const QuadraticSpace& s, const WarpedSplitting& w, const Eigen::Vector2d& u,
                            const VectorE& vq) {
  const double r2 = u.squaredNorm();
  if (!(r2 < 1.0)) throw Error(ErrorCode::Precondition, "u is outside the open unit disc");
  if (vq.size() != s.dim() - 2) throw Error(ErrorCode::DimensionMismatch, "fibre vector has wrong size");
  if (std::abs(vq.squaredNorm() - 1.0) > 1e-10) throw Error(ErrorCode::Precondition, "fibre vector is not unit");
  const double den = 1.0 - r2;
  return {w.P * (2.0 / den * u) + w.Q * ((1.0 + r2) / den * vq)};
}

struct WarpedCoords {
  Eigen::Vector2d u;
  VectorE vq;
};

inline WarpedCoords warped_coords(const QuadraticSpace& s, const WarpedSplitting& w, const PointHH& p) {
  const VectorE gp = s.gram() * p.v;
  const Eigen::Vector2d pp = w.P.transpose() * gp;
  const VectorE pq = -(w.Q.transpose() * gp);
  const double c = pq.norm();
  if (!(c > 0.5)) throw Error(ErrorCode::Precondition, "point does not decompose under the splitting");
  // c = (1+s)/(1-s) with s = |u|^2
  const double sq = (c - 1.0) / (c + 1.0);
  return {pp * (1.0 - sq) / 2.0, pq / c};
}

inline Eigen::Vector2d warped_project(const QuadraticSpace& s, const WarpedSplitting& w, const PointHH& p) {
  if (std::abs(s.q(p.v) + 1.0) > 1e-8 * std::max(1.0, p.v.squaredNorm()))
    throw Error(ErrorCode::Precondition, "point is not on the quadric");
  return warped_coords(s, w, p).u;
}

enum class GeodesicKind { Spacelike, Timelike, Lightlike, Equal };

inline const char* to_string(GeodesicKind k) {
  switch (k) {
    case GeodesicKind::Spacelike: return "Spacelike";
    case GeodesicKind::Timelike: return "Timelike";
    case GeodesicKind::Lightlike: return "Lightlike";
    case GeodesicKind::Equal: return "Equal";
  }
  return "?";
}

inline GeodesicKind classify_geodesic(const QuadraticSpace& s, const PointHH& x, const PointHH& y,
                                      double tol = 1e-9) {
  const Signature sig = signature_of_span(s, {x.v, y.v}, tol);
  if (sig.pos + sig.neg + sig.null < 2) return GeodesicKind::Equal;
  if (sig.pos == 1 && sig.neg == 1) return GeodesicKind::Spacelike;
  if (sig.neg == 2) return GeodesicKind::Timelike;
  if (sig.neg == 1 && sig.null == 1) return GeodesicKind::Lightlike;
  throw Error(ErrorCode::Precondition, "two quadric points spanning an unexpected signature");
}

inline double spacelike_distance(const QuadraticSpace& s, const PointHH& x, const PointHH& y) {
  const GeodesicKind k = classify_geodesic(s, x, y);
  if (k == GeodesicKind::Equal) return 0.0;
  if (k != GeodesicKind::Spacelike) throw Error(ErrorCode::NotSpacelike, "pair is not spacelike related");
  const double c = -std::abs(s.pair(x.v, y.v));  // lift convention pair <= 0
  return std::acosh(std::max(1.0, -c));
}

inline PointHH geodesic_point(const QuadraticSpace& s, const PointHH& x, const TangentVector& U, double t) {
  const double qu = s.q(U.dir);
  if (!(qu > 0)) throw Error(ErrorCode::NotSpacelike, "direction is not spacelike");
  if (std::abs(qu - 1.0) > 1e-10) throw Error(ErrorCode::Precondition, "direction is not unit");
  if (std::abs(s.pair(x.v, U.dir)) > 1e-10 * std::max(1.0, x.v.norm() * U.dir.norm()))
    throw Error(ErrorCode::Precondition, "direction is not tangent at x");
  return {std::cosh(t) * x.v + std::sinh(t) * U.dir};
}

// Length of the timelike arc cos(t)x + sin(t)n joining x to y, both on the
// quadric with span(x, y) negative definite.
inline double timelike_separation(const QuadraticSpace& s, const PointHH& x, const PointHH& y) {
  const double c = std::abs(s.pair(x.v, y.v));
  return std::acos(std::min(1.0, c));
}

struct RadialOptions {
  int max_iterations = 100;
  double tolerance = 1e-8;
  double fd_step = 1e-6;
};

struct RadialProjection {
  PointHH point;
  Eigen::Vector2d params;
  double residual = 0.0;
  int iterations = 0;
  double timelike_separation = 0.0;
};

using SurfaceMap = std::function<VectorE(const Eigen::Vector2d&)>;

namespace detail {

inline std::array<VectorE, 2> q_orthonormal_frame(const QuadraticSpace& s, const VectorE& t1, const VectorE& t2) {
  const double q1 = s.q(t1);
  if (!(q1 > 0)) throw Error(ErrorCode::NotSpacelike, "tangent frame is not spacelike");
  VectorE e1 = t1 / std::sqrt(q1);
  VectorE e2 = t2 - s.pair(t2, e1) * e1;
  const double q2 = s.q(e2);
  if (!(q2 > 1e-14 * std::max(1.0, t2.squaredNorm())))
    throw Error(ErrorCode::NotSpacelike, "tangent frame does not span a positive plane");
  e2 /= std::sqrt(q2);
  return {e1, e2};
}

}  // namespace detail

// Point of the target surface on the timelike sphere through x orthogonal to
// span(frame): solve pair(y(s), e_i) = 0 by damped Newton with FD Jacobian.
inline RadialProjection timelike_sphere_intersect(const QuadraticSpace& s, const PointHH& x,
                                                  const std::array<TangentVector, 2>& frame,
                                                  const SurfaceMap& target, Eigen::Vector2d seed,
                                                  const RadialOptions& opt = {},
                                                  const std::function<bool(const Eigen::Vector2d&)>& in_domain = {}) {
  const auto e = detail::q_orthonormal_frame(s, frame[0].dir, frame[1].dir);
  auto residual = [&](const Eigen::Vector2d& p) {
    const VectorE y = target(p);
    const double scale = std::max(1.0, y.norm());
    return Eigen::Vector2d(s.pair(y, e[0]) / scale, s.pair(y, e[1]) / scale);
  };
  Eigen::Vector2d p = seed;
  Eigen::Vector2d r = residual(p);
  int it = 0;
  for (; it < opt.max_iterations && r.lpNorm<Eigen::Infinity>() > 1e-15; ++it) {
    Eigen::Matrix2d j;
    for (int k = 0; k < 2; ++k) {
      Eigen::Vector2d dp = Eigen::Vector2d::Zero();
      dp[k] = opt.fd_step * (1.0 + std::abs(p[k]));
      j.col(k) = (residual(p + dp) - residual(p - dp)) / (2.0 * dp[k]);
    }
    const Eigen::Vector2d step = j.fullPivLu().solve(-r);
    double damp = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls, damp *= 0.5) {
      const Eigen::Vector2d cand = p + damp * step;
      if (in_domain && !in_domain(cand)) continue;
      const Eigen::Vector2d rc = residual(cand);
      if (rc.norm() < r.norm()) {
        p = cand;
        r = rc;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  const double res = r.lpNorm<Eigen::Infinity>();
  if (!(res <= opt.tolerance))
    throw Error(ErrorCode::NoConvergence, "radial projection did not converge, last residual " + std::to_string(res));
  RadialProjection out;
  out.point = normalize_to_quadric(s, target(p));
  out.params = p;
  out.residual = res;
  out.iterations = it;
  out.timelike_separation = timelike_separation(s, x, out.point);
  return out;
}

// Graph form: the target is u -> psi(u, G(u)) over the disc of a splitting,
// seeded from the warped projection of x.
inline RadialProjection timelike_sphere_intersect_graph(
    const QuadraticSpace& s, const PointHH& x, const std::array<TangentVector, 2>& frame,
    const WarpedSplitting& w, const std::function<VectorE(const Eigen::Vector2d&)>& graph,
    const RadialOptions& opt = {}) {
  SurfaceMap target = [&](const Eigen::Vector2d& u) { return warped_embed(s, w, u, graph(u)).v; };
  auto inside = [](const Eigen::Vector2d& u) { return u.squaredNorm() < 1.0; };
  return timelike_sphere_intersect(s, x, frame, target, warped_project(s, w, x), opt, inside);
}

}  // namespace pseudohyp
