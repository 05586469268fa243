#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "pseudohyp/barbot.hpp"
#include "pseudohyp/cone_metric.hpp"
#include "pseudohyp/error.hpp"

namespace pseudohyp {

enum class SurfaceKind { Barbot, Cone };

// Barbot: base = (u,v), angle = chart direction of the ray (the chart is
// conformal, so chart angles are Riemannian angles).
// Cone: base = (rho, beta) in the flat cone model, angle = direction relative
// to the outward radial at the base (at the apex, relative to beta).
struct IdealDirection {
  SurfaceKind surface = SurfaceKind::Barbot;
  Eigen::Vector2d base = Eigen::Vector2d::Zero();
  double angle = 0.0;
  ConeModel cone{};
};

inline IdealDirection barbot_direction(double u, double v, const Eigen::Vector2d& X) {
  return {SurfaceKind::Barbot, Eigen::Vector2d(u, v), std::atan2(X.y(), X.x()), ConeModel{}};
}

inline IdealDirection cone_direction(const ConeModel& c, double rho, double beta, double psi) {
  if (rho < 0) throw Error(ErrorCode::Precondition, "rho must be nonnegative");
  if (rho == 0) return {SurfaceKind::Cone, Eigen::Vector2d::Zero(), beta + psi, c};
  if (rho > 0 && std::abs(std::abs(std::remainder(psi, 2.0 * std::numbers::pi)) - std::numbers::pi) < 1e-12)
    throw Error(ErrorCode::Precondition, "ray runs into the apex");
  return {SurfaceKind::Cone, Eigen::Vector2d(rho, beta), std::remainder(psi, 2.0 * std::numbers::pi), c};
}

// Apex-based ray of a monomial cone in the direction of plane angle alpha.
inline IdealDirection monomial_apex_direction(int N, double alpha) {
  return cone_direction(monomial_cone(N), 0.0, 0.0, (N + 4) / 4.0 * alpha);
}

// Point at time t: Barbot (u,v), cone (rho,beta).
inline Eigen::Vector2d point_at(const IdealDirection& d, double t) {
  if (d.surface == SurfaceKind::Barbot)
    return d.base + t * std::sqrt(2.0) * Eigen::Vector2d(std::cos(d.angle), std::sin(d.angle));
  if (d.base.x() == 0) return {t, d.angle};
  const std::complex<double> P = d.base.x() + t * std::polar(1.0, d.angle);
  return {std::abs(P), d.base.y() + std::arg(P)};
}

inline double surface_distance(const IdealDirection& d, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  if (d.surface == SurfaceKind::Barbot) return (a - b).norm() / std::sqrt(2.0);
  return d.cone.distance(a.x(), a.y(), b.x(), b.y());
}

// Parameter of the ideal point on the boundary circle, in [0, perimeter).
inline double ideal_parameter(const IdealDirection& d) {
  const double L = d.surface == SurfaceKind::Barbot ? 2.0 * std::numbers::pi : d.cone.Theta;
  const double b = d.surface == SurfaceKind::Barbot ? d.angle : d.base.y() + d.angle;
  const double r = std::fmod(b, L);
  return r < 0 ? r + L : r;
}

inline double boundary_length(const IdealDirection& d) {
  return d.surface == SurfaceKind::Barbot ? 2.0 * std::numbers::pi : d.cone.Theta;
}

inline std::vector<double> default_t_schedule(double t0 = 1.0, int steps = 14) {
  std::vector<double> t;
  for (int k = 0; k <= steps; ++k) t.push_back(std::ldexp(t0, k));
  return t;
}

struct LimitResult {
  double value = 0.0;
  std::vector<double> sequence;
};

// Assumes the error is O(1/t) on a doubling schedule.
inline double richardson_last(const std::vector<double>& s, const std::vector<double>& t) {
  if (s.size() < 2) return s.back();
  const std::size_t k = s.size() - 1;
  const double r = t[k] / t[k - 1];
  return (r * s[k] - s[k - 1]) / (r - 1.0);
}

inline void check_same_base(const IdealDirection& a, const IdealDirection& b) {
  if (a.surface != b.surface || (a.base - b.base).norm() > 1e-12 ||
      (a.surface == SurfaceKind::Cone && a.cone.Theta != b.cone.Theta))
    throw Error(ErrorCode::Precondition, "rays must share surface and base point");
}

inline LimitResult l_distance(const IdealDirection& c1, const IdealDirection& c2,
                              const std::vector<double>& ts = default_t_schedule(), double mono_tol = 1e-9) {
  check_same_base(c1, c2);
  LimitResult out;
  for (double t : ts) {
    if (!(t > 0)) throw Error(ErrorCode::NonPositiveParameter, "schedule times must be positive");
    out.sequence.push_back(surface_distance(c1, point_at(c1, t), point_at(c2, t)) / t);
  }
  for (std::size_t k = 1; k < out.sequence.size(); ++k)
    if (out.sequence[k] < out.sequence[k - 1] - mono_tol)
      throw Error(ErrorCode::NonMonotone, "d(c1(t),c2(t))/t decreased along the schedule");
  out.value = std::max(0.0, richardson_last(out.sequence, ts));
  return out;
}

// Direction at the cone point (rho, beta), relative to the outward radial, of
// the geodesic ray toward the ideal point with parameter b. Rays whose
// boundary angle is at least pi away go through the apex.
inline double cone_direction_toward(const ConeModel& c, double beta, double b) {
  const double d = c.wrap(b - beta);
  return std::abs(d) < std::numbers::pi ? d : std::numbers::pi;
}

inline double tangent_angle(double a, double b) {
  const double d = std::abs(std::remainder(a - b, 2.0 * std::numbers::pi));
  return std::min(d, std::numbers::pi);
}

// Riemannian angle at the point p between the rays toward two ideal points.
inline double angle_at(const IdealDirection& ref, const Eigen::Vector2d& p, double ideal1, double ideal2) {
  if (ref.surface == SurfaceKind::Barbot) return tangent_angle(ideal1, ideal2);
  if (p.x() <= 0) return std::min(std::abs(ref.cone.wrap(ideal1 - ideal2)), std::numbers::pi);
  return tangent_angle(cone_direction_toward(ref.cone, p.y(), ideal1), cone_direction_toward(ref.cone, p.y(), ideal2));
}

// Angle at c(t) along the ray of xi, extrapolated in t.
inline LimitResult angle_distance_along_ray(const IdealDirection& xi, const IdealDirection& eta,
                                            const std::vector<double>& ts = default_t_schedule()) {
  if (xi.surface != eta.surface) throw Error(ErrorCode::Precondition, "directions on different surfaces");
  const double a = ideal_parameter(xi), b = ideal_parameter(eta);
  LimitResult out;
  for (double t : ts) out.sequence.push_back(angle_at(xi, point_at(xi, t), a, b));
  out.value = std::clamp(richardson_last(out.sequence, ts), 0.0, std::numbers::pi);
  return out;
}

// Angle distance between two boundary points of a circle of the given length.
inline double boundary_angle(double length, double a, double b) {
  double d = std::fmod(std::abs(a - b), length);
  d = std::min(d, length - d);
  return std::min(d, std::numbers::pi);
}

// Inner length of the ccw arc from a to b: sum of angle distances over a fine
// subdivision.
inline double boundary_arc_length(double length, double a, double b, int pieces = 256) {
  double span = std::fmod(b - a, length);
  if (span < 0) span += length;
  double s = 0.0;
  for (int k = 0; k < pieces; ++k)
    s += boundary_angle(length, a + span * k / pieces, a + span * (k + 1) / pieces);
  return s;
}

inline double tits_distance(const IdealDirection& xi, const IdealDirection& eta) {
  if (xi.surface != eta.surface) throw Error(ErrorCode::Unsupported, "directions on different surfaces");
  const double L = boundary_length(xi);
  const double a = ideal_parameter(xi), b = ideal_parameter(eta);
  return std::min(boundary_arc_length(L, a, b), boundary_arc_length(L, b, a));
}

inline double tits_perimeter(double length, int pieces = 1024) {
  double s = 0.0;
  for (int k = 0; k < pieces; ++k) s += boundary_angle(length, length * k / pieces, length * (k + 1) / pieces);
  return s;
}

inline double barbot_tits_perimeter() {
  const auto dirs = regular_directions(standard_barbot(), 0.0, 0.0);
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    s += tits_distance(barbot_direction(0, 0, dirs[static_cast<std::size_t>(i)]),
                       barbot_direction(0, 0, dirs[static_cast<std::size_t>((i + 1) % 4)]));
  return s;
}

struct TitsPair {
  double xi = 0.0, eta = 0.0;
  double angle = 0.0, l = 0.0, td = 0.0;
};

struct TitsSample {
  std::vector<TitsPair> pairs;
  double max_identity_residual() const {
    double r = 0.0;
    for (const auto& p : pairs) r = std::max(r, std::abs(p.l - 2.0 * std::sin(p.angle / 2.0)));
    return r;
  }
};

inline TitsPair tits_pair(const IdealDirection& xi, const IdealDirection& eta) {
  TitsPair p;
  p.xi = ideal_parameter(xi);
  p.eta = ideal_parameter(eta);
  p.angle = angle_distance_along_ray(xi, eta).value;
  p.l = l_distance(xi, eta).value;
  p.td = tits_distance(xi, eta);
  return p;
}

// k apex rays of the monomial cone, evenly spread in plane angle, all pairs.
inline TitsSample monomial_tits_sample(int N, int k) {
  std::vector<IdealDirection> d;
  for (int i = 0; i < k; ++i) d.push_back(monomial_apex_direction(N, 2.0 * std::numbers::pi * i / k));
  TitsSample s;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) s.pairs.push_back(tits_pair(d[static_cast<std::size_t>(i)], d[static_cast<std::size_t>(j)]));
  return s;
}

inline TitsSample barbot_tits_sample(int k, double u0 = 0.0, double v0 = 0.0) {
  std::vector<IdealDirection> d;
  for (int i = 0; i < k; ++i) {
    const double th = 2.0 * std::numbers::pi * i / k;
    d.push_back(barbot_direction(u0, v0, std::sqrt(2.0) * Eigen::Vector2d(std::cos(th), std::sin(th))));
  }
  TitsSample s;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) s.pairs.push_back(tits_pair(d[static_cast<std::size_t>(i)], d[static_cast<std::size_t>(j)]));
  return s;
}

struct OhtsukaResult {
  double lhs = 0.0, rhs = 0.0, residual = 0.0;
  bool contains_cone_point = false;
  double angle_at_x = 0.0, arc_length = 0.0;
};

// Domain bounded by the rays from x = (rho, beta) to xi and eta and the ccw
// boundary arc from xi to eta.
inline OhtsukaResult ohtsuka_check(int N, double xi, double eta, double rho, double beta, double tol = 1e-9) {
  if (!(rho > 0)) throw Error(ErrorCode::Precondition, "x must not be the cone point");
  const ConeModel c = monomial_cone(N);
  const double d1 = c.wrap(xi - beta), d2 = c.wrap(eta - beta);
  if (std::abs(std::abs(d1) - std::numbers::pi) <= tol || std::abs(std::abs(d2) - std::numbers::pi) <= tol ||
      std::abs(d1) > std::numbers::pi || std::abs(d2) > std::numbers::pi)
    throw Error(ErrorCode::AmbiguousDomain, "a bounding ray passes through the cone point");
  OhtsukaResult r;
  r.arc_length = boundary_arc_length(c.Theta, xi, eta);
  // winding of the boundary loop around the apex, in units of the cone angle
  const double w = d1 + r.arc_length - d2;
  r.contains_cone_point = std::abs(w - c.Theta) < std::abs(w);
  double ang = d2 - d1;
  if (r.contains_cone_point) ang = std::fmod(ang + 2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
  r.angle_at_x = ang;
  r.lhs = r.contains_cone_point ? -std::numbers::pi / 2.0 * N : 0.0;
  r.rhs = r.angle_at_x - r.arc_length;
  r.residual = std::abs(r.lhs - r.rhs);
  return r;
}

// Angle excess of the triangle with the given cone-model vertices, computed
// from its side lengths. Meaningful for triangles in a flat sector.
inline double triangle_angle_excess(const ConeModel& c, const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                                    const Eigen::Vector2d& p3) {
  const double a = c.distance(p2.x(), p2.y(), p3.x(), p3.y());
  const double b = c.distance(p1.x(), p1.y(), p3.x(), p3.y());
  const double cc = c.distance(p1.x(), p1.y(), p2.x(), p2.y());
  auto ang = [](double opp, double s1, double s2) {
    return std::acos(std::clamp((s1 * s1 + s2 * s2 - opp * opp) / (2.0 * s1 * s2), -1.0, 1.0));
  };
  return ang(a, b, cc) + ang(b, a, cc) + ang(cc, a, b) - std::numbers::pi;
}

struct CurvatureIdentity {
  double perimeter = 0.0, total_curvature = 0.0, residual = 0.0;
};

inline CurvatureIdentity make_identity(double P, double K) { return {P, K, std::abs(K - (2.0 * std::numbers::pi - P))}; }

inline CurvatureIdentity perimeter_vs_curvature_barbot() { return make_identity(barbot_tits_perimeter(), 0.0); }

inline CurvatureIdentity perimeter_vs_curvature_monomial(int N) {
  return make_identity(tits_perimeter(monomial_cone(N).Theta), total_curvature(PolynomialQuartic::monomial(N)));
}

// Grid version: the perimeter is P(r)/r at the largest radius.
inline CurvatureIdentity perimeter_vs_curvature_grid(const MetricGrid& g, const PolynomialQuartic& p,
                                                     const std::vector<double>& radii) {
  const auto pr = perimeter_growth(g, 0.0, radii);
  return make_identity(pr.back(), total_curvature(p));
}

struct MainTheoremBook {
  int N = 0;
  double perimeter = 0.0, curvature = 0.0;
  int vertices = 0;
  double residual = 0.0;  // max of the three consistency defects
};

inline MainTheoremBook main_theorem_bookkeeping(int N, int polygon_vertices) {
  MainTheoremBook b;
  b.N = N;
  b.perimeter = tits_perimeter(monomial_cone(N).Theta);
  b.curvature = total_curvature(PolynomialQuartic::monomial(N));
  b.vertices = polygon_vertices;
  const double pi = std::numbers::pi;
  b.residual = std::max({std::abs(b.perimeter - (N + 4) * pi / 2), std::abs(b.curvature + pi / 2 * N),
                         std::abs(b.curvature - (2 * pi - b.perimeter)), std::abs(double(b.vertices - (N + 4)))});
  return b;
}

}  // namespace pseudohyp
