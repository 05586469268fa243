#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "pseudohyp/einstein.hpp"
#include "pseudohyp/pseudo_hyperbolic.hpp"

namespace pseudohyp {

struct BarbotSurface {
  QuadraticSpace space;
  HyperbolicBasis basis;
};

inline BarbotSurface standard_barbot(int n = 2) {
  QuadraticSpace s(n);
  return {s, standard_hyperbolic_basis(s)};
}

// f(u,v) = e^u z1 + e^v z2 + e^-u z3 + e^-v z4
inline VectorE barbot_vector(const BarbotSurface& S, double u, double v) {
  const auto& z = S.basis.z;
  return std::exp(u) * z[0] + std::exp(v) * z[1] + std::exp(-u) * z[2] + std::exp(-v) * z[3];
}

inline PointHH barbot_point(const BarbotSurface& S, double u, double v) { return {barbot_vector(S, u, v)}; }

struct BarbotFrame {
  VectorE du;
  VectorE dv;
  VectorE n;
};

inline BarbotFrame barbot_frame(const BarbotSurface& S, double u, double v) {
  const auto& z = S.basis.z;
  const double eu = std::exp(u), ev = std::exp(v), iu = std::exp(-u), iv = std::exp(-v);
  return {eu * z[0] - iu * z[2], ev * z[1] - iv * z[3], eu * z[0] - ev * z[1] + iu * z[2] - iv * z[3]};
}

// Largest deviation of the frame from its defining pairings.
inline double barbot_frame_residual(const BarbotSurface& S, double u, double v) {
  const auto& s = S.space;
  const BarbotFrame fr = barbot_frame(S, u, v);
  const VectorE f = barbot_vector(S, u, v);
  const double r[] = {s.pair(fr.du, fr.du) - 0.5, s.pair(fr.dv, fr.dv) - 0.5, s.pair(fr.du, fr.dv),
                      s.pair(fr.n, fr.du),        s.pair(fr.n, fr.dv),        s.pair(fr.n, f),
                      s.pair(fr.n, fr.n) + 1.0,   s.q(f) + 1.0};
  double m = 0.0;
  for (double x : r) m = std::max(m, std::abs(x));
  return m;
}

// II(X,Y) for X = a du + b dv, Y = c du + d dv: (ac - bd) n / 2.
inline VectorE barbot_second_fundamental_form(const BarbotSurface& S, double u, double v, const Eigen::Vector2d& X,
                                              const Eigen::Vector2d& Y) {
  return 0.5 * (X[0] * Y[0] - X[1] * Y[1]) * barbot_frame(S, u, v).n;
}

enum class DirectionKind { Vertex, EdgeMidpointType };

struct DirectionClass {
  DirectionKind kind = DirectionKind::Vertex;
  int index = 1;  // vertex z_i, or edge [z_i, z_{i+1}]
  VectorE limit_vector;
  double growth_exponent = 0.0;
};

inline VectorE barbot_ray(const BarbotSurface& S, double u0, double v0, const Eigen::Vector2d& X, double t) {
  return barbot_vector(S, u0 + t * X[0], v0 + t * X[1]);
}

// The ray t -> f(u0 + ta, v0 + tb); (a^2 + b^2)/2 = 1 is the unit-speed condition.
inline DirectionClass classify_direction(const BarbotSurface& S, double u0, double v0, const Eigen::Vector2d& X,
                                         double band = 1e-9) {
  const auto& z = S.basis.z;
  const double a = X[0], b = X[1], nx = X.norm();
  if (!(nx > 0)) throw Error(ErrorCode::Precondition, "zero direction");
  const double eu = std::exp(u0), ev = std::exp(v0), iu = std::exp(-u0), iv = std::exp(-v0);
  DirectionClass c;
  if (std::abs(a - b) <= band * nx) {
    c.kind = DirectionKind::EdgeMidpointType;
    c.growth_exponent = std::abs(a);
    if (a > 0) {
      c.index = 1;
      c.limit_vector = eu * z[0] + ev * z[1];
    } else {
      c.index = 3;
      c.limit_vector = iu * z[2] + iv * z[3];
    }
    return c;
  }
  if (std::abs(a + b) <= band * nx) {
    c.kind = DirectionKind::EdgeMidpointType;
    c.growth_exponent = std::abs(a);
    if (a < 0) {
      c.index = 2;
      c.limit_vector = ev * z[1] + iu * z[2];
    } else {
      c.index = 4;
      c.limit_vector = iv * z[3] + eu * z[0];
    }
    return c;
  }
  c.kind = DirectionKind::Vertex;
  c.growth_exponent = std::max(std::abs(a), std::abs(b));
  if (a > std::abs(b)) {
    c.index = 1;
    c.limit_vector = eu * z[0];
  } else if (b > std::abs(a)) {
    c.index = 2;
    c.limit_vector = ev * z[1];
  } else if (-a > std::abs(b)) {
    c.index = 3;
    c.limit_vector = iu * z[2];
  } else {
    c.index = 4;
    c.limit_vector = iv * z[3];
  }
  return c;
}

// Unit directions along the axes, in the order pointing to z1, z2, z3, z4.
inline std::array<Eigen::Vector2d, 4> regular_directions(const BarbotSurface&, double, double) {
  const double r = std::sqrt(2.0);
  return {Eigen::Vector2d(r, 0), Eigen::Vector2d(0, r), Eigen::Vector2d(-r, 0), Eigen::Vector2d(0, -r)};
}

// Angle between chart directions for the metric (du^2 + dv^2)/2.
inline double barbot_angle(const Eigen::Vector2d& X, const Eigen::Vector2d& Y) {
  const double c = X.dot(Y) / (X.norm() * Y.norm());
  return std::acos(std::clamp(c, -1.0, 1.0));
}

struct HoroTarget {
  DirectionKind kind = DirectionKind::Vertex;
  int index = 1;
};

inline double logaddexp(double x, double y) {
  const double m = std::max(x, y);
  return m + std::log(std::exp(x - m) + std::exp(y - m));
}

// Closed-form horofunction representatives in the (u,v) chart.
inline double barbot_horofunction(const BarbotSurface&, const HoroTarget& t, double u, double v) {
  if (t.index < 1 || t.index > 4) throw Error(ErrorCode::Precondition, "index must be 1..4");
  if (t.kind == DirectionKind::Vertex) {
    switch (t.index) {
      case 1: return -u;
      case 2: return -v;
      case 3: return u;
      default: return v;
    }
  }
  switch (t.index) {
    case 1: return logaddexp(-u, -v);
    case 2: return logaddexp(-v, u);
    case 3: return logaddexp(u, v);
    default: return logaddexp(v, -u);
  }
}

// Isotropic representative z of the boundary point a horofunction target names.
inline VectorE horo_target_vector(const BarbotSurface& S, const HoroTarget& t) {
  const auto& z = S.basis.z;
  const int i = t.index - 1;
  if (t.kind == DirectionKind::Vertex) return z[static_cast<std::size_t>(i)];
  return z[static_cast<std::size_t>(i)] + z[static_cast<std::size_t>((i + 1) % 4)];
}

}  // namespace pseudohyp
