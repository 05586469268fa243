#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <type_traits>
#include <vector>

#include "pseudohyp/barbot.hpp"
#include "pseudohyp/contour.hpp"
#include "pseudohyp/pseudo_hyperbolic.hpp"

namespace pseudohyp {

struct Jet {
  VectorE F, Fu, Fv, Fuu, Fuv, Fvv;
};

struct Immersion {
  std::function<VectorE(double, double)> eval;
  std::function<Jet(double, double)> jet;  // optional analytic derivatives
};

// h: first derivatives; h2: second derivatives; h_metric: derivatives of the
// induced metric (Brioschi, Christoffel symbols). One Richardson step each.
struct FdOptions {
  double h = 1e-4;
  double h2 = 1e-3;
  double h_metric = 1e-2;
};

namespace fd {

// Results are forced to concrete types so no Eigen expression outlives its operands.
template <class F, class T = std::decay_t<std::invoke_result_t<F, double>>>
T d1(const F& f, double x, double h) {
  auto c = [&](double s) -> T { return (f(x + s) - f(x - s)) / (2.0 * s); };
  return (4.0 * c(h / 2) - c(h)) / 3.0;
}

template <class F, class T = std::decay_t<std::invoke_result_t<F, double>>>
T d2(const F& f, double x, double h) {
  const T f0 = f(x);
  auto c = [&](double s) -> T { return (f(x + s) - 2.0 * f0 + f(x - s)) / (s * s); };
  return (4.0 * c(h / 2) - c(h)) / 3.0;
}

template <class F, class T = std::decay_t<std::invoke_result_t<F, double, double>>>
T d11(const F& f, double u, double v, double h) {
  auto c = [&](double s) -> T { return (f(u + s, v + s) - f(u + s, v - s) - f(u - s, v + s) + f(u - s, v - s)) / (4.0 * s * s); };
  return (4.0 * c(h / 2) - c(h)) / 3.0;
}

}  // namespace fd

inline Jet jet_at(const Immersion& F, double u, double v, const FdOptions& o = {}) {
  if (F.jet) return F.jet(u, v);
  auto fu = [&](double x) { return VectorE(F.eval(x, v)); };
  auto fv = [&](double y) { return VectorE(F.eval(u, y)); };
  auto fuv = [&](double x, double y) { return VectorE(F.eval(x, y)); };
  Jet j;
  j.F = F.eval(u, v);
  j.Fu = fd::d1(fu, u, o.h);
  j.Fv = fd::d1(fv, v, o.h);
  j.Fuu = fd::d2(fu, u, o.h2);
  j.Fvv = fd::d2(fv, v, o.h2);
  j.Fuv = fd::d11(fuv, u, v, o.h2);
  return j;
}

struct FundamentalForms {
  Eigen::Matrix2d g;
  std::array<std::array<VectorE, 2>, 2> II;
  Jet jet;

  const VectorE& d(int i) const { return i == 0 ? jet.Fu : jet.Fv; }
  const VectorE& dd(int i, int j) const { return i + j == 0 ? jet.Fuu : (i + j == 1 ? jet.Fuv : jet.Fvv); }
};

inline Eigen::Matrix2d metric_from_jet(const QuadraticSpace& s, const Jet& j) {
  Eigen::Matrix2d g;
  g(0, 0) = s.pair(j.Fu, j.Fu);
  g(0, 1) = g(1, 0) = s.pair(j.Fu, j.Fv);
  g(1, 1) = s.pair(j.Fv, j.Fv);
  return g;
}

// D_X Y = <X,Y> x + nabla_X Y + II(X,Y): II_ij is d_ij F minus g_ij F minus its
// tangential part.
inline FundamentalForms fundamental_forms(const QuadraticSpace& s, const Immersion& F, double u, double v,
                                          const FdOptions& o = {}) {
  FundamentalForms ff;
  ff.jet = jet_at(F, u, v, o);
  ff.g = metric_from_jet(s, ff.jet);
  if (!(ff.g(0, 0) > 0) || !(ff.g.determinant() > 0))
    throw Error(ErrorCode::NotSpacelike, "tangent plane is not spacelike");
  const Eigen::Matrix2d gi = ff.g.inverse();
  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j) {
      const VectorE& w = ff.dd(i, j);
      VectorE n = w - ff.g(i, j) * ff.jet.F;
      const Eigen::Vector2d c(s.pair(w, ff.jet.Fu), s.pair(w, ff.jet.Fv));
      const Eigen::Vector2d t = gi * c;
      n -= t[0] * ff.jet.Fu + t[1] * ff.jet.Fv;
      ff.II[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = n;
      ff.II[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = n;
    }
  return ff;
}

inline VectorE mean_curvature(const QuadraticSpace& s, const Immersion& F, double u, double v, const FdOptions& o = {}) {
  const FundamentalForms ff = fundamental_forms(s, F, u, v, o);
  const Eigen::Matrix2d gi = ff.g.inverse();
  return gi(0, 0) * ff.II[0][0] + 2.0 * gi(0, 1) * ff.II[0][1] + gi(1, 1) * ff.II[1][1];
}

inline Eigen::Matrix2d induced_metric(const QuadraticSpace& s, const Immersion& F, double u, double v,
                                      const FdOptions& o = {}) {
  if (F.jet) return metric_from_jet(s, F.jet(u, v));
  auto fu = [&](double x) { return VectorE(F.eval(x, v)); };
  auto fv = [&](double y) { return VectorE(F.eval(u, y)); };
  Jet j;
  j.Fu = fd::d1(fu, u, o.h);
  j.Fv = fd::d1(fv, v, o.h);
  return metric_from_jet(s, j);
}

// Brioschi formula on the induced metric.
inline double gauss_curvature(const QuadraticSpace& s, const Immersion& F, double u, double v, const FdOptions& o = {}) {
  const double H = o.h_metric;
  if (!std::isfinite(u + H) || !std::isfinite(v + H)) throw Error(ErrorCode::Precondition, "step underflow");
  auto m = [&](double x, double y) {
    const Eigen::Matrix2d g = induced_metric(s, F, x, y, o);
    return Eigen::Vector3d(g(0, 0), g(0, 1), g(1, 1));
  };
  auto mu = [&](double x) { return Eigen::Vector3d(m(x, v)); };
  auto mv = [&](double y) { return Eigen::Vector3d(m(u, y)); };
  const Eigen::Vector3d g0 = m(u, v);
  const Eigen::Vector3d du = fd::d1(mu, u, H), dv = fd::d1(mv, v, H);
  const Eigen::Vector3d duu = fd::d2(mu, u, H), dvv = fd::d2(mv, v, H);
  const Eigen::Vector3d duv = fd::d11([&](double x, double y) { return Eigen::Vector3d(m(x, y)); }, u, v, H);
  const double E = g0[0], Fm = g0[1], G = g0[2];
  const double Eu = du[0], Ev = dv[0], Fu = du[1], Fv = dv[1], Gu = du[2], Gv = dv[2];
  const double Evv = dvv[0], Fuv = duv[1], Guu = duu[2];
  Eigen::Matrix3d m1, m2;
  m1 << -0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev, Fv - 0.5 * Gu, E, Fm, 0.5 * Gv, Fm, G;
  m2 << 0.0, 0.5 * Ev, 0.5 * Gu, 0.5 * Ev, E, Fm, 0.5 * Gu, Fm, G;
  const double den = E * G - Fm * Fm;
  return (m1.determinant() - m2.determinant()) / (den * den);
}

inline std::complex<double> quartic_differential(const QuadraticSpace& s, const Immersion& F, double u, double v,
                                                 const FdOptions& o = {}, double conformal_tol = 1e-8) {
  const FundamentalForms ff = fundamental_forms(s, F, u, v, o);
  const double g11 = ff.g(0, 0);
  if (std::abs(ff.g(0, 0) - ff.g(1, 1)) > conformal_tol * g11 || std::abs(ff.g(0, 1)) > conformal_tol * g11)
    throw Error(ErrorCode::NonConformalChart, "chart is not conformal for the induced metric");
  const VectorE& a = ff.II[0][0];
  const VectorE& b = ff.II[0][1];
  return {s.pair(a, a) - s.pair(b, b), -2.0 * s.pair(a, b)};
}

inline Immersion barbot_immersion(const BarbotSurface& S, bool analytic_jet = false) {
  Immersion im;
  im.eval = [S](double u, double v) { return barbot_vector(S, u, v); };
  if (analytic_jet) {
    im.jet = [S](double u, double v) {
      const auto& z = S.basis.z;
      const double eu = std::exp(u), ev = std::exp(v), iu = std::exp(-u), iv = std::exp(-v);
      Jet j;
      j.F = barbot_vector(S, u, v);
      j.Fu = eu * z[0] - iu * z[2];
      j.Fv = ev * z[1] - iv * z[3];
      j.Fuu = eu * z[0] + iu * z[2];
      j.Fvv = ev * z[1] + iv * z[3];
      j.Fuv = VectorE::Zero(j.F.size());
      return j;
    };
  }
  return im;
}

// Totally geodesic plane: psi(u, v0) over the disc of a splitting.
inline Immersion hyperbolic_plane_immersion(const QuadraticSpace& s, const WarpedSplitting& w, const VectorE& v0) {
  Immersion im;
  im.eval = [s, w, v0](double a, double b) { return warped_embed(s, w, Eigen::Vector2d(a, b), v0).v; };
  return im;
}

inline Immersion transformed(const Immersion& F, const GroupElement& g) {
  Immersion im;
  im.eval = [F, g](double u, double v) { return VectorE(g * F.eval(u, v)); };
  if (F.jet)
    im.jet = [F, g](double u, double v) {
      Jet j = F.jet(u, v);
      for (VectorE* p : {&j.F, &j.Fu, &j.Fv, &j.Fuu, &j.Fuv, &j.Fvv}) *p = g * *p;
      return j;
    };
  return im;
}

struct HorofunctionHandle {
  VectorE z;
  Immersion surface;
};

inline HorofunctionHandle make_horofunction(const QuadraticSpace& s, const VectorE& z, const Immersion& F) {
  if (std::abs(s.q(z)) > 1e-10 * std::max(1.0, z.squaredNorm()))
    throw Error(ErrorCode::Precondition, "boundary representative is not isotropic");
  return {z, F};
}

namespace detail {

inline double pair_checked(const QuadraticSpace& s, const VectorE& z, const VectorE& x) {
  const double c = s.pair(z, x);
  if (std::abs(c) <= 1e-12 * z.norm() * x.norm()) throw Error(ErrorCode::LightconeProximity, "point on the lightcone of z");
  return c;
}

}  // namespace detail

inline double h_value(const QuadraticSpace& s, const HorofunctionHandle& h, double u, double v) {
  return std::log(std::abs(detail::pair_checked(s, h.z, h.surface.eval(u, v))));
}

// grad h = z^T / <x,z>, in chart coordinates.
inline Eigen::Vector2d h_gradient(const QuadraticSpace& s, const HorofunctionHandle& h, double u, double v,
                                  const FdOptions& o = {}) {
  const FundamentalForms ff = fundamental_forms(s, h.surface, u, v, o);
  const double c = detail::pair_checked(s, h.z, ff.jet.F);
  const Eigen::Vector2d dz(s.pair(ff.jet.Fu, h.z), s.pair(ff.jet.Fv, h.z));
  return ff.g.inverse() * dz / c;
}

inline double h_gradient_q(const QuadraticSpace& s, const HorofunctionHandle& h, double u, double v,
                           const FdOptions& o = {}) {
  const Eigen::Matrix2d g = induced_metric(s, h.surface, u, v, o);
  const Eigen::Vector2d gr = h_gradient(s, h, u, v, o);
  return gr.dot(g * gr);
}

inline Eigen::Vector2d h_gradient_fd(const QuadraticSpace& s, const HorofunctionHandle& h, double u, double v,
                                     const FdOptions& o = {}) {
  const Eigen::Vector2d dh(fd::d1([&](double x) { return h_value(s, h, x, v); }, u, o.h),
                           fd::d1([&](double y) { return h_value(s, h, u, y); }, v, o.h));
  return induced_metric(s, h.surface, u, v, o).inverse() * dh;
}

// Hessian table in chart coordinates: g_ij + <II_ij, z>/<x,z> - (d_i h)(d_j h).
inline Eigen::Matrix2d h_hessian(const QuadraticSpace& s, const HorofunctionHandle& h, double u, double v,
                                 const FdOptions& o = {}) {
  const FundamentalForms ff = fundamental_forms(s, h.surface, u, v, o);
  const double c = detail::pair_checked(s, h.z, ff.jet.F);
  const Eigen::Vector2d dh(s.pair(ff.jet.Fu, h.z) / c, s.pair(ff.jet.Fv, h.z) / c);
  Eigen::Matrix2d H;
  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j)
      H(i, j) = H(j, i) = ff.g(i, j) + s.pair(ff.II[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], h.z) / c -
                          dh[i] * dh[j];
  return H;
}

// Christoffel symbols Gamma[k](i,j) of the induced metric, by differences.
inline std::array<Eigen::Matrix2d, 2> christoffel(const QuadraticSpace& s, const Immersion& F, double u, double v,
                                                  const FdOptions& o = {}) {
  const double H = o.h_metric;
  const Eigen::Matrix2d g = induced_metric(s, F, u, v, o);
  const Eigen::Matrix2d gi = g.inverse();
  const std::array<Eigen::Matrix2d, 2> dg = {
      fd::d1([&](double x) { return Eigen::Matrix2d(induced_metric(s, F, x, v, o)); }, u, H),
      fd::d1([&](double y) { return Eigen::Matrix2d(induced_metric(s, F, u, y, o)); }, v, H)};
  std::array<Eigen::Matrix2d, 2> G;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double acc = 0.0;
        for (int l = 0; l < 2; ++l)
          acc += gi(k, l) * (dg[static_cast<std::size_t>(i)](j, l) + dg[static_cast<std::size_t>(j)](i, l) -
                             dg[static_cast<std::size_t>(l)](i, j));
        G[static_cast<std::size_t>(k)](i, j) = 0.5 * acc;
      }
  return G;
}

inline Eigen::Matrix2d h_hessian_fd(const QuadraticSpace& s, const HorofunctionHandle& h, double u, double v,
                                    const FdOptions& o = {}) {
  auto hv = [&](double x, double y) { return h_value(s, h, x, y); };
  const Eigen::Vector2d dh(fd::d1([&](double x) { return hv(x, v); }, u, o.h),
                           fd::d1([&](double y) { return hv(u, y); }, v, o.h));
  Eigen::Matrix2d d2;
  d2(0, 0) = fd::d2([&](double x) { return hv(x, v); }, u, o.h2);
  d2(1, 1) = fd::d2([&](double y) { return hv(u, y); }, v, o.h2);
  d2(0, 1) = d2(1, 0) = fd::d11(hv, u, v, o.h2);
  const auto G = christoffel(s, h.surface, u, v, o);
  return d2 - G[0] * dh[0] - G[1] * dh[1];
}

struct QuasiconvexityReport {
  double min_critical_hessian = std::numeric_limits<double>::infinity();
  double min_beta = std::numeric_limits<double>::infinity();
  double max_beta_excess = -std::numeric_limits<double>::infinity();  // beta^2 - (q(grad)-1)(1+K) where q(grad) >= 1
  double min_grad_q = std::numeric_limits<double>::infinity();
  double max_grad_q = -std::numeric_limits<double>::infinity();
  int points = 0;
  int inequality_points = 0;
};

// Grid scan of the Hessian on critical directions (dh X = 0) and of
// beta(x,X) = <II(X,X),z>/<x,z> over unit directions.
inline QuasiconvexityReport quasiconvexity_scan(const QuadraticSpace& s, const HorofunctionHandle& h, double u0,
                                                double u1, double v0, double v1, int nu, int nv,
                                                const FdOptions& o = {}, int directions = 32) {
  QuasiconvexityReport rep;
  for (int a = 0; a < nu; ++a)
    for (int b = 0; b < nv; ++b) {
      const double u = nu > 1 ? u0 + (u1 - u0) * a / (nu - 1) : u0;
      const double v = nv > 1 ? v0 + (v1 - v0) * b / (nv - 1) : v0;
      const FundamentalForms ff = fundamental_forms(s, h.surface, u, v, o);
      const double c = detail::pair_checked(s, h.z, ff.jet.F);
      const Eigen::Vector2d dh(s.pair(ff.jet.Fu, h.z) / c, s.pair(ff.jet.Fv, h.z) / c);
      const Eigen::Vector2d grad = ff.g.inverse() * dh;
      const double gq = grad.dot(ff.g * grad);
      Eigen::Matrix2d H;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          H(i, j) = ff.g(i, j) + s.pair(ff.II[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], h.z) / c -
                    dh[i] * dh[j];
      double crit;
      if (dh.norm() < 1e-14) {
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix2d> es(H, ff.g);
        crit = es.eigenvalues()[0];
      } else {
        Eigen::Vector2d X(-dh[1], dh[0]);
        X /= std::sqrt(X.dot(ff.g * X));
        crit = X.dot(H * X);
      }
      rep.min_critical_hessian = std::min(rep.min_critical_hessian, crit);
      double bmin = std::numeric_limits<double>::infinity(), bmax2 = 0.0;
      for (int k = 0; k < directions; ++k) {
        const double th = std::numbers::pi * k / directions;
        Eigen::Vector2d X(std::cos(th), std::sin(th));
        X /= std::sqrt(X.dot(ff.g * X));
        const VectorE II = X[0] * X[0] * ff.II[0][0] + 2.0 * X[0] * X[1] * ff.II[0][1] + X[1] * X[1] * ff.II[1][1];
        const double beta = s.pair(II, h.z) / c;
        bmin = std::min(bmin, beta);
        bmax2 = std::max(bmax2, beta * beta);
      }
      rep.min_beta = std::min(rep.min_beta, bmin);
      rep.min_grad_q = std::min(rep.min_grad_q, gq);
      rep.max_grad_q = std::max(rep.max_grad_q, gq);
      if (gq >= 1.0) {
        const double K = gauss_curvature(s, h.surface, u, v, o);
        rep.max_beta_excess = std::max(rep.max_beta_excess, bmax2 - (gq - 1.0) * (1.0 + K));
        ++rep.inequality_points;
      }
      ++rep.points;
    }
  return rep;
}

// Turning-angle sign consistency of a polyline (closed or open): the largest
// turn against the dominant orientation, 0 for a convex curve.
inline double convexity_defect(const std::vector<Eigen::Vector2d>& line) {
  double pos = 0.0, neg = 0.0, worst_pos = 0.0, worst_neg = 0.0;
  for (std::size_t i = 1; i + 1 < line.size(); ++i) {
    const Eigen::Vector2d a = line[i] - line[i - 1], b = line[i + 1] - line[i];
    if (a.norm() < 1e-14 || b.norm() < 1e-14) continue;
    const double turn = std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
    if (turn > 0) {
      pos += turn;
      worst_pos = std::max(worst_pos, turn);
    } else {
      neg -= turn;
      worst_neg = std::max(worst_neg, -turn);
    }
  }
  return pos >= neg ? worst_neg : worst_pos;
}

}  // namespace pseudohyp
