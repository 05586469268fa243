#pragma once

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "pseudohyp/contour.hpp"
#include "pseudohyp/error.hpp"

namespace pseudohyp {

using cplx = std::complex<double>;

struct Zero {
  cplx location;
  int order = 1;
};

// phi(z) = a_0 + a_1 z + ... + a_N z^N.
class PolynomialQuartic {
 public:
  explicit PolynomialQuartic(std::vector<cplx> coeffs) : a_(std::move(coeffs)) {
    while (a_.size() > 1 && a_.back() == cplx(0)) a_.pop_back();
    if (a_.empty() || a_.back() == cplx(0)) throw Error(ErrorCode::Precondition, "leading coefficient must be nonzero");
    find_zeros();
  }

  static PolynomialQuartic monomial(int N) {
    std::vector<cplx> c(static_cast<std::size_t>(N + 1), cplx(0));
    c.back() = 1.0;
    return PolynomialQuartic(c);
  }

  int degree() const { return static_cast<int>(a_.size()) - 1; }
  const std::vector<cplx>& coeffs() const { return a_; }
  const std::vector<Zero>& zeros() const { return zeros_; }

  cplx operator()(cplx z) const {
    cplx r = a_.back();
    for (int k = degree() - 1; k >= 0; --k) r = r * z + a_[static_cast<std::size_t>(k)];
    return r;
  }

  cplx derivative(cplx z) const {
    cplx r = 0.0;
    for (int k = degree(); k >= 1; --k) r = r * z + static_cast<double>(k) * a_[static_cast<std::size_t>(k)];
    return r;
  }

  // |phi|^{1/4}, the length density of g4.
  double density(cplx z) const { return std::pow(std::abs((*this)(z)), 0.25); }

  // Max relative mismatch between the monic coefficients and prod (z - r)^k.
  double reconstruction_error() const {
    std::vector<cplx> prod{1.0};
    for (const auto& zr : zeros_)
      for (int m = 0; m < zr.order; ++m) {
        std::vector<cplx> next(prod.size() + 1, 0.0);
        for (std::size_t i = 0; i < prod.size(); ++i) {
          next[i + 1] += prod[i];
          next[i] -= zr.location * prod[i];
        }
        prod = next;
      }
    double err = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      const cplx c = a_[i] / a_.back();
      err = std::max(err, std::abs(c - prod[i]) / std::max(1.0, std::abs(c)));
    }
    return err;
  }

 private:
  void find_zeros() {
    const int N = degree();
    zeros_.clear();
    if (N == 0) return;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(N, N);
    for (int i = 1; i < N; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < N; ++i) comp(i, N - 1) = -a_[static_cast<std::size_t>(i)] / a_.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "companion eigenvalues failed");
    std::vector<cplx> roots;
    for (int i = 0; i < N; ++i) {
      cplx z = es.eigenvalues()[i];
      double pz = std::abs((*this)(z));
      for (int it = 0; it < 50 && pz > 0; ++it) {
        const cplx d = derivative(z);
        if (d == cplx(0)) break;
        const cplx zn = z - (*this)(z) / d;
        const double pn = std::abs((*this)(zn));
        if (!(pn < pz)) break;
        z = zn;
        pz = pn;
      }
      roots.push_back(z);
    }
    // single-linkage clustering
    std::vector<int> label(roots.size(), -1);
    int nl = 0;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (label[i] >= 0) continue;
      label[i] = nl;
      std::vector<std::size_t> stack{i};
      while (!stack.empty()) {
        const std::size_t k = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < roots.size(); ++j)
          if (label[j] < 0 && std::abs(roots[j] - roots[k]) <= 1e-6 * (1.0 + std::abs(roots[k]))) {
            label[j] = nl;
            stack.push_back(j);
          }
      }
      ++nl;
    }
    for (int l = 0; l < nl; ++l) {
      cplx sum = 0.0;
      int k = 0;
      for (std::size_t i = 0; i < roots.size(); ++i)
        if (label[i] == l) {
          sum += roots[i];
          ++k;
        }
      zeros_.push_back({sum / static_cast<double>(k), k});
    }
    std::sort(zeros_.begin(), zeros_.end(), [](const Zero& x, const Zero& y) {
      return x.location.real() != y.location.real() ? x.location.real() < y.location.real()
                                                    : x.location.imag() < y.location.imag();
    });
    if (reconstruction_error() > 1e-8)
      throw Error(ErrorCode::NoConvergence, "root clustering does not reproduce the coefficients");
  }

  std::vector<cplx> a_;
  std::vector<Zero> zeros_;
};

struct ConePoint {
  cplx location;
  int order = 1;
  double angle = 0.0;
};

inline std::vector<ConePoint> cone_data(const PolynomialQuartic& p) {
  std::vector<ConePoint> out;
  for (const auto& z : p.zeros()) out.push_back({z.location, z.order, (z.order + 4) * std::numbers::pi / 2.0});
  return out;
}

inline double total_curvature(const PolynomialQuartic& p) {
  double k = 0.0;
  for (const auto& c : cone_data(p)) k += 2.0 * std::numbers::pi - c.angle;
  return k;
}

struct QuasiIsometryBound {
  double R = 1.0;
  std::string description;
};

// Smallest power of two R with |a_{N-1}|/R + ... + |a_0|/R^N <= eps (monic).
inline QuasiIsometryBound quasi_isometry_bound(const PolynomialQuartic& p, double eps) {
  if (!(eps > 0)) throw Error(ErrorCode::NonPositiveParameter, "epsilon must be positive");
  const int N = p.degree();
  const auto& a = p.coeffs();
  auto lhs = [&](double R) {
    double s = 0.0;
    for (int k = 1; k <= N; ++k) s += std::abs(a[static_cast<std::size_t>(N - k)] / a.back()) / std::pow(R, k);
    return s;
  };
  double R = 1.0;
  while (lhs(R) > eps) {
    R *= 2.0;
    if (R > 0x1p60) throw Error(ErrorCode::NoConvergence, "no finite bound found");
  }
  return {R, "|phi(z)/z^N - 1| <= " + std::to_string(lhs(R)) + " <= eps for |z| >= R"};
}

// Arc-length parametrized ray from the apex of |z|^{N/2}|dz|^2.
inline cplx monomial_geodesic_ray(int N, double theta, double t) {
  if (t < 0) throw Error(ErrorCode::Precondition, "t must be nonnegative");
  const double k = (N + 4) / 4.0;
  return std::polar(std::pow(k * t, 1.0 / k), theta);
}

inline double monomial_circle_perimeter(int N, double r) {
  if (!(r > 0)) throw Error(ErrorCode::NonPositiveParameter, "radius must be positive");
  return std::numbers::pi / 2.0 * (N + 4) * r;
}

// g4-length of a parametrized curve.
inline double path_length(const PolynomialQuartic& p, const std::function<cplx(double)>& c,
                          const std::function<cplx(double)>& dc, double t0, double t1) {
  using boost::math::quadrature::gauss_kronrod;
  auto f = [&](double t) { return p.density(c(t)) * std::abs(dc(t)); };
  return gauss_kronrod<double, 31>::integrate(f, t0, t1, 15, 1e-14);
}

// Length of the circle {|z| = R} around 0 in g4, by quadrature.
inline double circle_length_quadrature(const PolynomialQuartic& p, double R) {
  return path_length(
      p, [R](double th) { return std::polar(R, th); }, [R](double th) { return std::polar(R, th + std::numbers::pi / 2); },
      0.0, 2.0 * std::numbers::pi);
}

inline double monomial_circle_perimeter_quadrature(int N, double r) {
  const double k = (N + 4) / 4.0;
  return circle_length_quadrature(PolynomialQuartic::monomial(N), std::pow(k * r, 1.0 / k));
}

inline double monomial_ray_length_quadrature(int N, double theta, double t) {
  const double k = (N + 4) / 4.0;
  auto c = [=](double s) { return monomial_geodesic_ray(N, theta, s); };
  auto dc = [=](double s) { return std::polar(std::pow(k * s, 1.0 / k - 1.0), theta); };
  return path_length(PolynomialQuartic::monomial(N), c, dc, 0.0, t);
}

// Flat cone of total angle Theta: points (rho, beta), beta modulo Theta.
struct ConeModel {
  double Theta = 2.0 * std::numbers::pi;

  // Representative of beta1 - beta2 in (-Theta/2, Theta/2].
  double wrap(double d) const {
    d = std::fmod(d, Theta);
    if (d > Theta / 2) d -= Theta;
    if (d <= -Theta / 2) d += Theta;
    return d;
  }

  double distance(double rho1, double beta1, double rho2, double beta2) const {
    const double db = std::abs(wrap(beta1 - beta2));
    if (db <= std::numbers::pi)
      return std::sqrt(std::max(0.0, rho1 * rho1 + rho2 * rho2 - 2.0 * rho1 * rho2 * std::cos(db)));
    return rho1 + rho2;
  }
};

inline ConeModel monomial_cone(int N) { return {(N + 4) * std::numbers::pi / 2.0}; }

struct MonomialPoint {
  double r = 0.0;      // g4-distance to the apex
  double alpha = 0.0;  // plane angle
};

inline MonomialPoint monomial_point_from_plane(int N, cplx z) {
  const double k = (N + 4) / 4.0;
  return {std::pow(std::abs(z), k) / k, std::arg(z)};
}

inline double monomial_distance(int N, const MonomialPoint& a, const MonomialPoint& b) {
  const double k = (N + 4) / 4.0;
  double da = std::fmod(std::abs(a.alpha - b.alpha), 2.0 * std::numbers::pi);
  da = std::min(da, 2.0 * std::numbers::pi - da);
  const ConeModel c = monomial_cone(N);
  return c.distance(a.r, 0.0, b.r, k * da);
}

// 16-neighbour graph on a square window; the density is tabulated on the
// half-step lattice so that every stencil edge has its Simpson midpoint.
class MetricGrid {
 public:
  MetricGrid(const PolynomialQuartic& p, cplx center, double half_width, int resolution)
      : p_(p), center_(center), L_(half_width), n_(resolution) {
    if (resolution < 3 || !(half_width > 0)) throw Error(ErrorCode::Precondition, "bad grid parameters");
    h_ = 2.0 * L_ / (n_ - 1);
    const int m = 2 * n_ - 1;
    dens_.resize(static_cast<std::size_t>(m) * m);
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i)
        dens_[static_cast<std::size_t>(j) * m + i] = p_.density(corner() + cplx(i * h_ / 2, j * h_ / 2));
  }

  int resolution() const { return n_; }
  double step() const { return h_; }
  cplx corner() const { return center_ - cplx(L_, L_); }
  cplx node(int i, int j) const { return corner() + cplx(i * h_, j * h_); }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * n_ + i; }
  const PolynomialQuartic& poly() const { return p_; }

  bool inside(cplx z) const {
    const cplx d = z - center_;
    return std::abs(d.real()) < L_ && std::abs(d.imag()) < L_;
  }

  static constexpr int kStencil = 16;
  static constexpr int dx[kStencil] = {1, 0, -1, 0, 1, -1, -1, 1, 2, 1, -1, -2, -2, -1, 1, 2};
  static constexpr int dy[kStencil] = {0, 1, 0, -1, 1, 1, -1, -1, 1, 2, 2, 1, -1, -2, -2, -1};

  double edge_weight(int i, int j, int k) const {
    const int m = 2 * n_ - 1;
    auto d = [&](int a, int b) { return dens_[static_cast<std::size_t>(b) * m + a]; };
    const int a = 2 * i, b = 2 * j;
    const double len = h_ * std::hypot(dx[k], dy[k]);
    return len * (d(a, b) + 4.0 * d(a + dx[k], b + dy[k]) + d(a + 2 * dx[k], b + 2 * dy[k])) / 6.0;
  }

  // Dijkstra from weighted sources (node index, initial distance).
  std::vector<double> distance_field(const std::vector<std::pair<std::size_t, double>>& sources) const {
    std::vector<double> dist(static_cast<std::size_t>(n_) * n_, std::numeric_limits<double>::infinity());
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (const auto& [idx, d0] : sources)
      if (d0 < dist[idx]) {
        dist[idx] = d0;
        pq.emplace(d0, idx);
      }
    while (!pq.empty()) {
      const auto [d, idx] = pq.top();
      pq.pop();
      if (d > dist[idx]) continue;
      const int i = static_cast<int>(idx % n_), j = static_cast<int>(idx / n_);
      for (int k = 0; k < kStencil; ++k) {
        const int a = i + dx[k], b = j + dy[k];
        if (a < 0 || b < 0 || a >= n_ || b >= n_) continue;
        const double nd = d + edge_weight(i, j, k);
        const std::size_t t = index(a, b);
        if (nd < dist[t]) {
          dist[t] = nd;
          pq.emplace(nd, t);
        }
      }
    }
    return dist;
  }

  // Straight segment length by composite Simpson.
  double segment_length(cplx a, cplx b, int panels = 16) const {
    const cplx d = b - a;
    double s = 0.0;
    for (int k = 0; k < panels; ++k) {
      const cplx z0 = a + d * (double(k) / panels), z1 = a + d * (double(k + 1) / panels);
      s += (p_.density(z0) + 4.0 * p_.density(0.5 * (z0 + z1)) + p_.density(z1)) / 6.0;
    }
    return s * std::abs(d) / panels;
  }

  // Corners of the cell containing z, with their attachment lengths.
  std::vector<std::pair<std::size_t, double>> attach(cplx z) const {
    if (!inside(z)) throw Error(ErrorCode::OutsideWindow, "point outside the grid window");
    const cplx w = (z - corner()) / h_;
    const int i = std::clamp(static_cast<int>(std::floor(w.real())), 0, n_ - 2);
    const int j = std::clamp(static_cast<int>(std::floor(w.imag())), 0, n_ - 2);
    std::vector<std::pair<std::size_t, double>> out;
    for (int b = 0; b < 2; ++b)
      for (int a = 0; a < 2; ++a) out.emplace_back(index(i + a, j + b), segment_length(z, node(i + a, j + b)));
    return out;
  }

  GridField field(const std::vector<double>& dist) const {
    GridField f;
    f.nx = f.ny = n_;
    f.x0 = corner().real();
    f.y0 = corner().imag();
    f.dx = f.dy = h_;
    f.values = dist;
    return f;
  }

 private:
  PolynomialQuartic p_;
  cplx center_;
  double L_;
  int n_;
  double h_;
  std::vector<double> dens_;
};

inline double grid_distance(const MetricGrid& g, cplx z1, cplx z2) {
  const auto src = g.attach(z1);
  const auto dst = g.attach(z2);
  const std::vector<double> dist = g.distance_field(src);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [idx, d0] : dst) best = std::min(best, dist[idx] + d0);
  const cplx w1 = (z1 - g.corner()) / g.step(), w2 = (z2 - g.corner()) / g.step();
  if (std::floor(w1.real()) == std::floor(w2.real()) && std::floor(w1.imag()) == std::floor(w2.imag()))
    best = std::min(best, g.segment_length(z1, z2));
  return best;
}

// Length of the level set {d = r} of a distance field, weighted by the density
// at segment midpoints.
inline double level_set_length(const MetricGrid& g, const GridField& f, double r) {
  double len = 0.0;
  for (const auto& s : marching_squares(f, r)) {
    const Eigen::Vector2d m = 0.5 * (s.a + s.b);
    len += (s.b - s.a).norm() * g.poly().density(cplx(m.x(), m.y()));
  }
  return len;
}

inline std::vector<double> perimeter_growth(const MetricGrid& g, cplx center, const std::vector<double>& radii) {
  const auto dist = g.distance_field(g.attach(center));
  const int n = g.resolution();
  double boundary_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k)
    boundary_min = std::min({boundary_min, dist[g.index(k, 0)], dist[g.index(k, n - 1)], dist[g.index(0, k)],
                             dist[g.index(n - 1, k)]});
  const GridField f = g.field(dist);
  std::vector<double> out;
  for (double r : radii) {
    if (!(r > 0)) throw Error(ErrorCode::NonPositiveParameter, "radius must be positive");
    if (r >= boundary_min) throw Error(ErrorCode::BallTouchesBoundary, "metric ball reaches the window boundary");
    out.push_back(level_set_length(g, f, r) / r);
  }
  return out;
}

}  // namespace pseudohyp
