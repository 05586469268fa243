#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "pseudohyp/linalg_pq.hpp"
#include "pseudohyp/rng.hpp"

namespace pseudohyp {

// Representative of an isotropic line.
struct EinPoint {
  VectorE v;
};

inline EinPoint make_ein_point(const QuadraticSpace& s, const VectorE& v, double tol = 1e-10) {
  s.check(v);
  const double n2 = v.squaredNorm();
  if (!(n2 > 0)) throw Error(ErrorCode::Precondition, "zero vector is not a point of Ein");
  if (std::abs(s.q(v)) > tol * n2) throw Error(ErrorCode::Precondition, "vector is not isotropic");
  return {v};
}

inline VectorE unit(const VectorE& v) { return v / v.norm(); }

inline double chordal(const VectorE& a, const VectorE& b) {
  const VectorE ua = unit(a), ub = unit(b);
  return std::min((ua - ub).norm(), (ua + ub).norm());
}

inline bool projectively_equal(const VectorE& a, const VectorE& b, double tol = 1e-12) {
  return chordal(a, b) <= tol;
}

struct Photon {
  EinPoint p;
  EinPoint q;
  VectorE at(double t) const { return (1.0 - t) * p.v + t * q.v; }
};

inline Photon photon_through(const QuadraticSpace& s, const EinPoint& p, const EinPoint& q, double tol = 1e-9) {
  if (projectively_equal(p.v, q.v, 1e-12)) throw Error(ErrorCode::Precondition, "points are not distinct");
  const Signature sig = signature_of_span(s, {p.v, q.v}, tol);
  if (!(sig == Signature{0, 0, 2})) throw Error(ErrorCode::NotIsotropicPlane, "span is not totally isotropic");
  return {p, q};
}

// Rescales z3, z4 so that <z1,z3> = <z2,z4> = -1/4.
inline HyperbolicBasis make_hyperbolic_basis(const QuadraticSpace& s, const VectorE& w1, const VectorE& w2,
                                             const VectorE& w3, const VectorE& w4, double tol = 1e-10) {
  const std::array<VectorE, 4> w{w1, w2, w3, w4};
  for (int i = 0; i < 4; ++i) {
    const VectorE& a = w[static_cast<std::size_t>(i)];
    const VectorE& b = w[static_cast<std::size_t>((i + 1) % 4)];
    const double scale = a.norm() * b.norm();
    if (std::abs(s.q(a)) > tol * a.squaredNorm() || std::abs(s.pair(a, b)) > tol * scale)
      throw Error(ErrorCode::NotIsotropicPlane, "consecutive vectors do not span a photon");
  }
  const double p13 = s.pair(w1, w3), p24 = s.pair(w2, w4);
  if (std::abs(p13) < tol * w1.norm() * w3.norm() || std::abs(p24) < tol * w2.norm() * w4.norm())
    throw Error(ErrorCode::DegeneratePairing, "opposite vectors are not transverse");
  return {{w1, w2, VectorE(-w3 / (4.0 * p13)), VectorE(-w4 / (4.0 * p24))}};
}

// z_i = e_i / sqrt(2) in hyperbolic coordinates (pairings -1/4); the analogous
// null combinations in orthonormal coordinates.
inline HyperbolicBasis standard_hyperbolic_basis(const QuadraticSpace& s) {
  if (s.kind() == BasisKind::Hyperbolic) {
    const double c = 1.0 / std::sqrt(2.0);
    return {{VectorE(c * s.e(1)), VectorE(c * s.e(2)), VectorE(c * s.e(3)), VectorE(c * s.e(4))}};
  }
  const double a = 1.0 / (2.0 * std::sqrt(2.0));
  return {{VectorE(a * (s.e(1) + s.e(3))), VectorE(a * (s.e(2) + s.e(4))), VectorE(a * (s.e(3) - s.e(1))),
           VectorE(a * (s.e(4) - s.e(2)))}};
}

inline double hyperbolic_basis_residual(const QuadraticSpace& s, const HyperbolicBasis& b) {
  double r = 0.0;
  for (int i = 0; i < 4; ++i) {
    r = std::max(r, std::abs(s.q(b[i])));
    r = std::max(r, std::abs(s.pair(b[i], b[(i + 1) % 4])));
  }
  r = std::max(r, std::abs(s.pair(b[0], b[2]) + 0.25));
  r = std::max(r, std::abs(s.pair(b[1], b[3]) + 0.25));
  return r;
}

inline HyperbolicBasis apply(const GroupElement& g, const HyperbolicBasis& b) {
  return {{g * b[0], g * b[1], g * b[2], g * b[3]}};
}

struct LightlikePolygon {
  std::vector<VectorE> vertices;  // as given; lifted vertex i is lift_signs[i] * vertices[i]
  std::vector<int> lift_signs;

  std::size_t size() const { return vertices.size(); }
  VectorE lifted(std::size_t i) const {
    const std::size_t k = i % vertices.size();
    return static_cast<double>(lift_signs[k]) * vertices[k];
  }
};

// Closed loop given by cyclic samples (no repeated endpoint). When the loop is
// polygonal, `vertices` holds the coherently lifted vertices.
struct SampledLoop {
  std::vector<VectorE> samples;
  int resolution = 0;
  std::vector<VectorE> vertices;
};

inline SampledLoop sample_polygon(const LightlikePolygon& p, int samples_per_edge = 64) {
  SampledLoop loop;
  loop.resolution = samples_per_edge;
  const std::size_t m = p.size();
  for (std::size_t i = 0; i < m; ++i) {
    const VectorE a = p.lifted(i), b = p.lifted(i + 1);
    loop.vertices.push_back(unit(a));
    for (int k = 0; k < samples_per_edge; ++k) {
      const double t = static_cast<double>(k) / samples_per_edge;
      loop.samples.push_back(unit((1.0 - t) * a + t * b));
    }
  }
  return loop;
}

struct SemiPositivityReport {
  bool ok = false;
  std::vector<std::array<int, 3>> bad_triples;  // first few violations
  std::size_t bad_count = 0;
  std::optional<std::array<int, 3>> witness_positive_triple;
};

// Triples spanning (1,2) are forbidden; one spanning (2,1) must exist.
inline SemiPositivityReport validate_semi_positive(const QuadraticSpace& s, const SampledLoop& loop,
                                                   double tol = 1e-9, std::size_t max_reported = 16) {
  const int m = static_cast<int>(loop.samples.size());
  if (m < 8) throw Error(ErrorCode::Precondition, "need at least 8 samples");
  std::vector<VectorE> u(loop.samples.size());
  for (int i = 0; i < m; ++i) u[static_cast<std::size_t>(i)] = unit(loop.samples[static_cast<std::size_t>(i)]);
  Eigen::MatrixXd gq(m, m), ge(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      gq(i, j) = gq(j, i) = s.pair(u[static_cast<std::size_t>(i)], u[static_cast<std::size_t>(j)]);
      ge(i, j) = ge(j, i) = u[static_cast<std::size_t>(i)].dot(u[static_cast<std::size_t>(j)]);
    }
  SemiPositivityReport rep;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        Eigen::Matrix3d e, g;
        e << ge(i, i), ge(i, j), ge(i, k), ge(j, i), ge(j, j), ge(j, k), ge(k, i), ge(k, j), ge(k, k);
        if (e.determinant() < 1e-12) continue;  // span of dimension < 3
        g << gq(i, i), gq(i, j), gq(i, k), gq(j, i), gq(j, j), gq(j, k), gq(k, i), gq(k, j), gq(k, k);
        es.computeDirect(g, Eigen::EigenvaluesOnly);
        int pos = 0, neg = 0;
        for (int r = 0; r < 3; ++r) {
          if (es.eigenvalues()[r] > tol) ++pos;
          else if (es.eigenvalues()[r] < -tol) ++neg;
        }
        if (pos == 1 && neg == 2) {
          if (rep.bad_triples.size() < max_reported) rep.bad_triples.push_back({i, j, k});
          ++rep.bad_count;
        } else if (pos == 2 && neg == 1 && !rep.witness_positive_triple) {
          rep.witness_positive_triple = std::array<int, 3>{i, j, k};
        }
      }
  rep.ok = rep.bad_count == 0 && rep.witness_positive_triple.has_value();
  return rep;
}

// Signs making every non-adjacent vertex pairing negative, propagated over the
// transversality graph from vertex 0 (vertices of other components keep their
// given sign). Throws when no coherent choice exists.
inline std::vector<int> coherent_lift(const QuadraticSpace& s, const std::vector<VectorE>& v,
                                      std::vector<int> signs = {}) {
  const std::size_t m = v.size();
  if (signs.empty()) signs.assign(m, 1);
  auto adjacent = [m](std::size_t i, std::size_t j) { return (i + 1) % m == j || (j + 1) % m == i; };
  std::vector<bool> seen(m, false);
  for (std::size_t root = 0; root < m; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < m; ++j) {
        if (j == i || seen[j] || adjacent(i, j)) continue;
        const double p = s.pair(v[i], v[j]) * signs[i];
        if (std::abs(p) < 1e-12 * v[i].norm() * v[j].norm()) continue;
        signs[j] = p < 0 ? 1 : -1;
        seen[j] = true;
        stack.push_back(j);
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (!adjacent(i, j) && signs[i] * signs[j] * s.pair(v[i], v[j]) > 1e-12 * v[i].norm() * v[j].norm())
        throw Error(ErrorCode::Precondition, "no coherent lift exists");
  return signs;
}

struct PolygonReport {
  bool ok = false;
  std::string reason;
  double max_edge_pair = 0.0;
  SemiPositivityReport semi;
};

// Checks the lightlike-polygon invariants: photons on consecutive vertices,
// transversality otherwise, pair <= 0 on samples of distinct edges, semi-positivity.
inline PolygonReport validate_polygon(const QuadraticSpace& s, const LightlikePolygon& p, int samples_per_edge = 16,
                                      double tol = 1e-10) {
  PolygonReport rep;
  const std::size_t m = p.size();
  if (m < 4 || p.lift_signs.size() != m) {
    rep.reason = "need at least four vertices with lift signs";
    return rep;
  }
  for (std::size_t i = 0; i < m; ++i) {
    try {
      make_ein_point(s, p.vertices[i]);
    } catch (const Error&) {
      rep.reason = "vertex " + std::to_string(i) + " is not isotropic";
      return rep;
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const bool adj = (i + 1) % m == j || (j + 1) % m == i;
      const Signature sig = signature_of_span(s, {p.vertices[i], p.vertices[j]});
      if (adj && !(sig == Signature{0, 0, 2})) {
        rep.reason = "edge " + std::to_string(i) + "-" + std::to_string(j) + " is not a photon";
        return rep;
      }
      if (!adj && !(sig == Signature{1, 1, 0})) {
        rep.reason = "vertices " + std::to_string(i) + "," + std::to_string(j) + " are not transverse";
        return rep;
      }
    }
  const int k = samples_per_edge;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (int a = 0; a <= k; ++a)
        for (int b = 0; b <= k; ++b) {
          const double t = static_cast<double>(a) / k, r = static_cast<double>(b) / k;
          const VectorE x = unit((1 - t) * p.lifted(i) + t * p.lifted(i + 1));
          const VectorE y = unit((1 - r) * p.lifted(j) + r * p.lifted(j + 1));
          rep.max_edge_pair = std::max(rep.max_edge_pair, s.pair(x, y));
        }
  if (rep.max_edge_pair > tol) {
    rep.reason = "edge samples pair positively in the given lift";
    return rep;
  }
  rep.semi = validate_semi_positive(s, sample_polygon(p, k));
  if (!rep.semi.ok) {
    rep.reason = "semi-positivity sample test failed";
    return rep;
  }
  rep.ok = true;
  return rep;
}

struct BarbotCrown {
  HyperbolicBasis basis;
  LightlikePolygon polygon;
};

inline BarbotCrown crown_from_basis(const QuadraticSpace& s, const HyperbolicBasis& b) {
  if (hyperbolic_basis_residual(s, b) > 1e-10 * std::max(1.0, b[0].squaredNorm() + b[2].squaredNorm()))
    throw Error(ErrorCode::Precondition, "not a hyperbolic basis");
  return {b, {{b[0], b[1], b[2], b[3]}, {1, 1, 1, 1}}};
}

// Fourth crown vertex: isotropic, orthogonal to v1 and v3, transverse to v2,
// lifted so that pair(v4, v2) < 0. `w` holds coordinates in a q-orthonormal
// basis of the (n-1)-dimensional family (empty means zero).
inline EinPoint complete_crown(const QuadraticSpace& s, const EinPoint& v1, const EinPoint& v2, const EinPoint& v3,
                               const VectorE& w = VectorE()) {
  const double tol = 1e-9;
  if (!(signature_of_span(s, {v1.v, v2.v}, tol) == Signature{0, 0, 2}) ||
      !(signature_of_span(s, {v2.v, v3.v}, tol) == Signature{0, 0, 2}))
    throw Error(ErrorCode::Precondition, "v1v2 and v2v3 must be photons");
  if (!(signature_of_span(s, {v1.v, v3.v}, tol) == Signature{1, 1, 0}))
    throw Error(ErrorCode::Precondition, "v1 and v3 must be transverse");
  const int d = s.dim();
  MatrixE c(2, d);
  c.row(0) = (s.gram() * v1.v).transpose();
  c.row(1) = (s.gram() * v3.v).transpose();
  Eigen::JacobiSVD<MatrixE> svd(c, Eigen::ComputeFullV);
  const MatrixE bw = svd.matrixV().rightCols(d - 2);  // (v1 + v3)^perp
  const VectorE a = bw.transpose() * (s.gram() * v2.v);
  if (a.norm() < 1e-12 * v2.v.norm())
    throw Error(ErrorCode::DegeneratePairing, "no vector of (v1+v3)^perp is transverse to v2");
  const VectorE y = bw * (a / a.squaredNorm());  // minimal norm with pair(y, v2) = 1

  MatrixE cu(2, d - 2);
  cu.row(0) = (bw.transpose() * (s.gram() * v2.v)).transpose();
  cu.row(1) = (bw.transpose() * (s.gram() * y)).transpose();
  Eigen::JacobiSVD<MatrixE> svd2(cu, Eigen::ComputeFullV);
  MatrixE ub = bw * svd2.matrixV().rightCols(d - 4);
  for (int j = 0; j < ub.cols(); ++j) {
    VectorE col = ub.col(j);
    for (int k = 0; k < j; ++k) col += s.pair(col, ub.col(k)) * VectorE(ub.col(k));
    const double qc = s.q(col);
    if (!(qc < 0)) throw Error(ErrorCode::DegeneratePairing, "family complement is not negative definite");
    ub.col(j) = col / std::sqrt(-qc);
  }
  VectorE sv = VectorE::Zero(d);
  if (w.size() > 0) {
    if (w.size() != ub.cols()) throw Error(ErrorCode::DimensionMismatch, "family parameter must have n-1 entries");
    sv = ub * w;
  }
  const double t = -(s.q(y) + s.q(sv)) / 2.0;
  VectorE v4 = y + t * v2.v + sv;
  if (s.pair(v4, v2.v) > 0) v4 = -v4;
  return {v4};
}

inline SampledLoop cartan_orbit(const CartanElement& a, const SampledLoop& loop) {
  SampledLoop out;
  out.resolution = loop.resolution;
  out.samples.reserve(loop.samples.size());
  for (const auto& x : loop.samples) out.samples.push_back(unit(a * x));
  for (const auto& x : loop.vertices) out.vertices.push_back(unit(a * x));
  return out;
}

// Chordal distance from [x] to the photon segment {[(1-t)p + tq] : t in [0,1]}.
inline double chordal_to_segment(const VectorE& x, const VectorE& p, const VectorE& q) {
  const VectorE ux = unit(x);
  const VectorE ea = unit(p);
  VectorE eb = q - q.dot(ea) * ea;
  const double nb = eb.norm();
  if (nb < 1e-15 * q.norm()) return chordal(x, p);
  eb /= nb;
  const double phi = std::atan2(q.dot(eb), q.dot(ea));  // in (0, pi)
  const double th0 = std::atan2(ux.dot(eb), ux.dot(ea));
  auto at = [&](double th) {
    const VectorE y = std::cos(th) * ea + std::sin(th) * eb;
    return std::min((ux - y).norm(), (ux + y).norm());
  };
  double best = std::min(at(0.0), at(phi));
  for (int k = -2; k <= 2; ++k) {
    const double th = th0 + k * std::numbers::pi;
    if (th >= 0.0 && th <= phi) best = std::min(best, at(th));
  }
  return best;
}

namespace detail {

inline std::vector<std::pair<VectorE, VectorE>> loop_segments(const SampledLoop& l) {
  const auto& pts = l.vertices.empty() ? l.samples : l.vertices;
  std::vector<std::pair<VectorE, VectorE>> seg;
  for (std::size_t i = 0; i < pts.size(); ++i) seg.emplace_back(pts[i], pts[(i + 1) % pts.size()]);
  return seg;
}

inline double one_sided(const SampledLoop& from, const SampledLoop& to) {
  const auto seg = loop_segments(to);
  double h = 0.0;
  for (const auto& x : from.samples) {
    double dmin = std::numeric_limits<double>::infinity();
    for (const auto& [p, q] : seg) dmin = std::min(dmin, chordal_to_segment(x, p, q));
    h = std::max(h, dmin);
  }
  return h;
}

}  // namespace detail

// Symmetric Hausdorff distance in the chordal metric, measured from the samples
// of each loop to the other loop's curve (its exact photon segments when
// polygonal, otherwise the arcs between consecutive samples).
inline double loop_distance(const SampledLoop& a, const SampledLoop& b) {
  return std::max(detail::one_sided(a, b), detail::one_sided(b, a));
}

struct ScheduleStep {
  double lambda = 1.0;
  double mu = 1.0;
};

inline void validate_schedule(const std::vector<ScheduleStep>& sched, double bound = 1e3) {
  if (sched.size() < 2) throw Error(ErrorCode::InvalidSchedule, "schedule needs at least two steps");
  for (std::size_t k = 0; k < sched.size(); ++k) {
    const auto& st = sched[k];
    if (!(st.lambda > 0) || !(st.mu > 0)) throw Error(ErrorCode::InvalidSchedule, "parameters must be positive");
    if (k > 0 && st.mu > sched[k - 1].mu) throw Error(ErrorCode::InvalidSchedule, "mu must decrease toward 0");
    if (st.lambda * st.mu > bound) throw Error(ErrorCode::InvalidSchedule, "lambda*mu exceeds the bound");
    if (st.mu / st.lambda > bound) throw Error(ErrorCode::InvalidSchedule, "mu/lambda exceeds the bound");
  }
  if (!(sched.back().mu < sched.front().mu)) throw Error(ErrorCode::InvalidSchedule, "mu does not decrease");
}

inline std::vector<ScheduleStep> geometric_schedule(double ratio, int steps) {
  std::vector<ScheduleStep> s;
  for (int k = 0; k <= steps; ++k) s.push_back({1.0, std::pow(ratio, k)});
  return s;
}

inline std::vector<double> renormalization_experiment(const QuadraticSpace& s, const SampledLoop& loop,
                                                      const SampledLoop& crown, const HyperbolicBasis& basis,
                                                      const std::vector<ScheduleStep>& sched, double bound = 1e3) {
  validate_schedule(sched, bound);
  std::vector<double> d;
  d.reserve(sched.size());
  for (const auto& st : sched) d.push_back(loop_distance(cartan_orbit(cartan_element(s, basis, st.lambda, st.mu), loop), crown));
  return d;
}

// Crown through the first three vertices of a polygon, completed with default w;
// the returned basis is the one a(lambda, mu) is diagonal in.
inline BarbotCrown osculating_crown(const QuadraticSpace& s, const LightlikePolygon& p) {
  const VectorE v1 = p.lifted(0), v2 = p.lifted(1), v3 = p.lifted(2);
  const EinPoint v4 = complete_crown(s, {v1}, {v2}, {v3});
  const HyperbolicBasis b = make_hyperbolic_basis(s, v1, v2, v3, v4.v);
  return crown_from_basis(s, b);
}

// N-gon by replacing the crown vertex e4 with a lightlike staircase of N-3
// vertices in the affine chart around e4 (hyperbolic coordinates). Each new
// vertex is e4 + a e1 + c e3 + d e2 + b, d = -a c - |b|^2; consecutive steps
// have |db|^2 = -da dc with alternating sign of db.
inline LightlikePolygon build_polygon(const QuadraticSpace& s, int n_vertices, std::uint64_t seed = 1,
                                      double perturbation = 0.2) {
  if (s.kind() != BasisKind::Hyperbolic) throw Error(ErrorCode::Unsupported, "builder works in hyperbolic coordinates");
  if (n_vertices < 4) throw Error(ErrorCode::Precondition, "a lightlike polygon has at least four vertices");
  if (n_vertices > 4 && s.n() < 2) throw Error(ErrorCode::Unsupported, "n >= 2 needed for more than four vertices");
  const int k = n_vertices - 3;
  const int nb = s.n() - 1;
  Rng rng(seed);
  for (int attempt = 0; attempt < 30; ++attempt, perturbation *= 0.5) {
    std::vector<double> al(static_cast<std::size_t>(k)), ga(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      const double base = k == 1 ? 0.0 : static_cast<double>(i) / (k - 1);
      const bool interior = i > 0 && i < k - 1;
      const double step = k > 1 ? 1.0 / (k - 1) : 0.0;
      al[static_cast<std::size_t>(i)] = base + (interior ? perturbation * step * uniform(rng, -0.5, 0.5) : 0.0);
      ga[static_cast<std::size_t>(i)] = 1.0 - base + (interior ? perturbation * step * uniform(rng, -0.5, 0.5) : 0.0);
    }
    if (k == 1) al[0] = ga[0] = 0.0;
    bool monotone = true;
    for (int i = 1; i < k; ++i)
      monotone = monotone && al[static_cast<std::size_t>(i)] > al[static_cast<std::size_t>(i - 1)] &&
                 ga[static_cast<std::size_t>(i)] < ga[static_cast<std::size_t>(i - 1)];
    if (!monotone) continue;
    std::vector<VectorE> b(static_cast<std::size_t>(k), VectorE::Zero(std::max(nb, 0)));
    VectorE sum = VectorE::Zero(std::max(nb, 0));
    for (int i = 1; i < k; ++i) {
      const double da = al[static_cast<std::size_t>(i)] - al[static_cast<std::size_t>(i - 1)];
      const double dc = ga[static_cast<std::size_t>(i)] - ga[static_cast<std::size_t>(i - 1)];
      VectorE dir = VectorE::Zero(nb);
      dir[0] = 1.0;
      for (int j = 1; j < nb; ++j) dir[j] = perturbation * uniform(rng, -0.5, 0.5);
      dir.normalize();
      const VectorE db = ((i % 2) ? 1.0 : -1.0) * std::sqrt(-da * dc) * dir;
      b[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i - 1)] + db;
      sum += b[static_cast<std::size_t>(i)];
    }
    if (k > 1) {
      const VectorE shift = sum / k;
      for (auto& bi : b) bi -= shift;
    }
    LightlikePolygon p;
    p.vertices = {s.e(1), s.e(2), s.e(3)};
    for (int i = 0; i < k; ++i) {
      const double a = al[static_cast<std::size_t>(i)], c = ga[static_cast<std::size_t>(i)];
      const VectorE& bi = b[static_cast<std::size_t>(i)];
      VectorE w = s.e(4) + a * s.e(1) + c * s.e(3) + (-a * c - bi.squaredNorm()) * s.e(2);
      for (int j = 0; j < nb; ++j) w[4 + j] = bi[j];
      p.vertices.push_back(w);
    }
    p.lift_signs.assign(p.vertices.size(), 1);
    if (validate_polygon(s, p).ok) return p;
  }
  throw Error(ErrorCode::NoConvergence, "polygon builder failed to produce a valid polygon");
}

}  // namespace pseudohyp
