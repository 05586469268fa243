#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <vector>

#include "pseudohyp/error.hpp"
#include "pseudohyp/rng.hpp"

namespace pseudohyp {

using VectorE = Eigen::VectorXd;
using MatrixE = Eigen::MatrixXd;

enum class BasisKind { Hyperbolic, Orthonormal };

// The space E of signature (2, n+1), dimension n+3.
class QuadraticSpace {
 public:
  explicit QuadraticSpace(int n = 2, BasisKind kind = BasisKind::Hyperbolic) : n_(n), kind_(kind) {
    if (n < 1 || n > 8) throw Error(ErrorCode::Precondition, "n must lie in 1..8");
    const int d = dim();
    gram_ = MatrixE::Zero(d, d);
    if (kind_ == BasisKind::Hyperbolic) {
      gram_(0, 2) = gram_(2, 0) = -0.5;
      gram_(1, 3) = gram_(3, 1) = -0.5;
      for (int i = 4; i < d; ++i) gram_(i, i) = -1.0;
    } else {
      gram_(0, 0) = gram_(1, 1) = 1.0;
      for (int i = 2; i < d; ++i) gram_(i, i) = -1.0;
    }
  }

  int n() const { return n_; }
  int dim() const { return n_ + 3; }
  BasisKind kind() const { return kind_; }
  const MatrixE& gram() const { return gram_; }

  void check(const VectorE& x) const {
    if (x.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "vector has wrong dimension");
  }

  double q(const VectorE& x) const {
    check(x);
    const int d = dim();
    double s = 0.0;
    if (kind_ == BasisKind::Hyperbolic) {
      s = -x[0] * x[2] - x[1] * x[3];
      for (int i = 4; i < d; ++i) s -= x[i] * x[i];
    } else {
      s = x[0] * x[0] + x[1] * x[1];
      for (int i = 2; i < d; ++i) s -= x[i] * x[i];
    }
    return s;
  }

  double pair(const VectorE& x, const VectorE& y) const {
    check(x);
    check(y);
    const int d = dim();
    double s = 0.0;
    if (kind_ == BasisKind::Hyperbolic) {
      s = -0.5 * (x[0] * y[2] + x[2] * y[0]) - 0.5 * (x[1] * y[3] + x[3] * y[1]);
      for (int i = 4; i < d; ++i) s -= x[i] * y[i];
    } else {
      s = x[0] * y[0] + x[1] * y[1];
      for (int i = 2; i < d; ++i) s -= x[i] * y[i];
    }
    return s;
  }

  // 1-based coordinate vector e_i.
  VectorE e(int i) const {
    VectorE v = VectorE::Zero(dim());
    v[i - 1] = 1.0;
    return v;
  }

  VectorE zero() const { return VectorE::Zero(dim()); }

 private:
  int n_;
  BasisKind kind_;
  MatrixE gram_;
};

inline double q_form(const QuadraticSpace& s, const VectorE& x) { return s.q(x); }
inline double pair(const QuadraticSpace& s, const VectorE& x, const VectorE& y) { return s.pair(x, y); }

struct Signature {
  int pos = 0;
  int neg = 0;
  int null = 0;
  bool operator==(const Signature&) const = default;
};

// Signature of q restricted to span(vectors). The span is given a Euclidean
// orthonormal basis first, so the Gram table is unit-normalized.
inline Signature signature_of_span(const QuadraticSpace& s, const std::vector<VectorE>& vectors,
                                   double tol = 1e-9) {
  if (vectors.empty()) throw Error(ErrorCode::Precondition, "empty vector list");
  const int d = s.dim();
  MatrixE a(d, static_cast<int>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    s.check(vectors[j]);
    const double nrm = vectors[j].norm();
    a.col(static_cast<int>(j)) = nrm > 0 ? VectorE(vectors[j] / nrm) : vectors[j];
  }
  Eigen::JacobiSVD<MatrixE> svd(a, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > 1e-10 * std::max(1.0, sv[0])) ++rank;
  Signature sig;
  if (rank == 0) return sig;
  const MatrixE b = svd.matrixU().leftCols(rank);
  const MatrixE g = b.transpose() * s.gram() * b;
  Eigen::SelfAdjointEigenSolver<MatrixE> es(g, Eigen::EigenvaluesOnly);
  for (int i = 0; i < rank; ++i) {
    const double ev = es.eigenvalues()[i];
    if (ev > tol) ++sig.pos;
    else if (ev < -tol) ++sig.neg;
    else ++sig.null;
  }
  return sig;
}

// Element of O(q) in ambient coordinates.
struct GroupElement {
  MatrixE m;

  VectorE operator*(const VectorE& x) const { return m * x; }
  GroupElement operator*(const GroupElement& o) const { return {m * o.m}; }
  GroupElement inverse() const { return {m.inverse()}; }

  // max |pair(Mx,My) - pair(x,y)| over basis pairs, i.e. |M^T G M - G|_max.
  double q_residual(const QuadraticSpace& s) const {
    return (m.transpose() * s.gram() * m - s.gram()).cwiseAbs().maxCoeff();
  }
};

inline GroupElement identity_element(const QuadraticSpace& s) {
  return {MatrixE::Identity(s.dim(), s.dim())};
}

// Cayley transform of a random Lie algebra element G^{-1}A, A antisymmetric.
inline GroupElement random_isometry(const QuadraticSpace& s, Rng& rng, double scale = 0.3) {
  const int d = s.dim();
  MatrixE a = MatrixE::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      a(i, j) = scale * normal(rng);
      a(j, i) = -a(i, j);
    }
  const MatrixE x = s.gram().inverse() * a;
  const MatrixE id = MatrixE::Identity(d, d);
  return {(id - x).partialPivLu().solve(id + x)};
}

struct HyperbolicBasis {
  std::array<VectorE, 4> z;
  const VectorE& operator[](int i) const { return z[static_cast<std::size_t>(i)]; }
};

// q-orthonormal basis (q = -1 each) of the q-orthogonal complement of span(z1..z4).
inline MatrixE negative_complement(const QuadraticSpace& s, const HyperbolicBasis& b) {
  const int d = s.dim();
  MatrixE zt(4, d);
  for (int i = 0; i < 4; ++i) zt.row(i) = (s.gram() * b[i]).transpose();
  Eigen::JacobiSVD<MatrixE> svd(zt, Eigen::ComputeFullV);
  MatrixE w = svd.matrixV().rightCols(d - 4);
  for (int j = 0; j < w.cols(); ++j) {
    VectorE c = w.col(j);
    for (int k = 0; k < j; ++k) c += s.pair(c, w.col(k)) * VectorE(w.col(k));  // q(w_k) = -1
    const double qc = s.q(c);
    if (!(qc < 0)) throw Error(ErrorCode::DegeneratePairing, "complement is not negative definite");
    w.col(j) = c / std::sqrt(-qc);
  }
  return w;
}

// a(lambda, mu) = diag(lambda, mu, 1/lambda, 1/mu, I) in the basis (z1..z4, complement).
struct CartanElement {
  double lambda = 1.0;
  double mu = 1.0;
  MatrixE basis;
  GroupElement element;

  VectorE operator*(const VectorE& x) const { return element.m * x; }
};

inline CartanElement cartan_element(const QuadraticSpace& s, const HyperbolicBasis& b, double lambda,
                                    double mu) {
  if (!(lambda > 0) || !(mu > 0))
    throw Error(ErrorCode::NonPositiveParameter, "Cartan parameters must be positive");
  const int d = s.dim();
  MatrixE basis(d, d);
  for (int i = 0; i < 4; ++i) basis.col(i) = b[i];
  if (d > 4) basis.rightCols(d - 4) = negative_complement(s, b);
  VectorE diag = VectorE::Ones(d);
  diag[0] = lambda;
  diag[1] = mu;
  diag[2] = 1.0 / lambda;
  diag[3] = 1.0 / mu;
  const MatrixE m = basis * diag.asDiagonal() * basis.inverse();
  return {lambda, mu, basis, {m}};
}

}  // namespace pseudohyp
