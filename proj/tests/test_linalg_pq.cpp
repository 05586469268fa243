#include <gtest/gtest.h>

#include "pseudohyp/einstein.hpp"
#include "pseudohyp/linalg_pq.hpp"
#include "pseudohyp/rng.hpp"

using namespace pseudohyp;

namespace {

VectorE random_vector(const QuadraticSpace& s, Rng& rng) {
  VectorE x(s.dim());
  for (int i = 0; i < s.dim(); ++i) x[i] = normal(rng);
  return x;
}

}  // namespace

TEST(QuadraticForm, HyperbolicCoordinates) {
  const QuadraticSpace s(1);
  VectorE x(4);
  x << 1, 0, 1, 0;
  EXPECT_DOUBLE_EQ(s.q(x), -1.0);
  EXPECT_EQ(s.q(s.zero()), 0.0);

  const QuadraticSpace s3(3);
  VectorE y(6);
  y << 1, 2, 3, 4, 5, 6;
  // -x1x3 - x2x4 - x5^2 - x6^2
  EXPECT_DOUBLE_EQ(s3.q(y), -3.0 - 8.0 - 25.0 - 36.0);
}

TEST(QuadraticForm, DimensionMismatchThrows) {
  const QuadraticSpace s(2);
  EXPECT_THROW(s.q(VectorE::Zero(4)), Error);
  EXPECT_THROW(s.pair(VectorE::Zero(5), VectorE::Zero(6)), Error);
  EXPECT_THROW(QuadraticSpace(0), Error);
}

TEST(QuadraticForm, SignatureOfWholeSpace) {
  for (auto kind : {BasisKind::Hyperbolic, BasisKind::Orthonormal})
    for (int n = 1; n <= 8; ++n) {
      const QuadraticSpace s(n, kind);
      std::vector<VectorE> basis;
      for (int i = 1; i <= s.dim(); ++i) basis.push_back(s.e(i));
      EXPECT_EQ(signature_of_span(s, basis), (Signature{2, n + 1, 0})) << n;
    }
}

TEST(QuadraticForm, HyperbolicBasisPairings) {
  for (auto kind : {BasisKind::Hyperbolic, BasisKind::Orthonormal}) {
    const QuadraticSpace s(2, kind);
    const HyperbolicBasis z = standard_hyperbolic_basis(s);
    EXPECT_NEAR(s.pair(z[0], z[2]), -0.25, 1e-15);
    EXPECT_NEAR(s.pair(z[1], z[3]), -0.25, 1e-15);
    EXPECT_NEAR(s.pair(z[0], z[1]), 0.0, 1e-15);
    EXPECT_NEAR(s.q(VectorE(z[0] + z[1] + z[2] + z[3])), -1.0, 1e-15);
  }
}

TEST(Signature, SpansOfCrownVectors) {
  const QuadraticSpace s(2);
  const HyperbolicBasis z = standard_hyperbolic_basis(s);
  EXPECT_EQ(signature_of_span(s, {z[0], z[2]}), (Signature{1, 1, 0}));
  EXPECT_EQ(signature_of_span(s, {z[0], z[1]}), (Signature{0, 0, 2}));
  EXPECT_EQ(signature_of_span(s, {z[0], z[1], z[2], z[3]}), (Signature{2, 2, 0}));
}

TEST(Signature, RepeatedVectorsCountRankOnly) {
  const QuadraticSpace s(2);
  const auto sig = signature_of_span(s, {s.e(5), VectorE(2.0 * s.e(5))});
  EXPECT_EQ(sig.pos + sig.neg + sig.null, 1);
  EXPECT_EQ(sig.neg, 1);
}

TEST(Cartan, Examples) {
  const QuadraticSpace s(2);
  const HyperbolicBasis z = standard_hyperbolic_basis(s);
  const CartanElement id = cartan_element(s, z, 1, 1);
  EXPECT_LT((id.element.m - MatrixE::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-14);

  const CartanElement a = cartan_element(s, z, 2, 3);
  EXPECT_LT((a * z[0] - 2.0 * z[0]).norm(), 1e-14);
  EXPECT_LT((a * z[3] - z[3] / 3.0).norm(), 1e-14);
  EXPECT_LT((a * s.e(5) - s.e(5)).norm(), 1e-14);
  EXPECT_LE(cartan_element(s, z, 5, 0.1).element.q_residual(s), 1e-12);
  EXPECT_THROW(cartan_element(s, z, 0, 1), Error);
  EXPECT_THROW(cartan_element(s, z, 1, -2), Error);
}

TEST(Cartan, Homomorphism) {
  const QuadraticSpace s(3);
  Rng rng(11);
  const HyperbolicBasis z = apply(random_isometry(s, rng), standard_hyperbolic_basis(s));
  const auto a = cartan_element(s, z, 1.7, 0.4), b = cartan_element(s, z, 0.3, 2.5);
  const auto ab = cartan_element(s, z, 1.7 * 0.3, 0.4 * 2.5);
  EXPECT_LT((a.element.m * b.element.m - ab.element.m).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Property, CartanPreservesPairing) {
  Rng rng(2024);
  for (int n : {1, 2, 4}) {
    const QuadraticSpace s(n);
    for (int trial = 0; trial < 40; ++trial) {
      const HyperbolicBasis z = apply(random_isometry(s, rng, 0.2), standard_hyperbolic_basis(s));
      const auto a = cartan_element(s, z, std::exp(uniform(rng, -3, 3)), std::exp(uniform(rng, -3, 3)));
      const VectorE x = random_vector(s, rng), y = random_vector(s, rng);
      const VectorE ax = a * x, ay = a * y;
      // rounding grows with the size of the moved vectors
      EXPECT_LE(std::abs(s.pair(ax, ay) - s.pair(x, y)), 1e-12 * (1.0 + ax.norm() * ay.norm()) * (1.0 + x.norm() * y.norm()));
    }
  }
}

TEST(Property, PairIsSymmetricBilinear) {
  Rng rng(7);
  for (auto kind : {BasisKind::Hyperbolic, BasisKind::Orthonormal}) {
    const QuadraticSpace s(3, kind);
    for (int trial = 0; trial < 200; ++trial) {
      const VectorE x = random_vector(s, rng), y = random_vector(s, rng), w = random_vector(s, rng);
      const double al = normal(rng), be = normal(rng);
      EXPECT_DOUBLE_EQ(s.pair(x, y), s.pair(y, x));
      EXPECT_NEAR(s.pair(x, x), s.q(x), 1e-13 * (1 + x.squaredNorm()));
      const double lhs = s.pair(VectorE(al * x + be * y), w);
      const double rhs = al * s.pair(x, w) + be * s.pair(y, w);
      EXPECT_LE(std::abs(lhs - rhs), 1e-13 * (1.0 + std::abs(al) * x.norm() + std::abs(be) * y.norm()) * w.norm());
      EXPECT_NEAR(s.pair(x, y), 0.5 * (s.q(VectorE(x + y)) - s.q(x) - s.q(y)), 1e-12 * (1 + x.norm() * y.norm()));
    }
  }
}

TEST(Property, SignatureIsIsometryInvariant) {
  Rng rng(99);
  const QuadraticSpace s(2);
  const HyperbolicBasis z = standard_hyperbolic_basis(s);
  const std::vector<std::vector<VectorE>> spans{
      {z[0], z[2]}, {z[0], z[1]}, {z[0], z[1], z[2]}, {z[0], z[1], z[2], z[3]}, {s.e(5), z[0]}, {VectorE(z[0] + z[1] + z[2] + z[3])}};
  for (int trial = 0; trial < 30; ++trial) {
    const GroupElement g = random_isometry(s, rng, 0.25);
    EXPECT_LE(g.q_residual(s), 1e-12);
    for (const auto& span : spans) {
      std::vector<VectorE> moved, perturbed;
      for (const auto& v : span) {
        moved.push_back(unit(g * v));
        VectorE p = unit(g * v);
        for (int i = 0; i < p.size(); ++i) p[i] += 1e-11 * normal(rng);
        perturbed.push_back(p);
      }
      EXPECT_EQ(signature_of_span(s, moved), signature_of_span(s, span));
      EXPECT_EQ(signature_of_span(s, perturbed), signature_of_span(s, span));
    }
  }
}
