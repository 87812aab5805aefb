#include <gtest/gtest.h>

#include <cmath>

#include "liebih/algebras.hpp"
#include "liebih/numeric.hpp"
#include "support/random.hpp"

using namespace liebih;
using liebih::testkit::Rng;
namespace tk = liebih::testkit;

TEST(Nullspace, ZeroMatrixIsEverything) {
  const auto ns = numeric::nullspace(Matrix<double>::Zero(3, 3));
  EXPECT_EQ(ns.cols(), 3);
}

TEST(Nullspace, IdentityIsEmpty) {
  EXPECT_EQ(numeric::nullspace(Matrix<double>::Identity(3, 3)).cols(), 0);
  EXPECT_EQ(numeric::nullspace(Matrix<Rational>(Matrix<Rational>::Identity(3, 3))).cols(), 0);
}

TEST(Nullspace, RankOneTwoByTwo) {
  Matrix<double> m(2, 2);
  m << 1, 1, 1, 1;
  const auto ns = numeric::nullspace(m);
  ASSERT_EQ(ns.cols(), 1);
  EXPECT_NEAR(std::abs(ns(0, 0)), std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(ns(0, 0), -ns(1, 0), 1e-12);

  Matrix<Rational> q(2, 2);
  q << 1, 1, 1, 1;
  const auto nq = numeric::nullspace(q);
  ASSERT_EQ(nq.cols(), 1);
  EXPECT_EQ(nq(0, 0), -nq(1, 0));
}

TEST(Nullspace, ResidualBoundOnRandomRankDeficient) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Index r = 1 + static_cast<Index>(rng() % 4);
    const Matrix<double> m = tk::random_matrix(rng, 6, r) * tk::random_matrix(rng, r, 5);
    const auto ns = numeric::nullspace(m);
    EXPECT_EQ(ns.cols(), 5 - r);
    Eigen::JacobiSVD<Matrix<double>> svd(m);
    const double smax = svd.singularValues()(0);
    for (Index c = 0; c < ns.cols(); ++c) EXPECT_LE((m * ns.col(c)).norm(), 10 * 1e-9 * (1 + smax));
  }
}

TEST(SolveLinear, Basics) {
  Vector<double> b(2);
  b << 4, 9;
  Matrix<double> d(2, 2);
  d << 2, 0, 0, 3;
  const auto x = numeric::solve_linear(d, b);
  ASSERT_TRUE(x);
  EXPECT_NEAR((*x)(0), 2.0, 1e-12);
  EXPECT_NEAR((*x)(1), 3.0, 1e-12);
  const auto y = numeric::solve_linear(Matrix<double>(Matrix<double>::Identity(2, 2)), b);
  ASSERT_TRUE(y);
  EXPECT_NEAR(((*y) - b).norm(), 0.0, 1e-12);
}

TEST(SolveLinear, InfeasibleIsFlagged) {
  Matrix<double> m(2, 1);
  m << 1, 1;
  Vector<double> b(2);
  b << 1, 2;
  EXPECT_FALSE(numeric::solve_linear(m, b));
  Matrix<Rational> mq(2, 1);
  mq << 1, 1;
  Vector<Rational> bq(2);
  bq << 1, 2;
  EXPECT_FALSE(numeric::solve_linear(mq, bq));
}

TEST(SolveLinear, ExactRationalSystem) {
  Matrix<Rational> m(2, 2);
  m << 1, 0, 0, 1;
  Vector<Rational> b(2);
  b << 0, Rational(-1) + Rational(1);
  const auto x = numeric::solve_linear(m, b);
  ASSERT_TRUE(x);
  EXPECT_TRUE((*x)(0).is_zero());
  EXPECT_TRUE((*x)(1).is_zero());
}

TEST(PositiveDefinite, Examples) {
  EXPECT_TRUE(numeric::is_positive_definite(Matrix<double>(Matrix<double>::Identity(3, 3))));
  Matrix<double> d(2, 2);
  d << 1, 0, 0, -1;
  EXPECT_FALSE(numeric::is_positive_definite(d));
  Matrix<double> s(2, 2);
  s << 2, 1, 1, 2;
  EXPECT_TRUE(numeric::is_positive_definite(s));
  Matrix<Rational> q(2, 2);
  q << 2, 1, 1, 2;
  EXPECT_TRUE(numeric::is_positive_definite(q));
  q << 1, 2, 2, 1;
  EXPECT_FALSE(numeric::is_positive_definite(q));
}

TEST(PositiveDefinite, RejectsNonSymmetric) {
  Matrix<double> m(2, 2);
  m << 1, 2, 0, 1;
  EXPECT_THROW(numeric::is_positive_definite(m), ValidationError);
}

TEST(MatrixExp, ZeroIsIdentity) {
  EXPECT_TRUE(numeric::matrix_exp(Matrix<double>::Zero(3, 3)).isIdentity(0.0));
}

TEST(MatrixExp, NilpotentHeisenberg) {
  const auto h = algebras::heis3<double>(1.0);
  Vector<double> u(3);
  u << 0.3, -1.2, 2.5;
  const Matrix<double> adu = h.ad(u);
  const Matrix<double> expected = Matrix<double>::Identity(3, 3) + adu;
  EXPECT_EQ(numeric::matrix_exp(adu), expected);
}

TEST(MatrixExp, Rotation) {
  for (double t : {0.1, 1.0, 2.5, 7.0}) {
    Matrix<double> m(2, 2);
    m << 0, -t, t, 0;
    const auto r = numeric::matrix_exp(m);
    EXPECT_NEAR(r(0, 0), std::cos(t), 1e-12);
    EXPECT_NEAR(r(1, 0), std::sin(t), 1e-12);
    EXPECT_NEAR(r(0, 1), -std::sin(t), 1e-12);
    EXPECT_NEAR(r(1, 1), std::cos(t), 1e-12);
  }
}

TEST(MatrixExp, InverseProperty) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 1 + static_cast<Index>(rng() % 5);
    Matrix<double> m = tk::random_matrix(rng, n, n);
    m *= tk::uniform(rng, 0.0, 10.0) / std::max(1e-12, m.norm());
    const Matrix<double> p = numeric::matrix_exp(m) * numeric::matrix_exp(Matrix<double>(-m));
    EXPECT_LE(max_abs(Matrix<double>(p - Matrix<double>::Identity(n, n))), 10 * 1e-9);
  }
}

TEST(OrthonormalBasis, Examples) {
  EXPECT_TRUE(numeric::orthonormal_basis(Matrix<double>::Identity(3, 3)).isIdentity(1e-15));
  Matrix<double> d(2, 2);
  d << 4, 0, 0, 9;
  const auto b = numeric::orthonormal_basis(d);
  EXPECT_NEAR(std::abs(b(0, 0)), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(b(1, 1)), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(b(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(b(1, 0), 0.0, 1e-15);
  Matrix<double> s(2, 2);
  s << 2, 1, 1, 2;
  const auto c = numeric::orthonormal_basis(s);
  EXPECT_TRUE((c.transpose() * s * c).isIdentity(1e-12));
}

TEST(OrthonormalBasis, RejectsNonPd) {
  Matrix<double> d(2, 2);
  d << 1, 0, 0, -1;
  EXPECT_THROW(numeric::orthonormal_basis(d), ValidationError);
}

TEST(OrthonormalBasis, PropertyOnRandomGrams) {
  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const Index n = 1 + static_cast<Index>(rng() % 6);
    const auto g = tk::random_gram(rng, n);
    const auto b = numeric::orthonormal_basis(g);
    EXPECT_LE(max_abs(Matrix<double>(b.transpose() * g * b - Matrix<double>::Identity(n, n))), 10 * 1e-9);
  }
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(Rational::parse("3/4"), Rational(3, 4));
  EXPECT_EQ(Rational::parse("-0.125"), Rational(-1, 8));
  EXPECT_EQ(Rational::parse("2e-1"), Rational(1, 5));
  EXPECT_EQ(Rational::parse(" 7 "), Rational(7));
  EXPECT_EQ(Rational(6, 4).str(), "3/2");
  EXPECT_THROW(Rational::parse("1/0"), ValidationError);
  EXPECT_THROW(Rational::parse("abc"), ValidationError);
  EXPECT_EQ(Rational::from_double(0.375), Rational(3, 8));
}

TEST(Rational, ExactInverse) {
  Matrix<Rational> m(2, 2);
  m << 2, 1, 1, 1;
  const auto inv = numeric::inverse(m);
  EXPECT_EQ(Matrix<Rational>(m * inv), Matrix<Rational>(Matrix<Rational>::Identity(2, 2)));
  Matrix<Rational> s(2, 2);
  s << 1, 1, 1, 1;
  EXPECT_THROW(numeric::inverse(s), ValidationError);
}
