#include <gtest/gtest.h>

#include "skew/zmat.hpp"
#include "support.hpp"

using namespace skew;
using namespace skew::testing;

TEST(ZMat, AgreesWithRationalArithmetic) {
  for (int t = 0; t < 50; ++t) {
    const int n = static_cast<int>(rint(1, 4));
    QMat<Rational> A = rqmat<Rational>(n, n, 20), B = rqmat<Rational>(n, n, 20);
    EXPECT_TRUE(ZMat(A) * ZMat(B) == ZMat(QMat<Rational>(A * B)));
    EXPECT_TRUE(ZMat(A) + ZMat(B) == ZMat(QMat<Rational>(A + B)));
    EXPECT_TRUE(ZMat(A) - ZMat(B) == ZMat(QMat<Rational>(A - B)));
    QMat<Rational> C = A;
    C(0, 0) += Quat<Rational>(Rational(0), Rational(0), Rational(1), Rational(0));
    EXPECT_FALSE(ZMat(A) == ZMat(C));
  }
}

TEST(ZMat, RealDiagonalSum) {
  QMat<Rational> A(2, 2);
  A(0, 0) = Quat<Rational>(Rational(1), Rational(2), Rational(0), Rational(0));
  A(1, 1) = Quat<Rational>(Rational(-1), Rational(0), Rational(3), Rational(0));
  EXPECT_TRUE(ZMat(A).real_diagonal_sum_is_zero());
  A(1, 1) = Quat<Rational>(make_rational(-1, 2), Rational(0), Rational(0), Rational(0));
  EXPECT_FALSE(ZMat(A).real_diagonal_sum_is_zero());
}

TEST(ZMat, ShapeMismatch) {
  EXPECT_THROW(ZMat(QMat<Rational>(2, 3)) * ZMat(QMat<Rational>(2, 3)), Error);
}
