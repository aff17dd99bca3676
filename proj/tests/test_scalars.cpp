#include <gtest/gtest.h>

#include "skew/realroots.hpp"
#include "support.hpp"

using namespace skew;
using namespace skew::testing;

namespace {

CPoly<Rational> y(int n, int v) { return CPoly<Rational>::var(n, v); }
CPoly<Rational> k(int n, long long c) { return CPoly<Rational>::constant(n, Rational(c)); }

}  // namespace

TEST(Rational, FieldAxiomsRandomTriples) {
  for (int t = 0; t < 1000; ++t) {
    Rational a = rrat(50, 30), b = rrat(50, 30), c = rrat(50, 30);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    if (a != 0) EXPECT_EQ(a * (Rational(1) / a), Rational(1));
  }
}

TEST(Rational, CanonicalStrings) {
  EXPECT_EQ(rational_to_string(make_rational(6, -4)), "-3/2");
  EXPECT_EQ(rational_to_string(Rational(5)), "5/1");
  EXPECT_EQ(rational_from_string("-3/2"), make_rational(-3, 2));
  EXPECT_EQ(rational_from_string("10/4"), make_rational(5, 2));
  EXPECT_EQ(rational_from_string("7"), Rational(7));
  EXPECT_THROW(rational_from_string("1/0"), Error);
  EXPECT_THROW(rational_from_string("x"), Error);
}

TEST(Rational, SimplestBetween) {
  EXPECT_EQ(simplest_between(make_rational(1, 3), make_rational(1, 2)), make_rational(1, 2));
  EXPECT_EQ(simplest_between(make_rational(3, 10), make_rational(4, 10)), make_rational(1, 3));
  EXPECT_EQ(simplest_between(make_rational(-7, 5), make_rational(-6, 5)), make_rational(-4, 3));
  EXPECT_EQ(rationalize(0.1428571428571, 1e-9), make_rational(1, 7));
}

TEST(Rational, ThreeSquares) {
  for (long long m : {1, 2, 3, 5, 6, 11, 14, 21}) {
    Rational a, b, c;
    ASSERT_TRUE(three_squares(Rational(m), a, b, c));
    EXPECT_EQ(a * a + b * b + c * c, Rational(m));
  }
  Rational a, b, c;
  ASSERT_TRUE(three_squares(make_rational(3, 4), a, b, c));
  EXPECT_EQ(a * a + b * b + c * c, make_rational(3, 4));
  // 7/4 = 7 (1/2)^2 is never a sum of three rational squares.
  EXPECT_FALSE(three_squares(make_rational(7, 4), a, b, c));
}

TEST(CPoly, DifferenceOfSquares) {
  auto p = (y(2, 0) + y(2, 1)) * (y(2, 0) - y(2, 1));
  auto expect = y(2, 0) * y(2, 0) - y(2, 1) * y(2, 1);
  EXPECT_EQ(p, expect);
  EXPECT_EQ(cpoly_arith(y(2, 0), y(2, 1), ArithOp::Mul), y(2, 0) * y(2, 1));
}

TEST(CPoly, EvalSubstitution) {
  auto p = y(1, 0) * y(1, 0) + k(1, 1);
  EXPECT_EQ(cpoly_eval(p, {Rational(2)}), Rational(5));
  EXPECT_THROW(p.eval({Rational(1), Rational(2)}), Error);
  EXPECT_THROW(p + y(2, 0), Error);
}

TEST(CPoly, NoStoredZeros) {
  auto p = y(2, 0) - y(2, 0);
  EXPECT_TRUE(p.is_zero());
  EXPECT_TRUE(p.terms().empty());
}

TEST(CPoly, EvalIsHomomorphism) {
  for (int t = 0; t < 100; ++t) {
    auto p = rcpoly<Rational>(3, 4, 5);
    auto q = rcpoly<Rational>(3, 4, 5);
    std::vector<Rational> a{rrat(), rrat(), rrat()};
    EXPECT_EQ((p * q).eval(a), p.eval(a) * q.eval(a));
    EXPECT_EQ((p + q).eval(a), p.eval(a) + q.eval(a));
  }
}

TEST(CPoly, RingLawsRandomTriples) {
  for (int t = 0; t < 50; ++t) {
    auto a = rcpoly<Rational>(2, 3, 4), b = rcpoly<Rational>(2, 3, 4), c = rcpoly<Rational>(2, 3, 4);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(RealRoots, SqrtTwoIntervals) {
  auto r = real_roots_univariate(CPoly<Rational>::from_univariate({Rational(-2), Rational(0), Rational(1)}));
  ASSERT_EQ(r.size(), 2u);
  for (auto& x : r) {
    // x^2-2 changes sign across each interval
    Rational flo = x.lo * x.lo - 2, fhi = x.hi * x.hi - 2;
    EXPECT_TRUE(flo * fhi < 0);
  }
  EXPECT_LT(r[0].hi, r[1].lo);
}

TEST(RealRoots, NoRealRoots) {
  auto r = real_roots_univariate(CPoly<Rational>::from_univariate({Rational(1), Rational(0), Rational(1)}));
  EXPECT_TRUE(r.empty());
  auto f = real_roots_univariate(CPoly<double>::from_univariate({1.0, 0.0, 1.0}));
  EXPECT_TRUE(f.empty());
}

TEST(RealRoots, FactoredForm) {
  auto r = real_roots_exact({Rational(0), Rational(-1), Rational(1)});
  ASSERT_EQ(r.size(), 2u);
  EXPECT_TRUE(r[0].exact);
  EXPECT_TRUE(r[1].exact);
  EXPECT_EQ(r[0].approx, Rational(0));
  EXPECT_EQ(r[1].approx, Rational(1));
  auto f = real_roots_float({0.0, -1.0, 1.0});
  ASSERT_EQ(f.size(), 2u);
  EXPECT_NEAR(f[0].approx, 0.0, 1e-12);
  EXPECT_NEAR(f[1].approx, 1.0, 1e-12);
}

TEST(RealRoots, ZeroPolynomial) {
  EXPECT_THROW(real_roots_univariate(CPoly<Rational>(1)), Error);
  EXPECT_THROW(real_roots_float({0.0}), Error);
}

// Planted roots: the count is known from the construction.
TEST(RealRoots, PlantedRootsWithMultiplicity) {
  for (int t = 0; t < 100; ++t) {
    std::vector<Rational> roots;
    int nr = static_cast<int>(rint(0, 4));
    while (static_cast<int>(roots.size()) < nr) {
      Rational r = make_rational(rint(-40, 40), 8);
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    std::vector<Rational> p{Rational(1)};
    for (auto& r : roots) {
      int mult = static_cast<int>(rint(1, 2));
      for (int m = 0; m < mult; ++m) p = upoly::mul(p, {-r, Rational(1)});
    }
    if (rint(0, 1)) p = upoly::mul(p, {Rational(rint(1, 5)), Rational(rint(-1, 1)), Rational(1)});
    auto iso = real_roots_exact(p);
    ASSERT_EQ(iso.size(), roots.size());
    std::sort(roots.begin(), roots.end());
    for (std::size_t i = 0; i < roots.size(); ++i) {
      EXPECT_LE(iso[i].lo, roots[i]);
      EXPECT_GE(iso[i].hi, roots[i]);
      if (i > 0) EXPECT_LT(iso[i - 1].hi, iso[i].lo);
    }
  }
}

// Brute-force sign scan over a fine exact grid.
TEST(RealRoots, SturmMatchesGridScan) {
  for (int t = 0; t < 120; ++t) {
    int d = static_cast<int>(rint(1, 6));
    std::vector<Rational> p(d + 1);
    for (auto& c : p) c = Rational(rint(-9, 9));
    if (p[d] == 0) p[d] = 1;
    Rational B = upoly::root_bound(p);
    int grid = 0;
    int last = 0;
    const Rational step = make_rational(1, 128);
    for (Rational x = -B; x <= B; x += step) {
      Rational v = upoly::eval(p, x);
      int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
      if (s == 0) {
        ++grid;
        last = 0;
        continue;
      }
      if (last != 0 && s != last) ++grid;
      last = s;
    }
    auto iso = real_roots_exact(p);
    EXPECT_EQ(static_cast<int>(iso.size()), grid) << "degree " << d;
    for (std::size_t i = 1; i < iso.size(); ++i) EXPECT_LT(iso[i - 1].hi, iso[i].lo);
  }
}

TEST(RealRoots, FloatResidualBound) {
  for (int t = 0; t < 200; ++t) {
    int d = static_cast<int>(rint(1, 6));
    std::vector<double> p(d + 1);
    for (auto& c : p) c = rdouble(-5, 5);
    double scale = 0;
    for (double c : p) scale = std::max(scale, std::abs(c));
    for (auto& r : real_roots_float(p)) EXPECT_LE(std::abs(upoly::eval(p, r.approx)), 1e-10 * (1 + scale));
  }
}

TEST(Resultant, Linear) {
  // variables: x=0, s=1, t=2
  auto x = y(3, 0), s = y(3, 1), tt = y(3, 2);
  auto r = resultant(x - s, x - tt, 0);
  EXPECT_TRUE(r == tt - s || r == s - tt);
}

TEST(Resultant, QuadraticAgainstX) {
  auto x = y(2, 0), n = y(2, 1);
  auto r = resultant(x * x - n, x, 0);
  // Sylvester rows [1 0 -n], [1 0 0], [0 1 0] give determinant -n.
  EXPECT_EQ(r, -n);
}

TEST(Resultant, PlantedCommonFactorVanishes) {
  for (int t = 0; t < 50; ++t) {
    auto x = y(2, 0);
    auto common = x - k(2, 1);
    auto a = rcpoly<Rational>(2, 2, 3) + x;
    auto b = rcpoly<Rational>(2, 2, 3) + x * x;
    auto r = resultant(common * a, common * b, 0);
    EXPECT_TRUE(r.is_zero());
  }
}

TEST(Resultant, VanishesAtCommonRoots) {
  // p = x^2 - s, q = x - 2: resultant vanishes exactly at s = 4.
  auto x = y(2, 0), s = y(2, 1);
  auto r = resultant(x * x - s, x - k(2, 2), 0);
  EXPECT_EQ(r.substitute(1, Rational(4)).is_zero(), true);
  EXPECT_FALSE(r.substitute(1, Rational(3)).is_zero());
}
