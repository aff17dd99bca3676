#include <gtest/gtest.h>

#include "skew/realify.hpp"
#include "support.hpp"

using namespace skew;
using namespace skew::testing;

using Q = Quat<Rational>;
using P = NCPoly<Rational>;
using C = CPoly<Rational>;

namespace {

P X(int m, int l) { return P::var(m, l); }
C Y(int n, int v) { return C::var(n, v); }

P rand_ncpoly(int m, int maxdeg, int terms) {
  P p(m);
  for (int t = 0; t < terms; ++t) {
    P term = P::constant(m, rquat<Rational>());
    int d = static_cast<int>(rint(0, maxdeg));
    for (int s = 0; s < d; ++s) {
      term *= X(m, static_cast<int>(rint(0, m - 1)));
      if (rint(0, 2) == 0) term *= P::unit(m, static_cast<Token>(-rint(1, 3)));
    }
    p += term;
  }
  return p;
}

std::vector<Rational> eval4(const std::array<C, 4>& comps, const std::vector<Rational>& y) {
  return {comps[0].eval(y), comps[1].eval(y), comps[2].eval(y), comps[3].eval(y)};
}

}  // namespace

TEST(Realify, SquareClosedForm) {
  auto r = realify_poly(X(1, 0) * X(1, 0));
  C y1 = Y(4, 0), y2 = Y(4, 1), y3 = Y(4, 2), y4 = Y(4, 3);
  C two = C::constant(4, Rational(2));
  EXPECT_EQ(r[0], y1 * y1 - y2 * y2 - y3 * y3 - y4 * y4);
  EXPECT_EQ(r[1], two * y1 * y2);
  EXPECT_EQ(r[2], two * y1 * y3);
  EXPECT_EQ(r[3], two * y1 * y4);
}

TEST(Realify, LeftUnitMultiplication) {
  auto r = realify_poly(P::unit(1, kUnitI) * X(1, 0));
  EXPECT_EQ(r[0], -Y(4, 1));
  EXPECT_EQ(r[1], Y(4, 0));
  EXPECT_EQ(r[2], -Y(4, 3));
  EXPECT_EQ(r[3], Y(4, 2));
}

TEST(Realify, IdentityAndDegreeBound) {
  auto r = realify_poly(X(1, 0));
  for (int t = 0; t < 4; ++t) EXPECT_EQ(r[t], Y(4, t));
  for (int t = 0; t < 50; ++t) {
    P p = rand_ncpoly(2, 4, 3);
    for (auto& c : realify_poly(p)) EXPECT_LE(c.total_degree(), p.total_degree());
  }
}

TEST(Realify, EvaluationCommutes) {
  for (int t = 0; t < 200; ++t) {
    int m = static_cast<int>(rint(1, 3));
    P p = rand_ncpoly(m, 4, 3);
    auto comps = realify_poly(p);
    std::vector<Q> a(m);
    for (auto& q : a) q = rquat<Rational>();
    auto lhs = p.eval(a);
    auto rhs = eval4(comps, quats_to_coords(a));
    for (int c = 0; c < 4; ++c) EXPECT_EQ(lhs[c], rhs[c]);
  }
}

TEST(Realify, ProductOfRealifications) {
  for (int t = 0; t < 100; ++t) {
    P p = rand_ncpoly(2, 2, 3), q = rand_ncpoly(2, 2, 3);
    std::vector<Q> a{rquat<Rational>(), rquat<Rational>()};
    auto y = quats_to_coords(a);
    auto rp = eval4(realify_poly(p), y), rq = eval4(realify_poly(q), y), rpq = eval4(realify_poly(p * q), y);
    Q prod = Q(rp[0], rp[1], rp[2], rp[3]) * Q(rq[0], rq[1], rq[2], rq[3]);
    EXPECT_EQ(prod, Q(rpq[0], rpq[1], rpq[2], rpq[3]));
  }
}

TEST(RealifyMap, StackingAndArity) {
  auto id = realify_map<Rational>({X(1, 0)});
  ASSERT_EQ(id.components.size(), 4u);
  for (int t = 0; t < 4; ++t) EXPECT_EQ(id.components[t], Y(4, t));
  auto f = realify_map<Rational>({X(2, 0) * X(2, 0), X(2, 1)});
  ASSERT_EQ(f.components.size(), 8u);
  EXPECT_EQ(f.components[1], C::constant(8, Rational(2)) * Y(8, 0) * Y(8, 1));
  EXPECT_EQ(f.components[4], Y(8, 4));
  EXPECT_THROW(realify_map<Rational>({X(2, 0)}), Error);
}

TEST(RealifyMap, CoordsCommuteWithMap) {
  for (int t = 0; t < 200; ++t) {
    const int m = 2;
    std::vector<P> f{rand_ncpoly(m, 3, 2), rand_ncpoly(m, 3, 2)};
    auto map = realify_map(f);
    std::vector<Q> a{rquat<Rational>(), rquat<Rational>()};
    std::vector<Q> fa{f[0].eval(a), f[1].eval(a)};
    EXPECT_EQ(map.eval(quats_to_coords(a)), quats_to_coords(fa));
  }
}

TEST(Jacobian, IdentityAndSquare) {
  auto J = jacobian(realify_map<Rational>({X(1, 0)}));
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s) EXPECT_EQ(J[r][s], C::constant(4, Rational(r == s ? 1 : 0)));
  auto Js = jacobian(realify_map<Rational>({X(1, 0) * X(1, 0)}));
  C two = C::constant(4, Rational(2));
  EXPECT_EQ(Js[0][0], two * Y(4, 0));
  EXPECT_EQ(Js[0][1], -(two * Y(4, 1)));
  EXPECT_EQ(Js[0][2], -(two * Y(4, 2)));
  EXPECT_EQ(Js[0][3], -(two * Y(4, 3)));
  auto Jc = jacobian(realify_map<Rational>({P::constant(1, Q(1, 2, 3, 4))}));
  for (auto& row : Jc)
    for (auto& e : row) EXPECT_TRUE(e.is_zero());
}

TEST(Jacobian, MatchesCentralDifferences) {
  for (int t = 0; t < 10; ++t) {
    std::vector<NCPoly<double>> f;
    NCPoly<double> x0 = NCPoly<double>::var(1, 0);
    f.push_back(x0 * x0 * x0 + NCPoly<double>::constant(1, rquat<double>()) * x0 * NCPoly<double>::unit(1, kUnitJ) * x0);
    auto map = realify_map(f);
    auto J = jacobian(map);
    std::vector<double> y{rdouble(), rdouble(), rdouble(), rdouble()};
    const double h = 1e-5;
    for (int s = 0; s < 4; ++s) {
      auto yp = y, ym = y;
      yp[s] += h;
      ym[s] -= h;
      auto fp = map.eval(yp), fm = map.eval(ym);
      for (int r = 0; r < 4; ++r) {
        double fd = (fp[r] - fm[r]) / (2 * h);
        double an = J[r][s].eval(y);
        EXPECT_LE(std::abs(fd - an), 1e-6 * std::max(1.0, std::abs(an)));
      }
    }
  }
}

TEST(Probes, SquareCollidesAtPlusMinusI) {
  auto rep = injectivity_probe(realify_map<Rational>({X(1, 0) * X(1, 0)}), 5, 0);
  ASSERT_TRUE(rep.found);
  EXPECT_TRUE(rep.certified);
  EXPECT_EQ(rep.a, std::vector<Q>{Q::i()});
  EXPECT_EQ(rep.b, std::vector<Q>{-Q::i()});
}

TEST(Probes, IdentityHasNoCollision) {
  auto rep = injectivity_probe(realify_map<Rational>({X(1, 0)}), 10, 3);
  EXPECT_FALSE(rep.found);
}

TEST(Probes, SurjectivityIdentityAndCube) {
  auto id = realify_map<double>({NCPoly<double>::var(1, 0)});
  auto pre = surjectivity_probe(id, {Quat<double>::j()}, 64, 0);
  ASSERT_TRUE(pre);
  EXPECT_TRUE(qclose((*pre)[0], Quat<double>::j(), 1e-8));
  auto x = NCPoly<double>::var(1, 0);
  auto cube = realify_map<double>({x * x * x});
  Quat<double> target(1.0, 1.0, 0.0, 0.0);
  auto c = surjectivity_probe(cube, {target}, 64, 0);
  ASSERT_TRUE(c);
  Quat<double> q = (*c)[0];
  Quat<double> r = q * q * q - target;
  for (int t = 0; t < 4; ++t) EXPECT_LT(std::abs(r[t]), 1e-8);
}
