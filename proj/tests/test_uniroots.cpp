#include <gtest/gtest.h>

#include "skew/uniroots.hpp"
#include "support.hpp"

using namespace skew;
using namespace skew::testing;

using QD = Quat<double>;
using QR = Quat<Rational>;
using FD = UniPoly<double>;
using FR = UniPoly<Rational>;

namespace {

FD rand_poly(int deg) {
  std::vector<QD> c(deg + 1);
  for (auto& q : c) q = rquat<double>();
  return FD(c);
}

bool spherical_members_are_roots(const FD& f, const SphericalClass<double>& c) {
  double half = c.s / 2, r = std::sqrt(std::max(0.0, c.n - half * half));
  for (int t = 0; t < 5; ++t) {
    double u = rdouble(-1, 1), v = rdouble(-1, 1), w = rdouble(-1, 1);
    double l = std::sqrt(u * u + v * v + w * w);
    if (l < 1e-3) continue;
    QD q(half, r * u / l, r * v / l, r * w / l);
    if (qabs(f.eval_right(q)) > 1e-7 * (1 + f.abs_coeff_sum())) return false;
  }
  return true;
}

}  // namespace

TEST(Niven, SphereOfUnitPureQuaternions) {
  FD f({QD(1.0), QD(), QD(1.0)});
  auto rs = niven_roots(f);
  ASSERT_EQ(rs.spherical.size(), 1u);
  EXPECT_NEAR(rs.spherical[0].s, 0.0, 1e-9);
  EXPECT_NEAR(rs.spherical[0].n, 1.0, 1e-9);
  EXPECT_TRUE(rs.isolated.empty());
  EXPECT_TRUE(rs.central.empty());
  for (const QD& q : {QD::i(), QD::j(), QD::k()}) EXPECT_LT(qabs(f.eval_right(q)), 1e-12);
  auto ex = niven_roots(FR({QR(1), QR(), QR(1)}));
  ASSERT_EQ(ex.spherical.size(), 1u);
  EXPECT_EQ(ex.spherical[0].s, Rational(0));
  EXPECT_EQ(ex.spherical[0].n, Rational(1));
  EXPECT_FALSE(ex.approx);
}

TEST(Niven, SquareRootsOfJ) {
  FD f({-QD::j(), QD(), QD(1.0)});
  auto rs = niven_roots(f);
  ASSERT_EQ(rs.isolated.size(), 2u);
  const double h = 1 / std::sqrt(2.0);
  EXPECT_TRUE(qclose(rs.isolated[0], QD(h, 0, h, 0), 1e-10));
  EXPECT_TRUE(qclose(rs.isolated[1], QD(-h, 0, -h, 0), 1e-10));
  // Over Q the roots are irrational.
  auto ex = niven_roots(FR({-QR::j(), QR(), QR(1)}));
  EXPECT_TRUE(ex.approx);
}

TEST(Niven, ProductOfLinearFactors) {
  // (x - i)(x - j) = x^2 - (i+j) x + k has the root j but not i.
  FR f({QR::k(), -(QR::i() + QR::j()), QR(1)});
  auto rs = niven_roots(f);
  EXPECT_FALSE(rs.approx);
  ASSERT_EQ(rs.isolated.size(), 1u);
  EXPECT_EQ(rs.isolated[0], QR::j());
  auto fl = niven_roots(FD({QD::k(), -(QD::i() + QD::j()), QD(1.0)}));
  ASSERT_EQ(fl.isolated.size(), 1u);
  EXPECT_TRUE(qclose(fl.isolated[0], QD::j(), 1e-8));
  EXPECT_EQ(conjugacy_class_count(rs), 1);
  EXPECT_TRUE(gordon_motzkin_check(f));
}

TEST(Niven, CentralRoots) {
  // (x - 1)(x - 2)
  FR f({QR(2), QR(-3), QR(1)});
  auto rs = niven_roots(f);
  EXPECT_EQ(rs.central, (std::vector<Rational>{Rational(1), Rational(2)}));
  EXPECT_EQ(conjugacy_class_count(rs), 2);
  EXPECT_TRUE(gordon_motzkin_check(f));
  auto fl = niven_roots(FD({QD(2.0), QD(-3.0), QD(1.0)}));
  ASSERT_EQ(fl.central.size(), 2u);
  EXPECT_NEAR(fl.central[0], 1.0, 1e-10);
  EXPECT_NEAR(fl.central[1], 2.0, 1e-10);
  EXPECT_TRUE(gordon_motzkin_check(FR({QR(1), QR(), QR(1)})));
}

TEST(Niven, ZeroPolynomial) {
  EXPECT_THROW(niven_roots(FD()), Error);
  EXPECT_THROW(niven_roots(FR()), Error);
}

TEST(Niven, RootsVerifyAndRespectGordonMotzkin) {
  for (int t = 0; t < 500; ++t) {
    int d = static_cast<int>(rint(1, 5));
    FD f = rand_poly(d);
    auto rs = niven_roots(f);
    const double tol = root_tolerance(f);
    for (auto& q : rs.isolated) EXPECT_LT(qabs(f.eval_right(q)), tol);
    for (auto& r : rs.central) EXPECT_LT(qabs(f.eval_right(QD(r))), tol);
    for (auto& c : rs.spherical) {
      EXPECT_LT(c.s * c.s, 4 * c.n);
      EXPECT_TRUE(spherical_members_are_roots(f, c));
    }
    int cnt = conjugacy_class_count(rs);
    EXPECT_GE(cnt, 1) << "H is algebraically closed";
    EXPECT_LE(cnt, d);
  }
}

TEST(Niven, LeftScalingKeepsRoots) {
  for (int t = 0; t < 100; ++t) {
    FD f = rand_poly(static_cast<int>(rint(1, 4)));
    QD c = rquat_nonzero<double>();
    auto rs = niven_roots(f);
    FD cf = c * f;
    for (auto& q : rs.isolated) EXPECT_LT(qabs(cf.eval_right(q)), root_tolerance(cf) * 10);
    auto rc = niven_roots(cf);
    EXPECT_EQ(conjugacy_class_count(rc), conjugacy_class_count(rs));
  }
}

TEST(Niven, ExactStructuredPolynomials) {
  for (int t = 0; t < 40; ++t) {
    // Product of linear factors with rational roots, roots known by construction.
    QR r1 = rquat<Rational>(), r2 = rquat<Rational>();
    FR f = FR({-r1, QR(1)}) * FR({-r2, QR(1)});
    auto rs = niven_roots(f);
    // r2 is always a right root of (x - r1)(x - r2).
    bool hit = false;
    for (auto& q : rs.isolated) {
      EXPECT_TRUE(qis_zero(f.eval_right(q)));
      if (q == r2) hit = true;
    }
    for (auto& c : rs.spherical)
      if (qtrace(r2) == c.s && qnorm(r2) == c.n) hit = true;
    for (auto& c : rs.central)
      if (QR(c) == r2) hit = true;
    EXPECT_TRUE(hit);
    EXPECT_LE(conjugacy_class_count(rs), 2);
  }
}

TEST(Preimage, Examples) {
  FR lin({QR(), QR(2)});
  EXPECT_EQ(preimage(lin, QR::i() + QR::j()), (QR::i() + QR::j()) / Rational(2));
  FR sq({QR(), QR(), QR(1)});
  QR b = preimage(sq, QR(-1));
  EXPECT_EQ(b * b, QR(-1));
  EXPECT_EQ(b, QR::i());
  FD sqd({QD(), QD(), QD(1.0)});
  QD r = preimage(sqd, QD::j());
  const double h = 1 / std::sqrt(2.0);
  EXPECT_TRUE(qclose(r, QD(h, 0, h, 0), 1e-10));
  try {
    preimage(sq, QR::j());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ExactnessUnavailable);
  }
}

TEST(Preimage, AlwaysSucceedsOnFloat) {
  for (int t = 0; t < 200; ++t) {
    FD f = rand_poly(static_cast<int>(rint(1, 5)));
    QD c = rquat<double>();
    QD b = preimage(f, c);
    EXPECT_LT(qabs(QD(f.eval_right(b) - c)), 1e-8);
  }
}

TEST(ImageOracle, Examples) {
  using P = NCPoly<Rational>;
  P s = P::var(2, 0) * P::var(2, 1) + P::var(2, 1) * P::var(2, 0);
  auto pt = image_oracle(s, QR::k());
  ASSERT_EQ(pt.size(), 2u);
  EXPECT_EQ(pt[0], QR::k() / Rational(2));
  EXPECT_EQ(pt[1], QR(1));
  EXPECT_EQ(s.eval(pt), QR::k());
  P sq = P::var(1, 0) * P::var(1, 0);
  auto p2 = image_oracle(sq, QR(-1));
  EXPECT_EQ(p2[0], QR::i());
  try {
    image_oracle(commutator(P::var(2, 0), P::var(2, 1)), QR(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NoWitness);
  }
}

TEST(ImageOracle, WalksToNonconstantSpecialization) {
  using P = NCPoly<Rational>;
  P p = P::var(2, 0) * P::var(2, 1) + P::var(2, 0);
  auto pt = image_oracle(p, QR(0, 1, 2, 3));
  EXPECT_EQ(p.eval(pt), QR(0, 1, 2, 3));
}

TEST(Infinitude, DistinctValues) {
  FD sq({QD(), QD(), QD(1.0)});
  EXPECT_GE(image_infinitude_probe(sq, 100, 7).distinct, 50);
  FD id({QD(), QD(1.0)});
  EXPECT_EQ(image_infinitude_probe(id, 40, 7).distinct, 40);
  FD sx({QD(), QD(1.0), QD(1.0)});
  EXPECT_GT(image_infinitude_probe(sx, 100, 7).distinct, 1);
  FR ex({QR(), QR(), QR(1)});
  EXPECT_GE(image_infinitude_probe(ex, 30, 1).distinct, 15);
}
