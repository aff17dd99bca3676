#include <gtest/gtest.h>

#include "skew/idemcomm.hpp"
#include "support.hpp"

using namespace skew;
using namespace skew::testing;

using QR = Quat<Rational>;
using QD = Quat<double>;
using MR = QMat<Rational>;
using MD = QMat<double>;

namespace {

MR rand_invertible(int n) {
  for (;;) {
    MR A = rqmat<Rational>(n, n);
    if (is_invertible(A)) return A;
  }
}

MR trace_zero(int n) {
  MR A = rqmat<Rational>(n, n);
  A(n - 1, n - 1) -= diagonal_sum(A);
  return A;
}

// All partitions of n into positive parts.
void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

MR nilpotent_with_blocks(const std::vector<int>& sizes) {
  std::vector<JordanBlock<Rational>> blocks;
  for (int s : sizes) blocks.push_back({s, Cplx<Rational>()});
  MR J = jordan_matrix(blocks);
  MR P = rand_invertible(J.rows());
  return P * J * mat_inverse(P);
}

Certificate<Rational> idem_cert(const MR& target, const IdemPair<Rational>& p) {
  Certificate<Rational> c;
  c.kind = CertKind::IDEM_COMM;
  c.target = target;
  c.idem = {p};
  return c;
}

NCPoly<Rational> anticomm() {
  using P = NCPoly<Rational>;
  return P::var(2, 0) * P::var(2, 1) + P::var(2, 1) * P::var(2, 0);
}

}  // namespace

TEST(CertKinds, NamesRoundTrip) {
  for (CertKind k : all_cert_kinds()) EXPECT_EQ(parse_cert_kind(cert_kind_name(k)), k);
  EXPECT_THROW(parse_cert_kind("NOPE"), Error);
}

TEST(Verify, Examples) {
  MR E = MR::unit(2, 0, 0);
  MR F{{QR(1), QR(1)}, {QR(), QR()}};
  EXPECT_TRUE(verify_certificate(idem_cert(MR::unit(2, 0, 1), {E, F})).ok);

  auto bad = verify_certificate(idem_cert(MR::unit(2, 0, 1), {E, MR::identity(2)}));
  EXPECT_FALSE(bad.ok);
  EXPECT_EQ(bad.violation, "EF - FE = target");

  Certificate<Rational> m;
  m.kind = CertKind::MULT_COMM_PRODUCT;
  m.target = -MR::identity(2);
  m.comm = {CommPair<Rational>{QR::i() * MR::identity(2), QR::j() * MR::identity(2), {}, {}},
            CommPair<Rational>{MR::identity(2), MR::identity(2), {}, {}}};
  EXPECT_TRUE(verify_certificate(m).ok);
}

TEST(Verify, NonIdempotentIsReported) {
  MR E = Rational(2) * MR::unit(2, 0, 0);
  auto v = verify_certificate(idem_cert(MR(2, 2), {E, E}));
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.violation, "E^2 = E (pair 0)");
}

TEST(Verify, MalformedLayouts) {
  Certificate<Rational> c;
  c.kind = CertKind::SUM_TWO_IDEM_COMM;
  c.target = MR(2, 2);
  c.idem = {IdemPair<Rational>{MR(2, 2), MR(2, 2)}};
  try {
    verify_certificate(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MalformedCertificate);
  }
  c.idem.push_back(IdemPair<Rational>{MR(3, 3), MR(2, 2)});
  EXPECT_THROW(verify_certificate(c), Error);
  c.target = MR(2, 3);
  EXPECT_THROW(verify_certificate(c), Error);
}

TEST(NilpotentIdemCommutator, Examples) {
  auto e = nilpotent_idem_commutator(MR::unit(2, 0, 1));
  EXPECT_EQ(e.E, MR::unit(2, 0, 0));
  EXPECT_EQ(e.F, (MR{{QR(1), QR(1)}, {QR(), QR()}}));

  auto z = nilpotent_idem_commutator(MR(3, 3));
  EXPECT_EQ(z.E, MR(3, 3));
  EXPECT_EQ(z.F, MR(3, 3));

  MR J3 = jordan_matrix<Rational>({{3, Cplx<Rational>()}});
  auto j = nilpotent_idem_commutator(J3);
  EXPECT_TRUE(verify_certificate(idem_cert(J3, j)).ok);

  try {
    nilpotent_idem_commutator(MR::identity(2));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::NotNilpotent);
  }
}

TEST(NilpotentIdemCommutator, EveryPartitionUpToFour) {
  for (int n = 1; n <= 4; ++n) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(n, n, cur, parts);
    for (auto& p : parts)
      for (int t = 0; t < 5; ++t) {
        MR N = nilpotent_with_blocks(p);
        auto r = nilpotent_idem_commutator(N);
        EXPECT_TRUE(verify_certificate(idem_cert(N, r)).ok);
      }
  }
}

TEST(NilpotentIdemCommutator, LongBlocks) {
  for (int k = 1; k <= 15; ++k) {
    MR J = jordan_matrix<Rational>({{k, Cplx<Rational>()}});
    auto r = nilpotent_idem_commutator(J);
    EXPECT_TRUE(verify_certificate(idem_cert(J, r)).ok) << k;
  }
}

TEST(NilpotentIdemCommutator, FloatBackend) {
  for (int t = 0; t < 20; ++t) {
    MR N = nilpotent_with_blocks({2, 1});
    MD Nd = qmat_to_double(N);
    auto r = nilpotent_idem_commutator(Nd);
    Certificate<double> c;
    c.kind = CertKind::IDEM_COMM;
    c.target = Nd;
    c.idem = {r};
    EXPECT_TRUE(verify_certificate(c).ok);
  }
}

TEST(TraceZeroTwoIdem, Examples) {
  MR D = MR::diag({QR(1), QR(-1)});
  auto s = tracezero_two_idem_commutators(D, TwoMode::SUM);
  EXPECT_EQ(s.kind, CertKind::SUM_TWO_IDEM_COMM);
  EXPECT_TRUE(verify_certificate(s).ok);

  auto z = tracezero_two_idem_commutators(MR(2, 2), TwoMode::SUM);
  for (auto& p : z.idem) {
    EXPECT_EQ(p.E, MR(2, 2));
    EXPECT_EQ(p.F, MR(2, 2));
  }

  MR R = MR::unit(2, 0, 1) - MR::unit(2, 1, 0);
  auto d = tracezero_two_idem_commutators(R, TwoMode::DIFF);
  EXPECT_EQ(d.kind, CertKind::DIFF_TWO_IDEM_COMM);
  EXPECT_TRUE(verify_certificate(d).ok);

  try {
    tracezero_two_idem_commutators(MR::identity(2), TwoMode::SUM);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonzeroTrace);
  }
}

TEST(TraceZeroTwoIdem, TwoByTwoWithoutZeroDiagonalConjugate) {
  // Eigen-classes of unequal norm: no zero-diagonal similarity exists.
  MR A{{QR(1, 2, 0, 0), QR(0, 0, 1, 0)}, {QR(0, 0, 0, 3), QR(-1, -2, 0, 0)}};
  EXPECT_THROW(zero_diagonal_similarity(A), Error);
  auto c = tracezero_two_idem_commutators(A, TwoMode::SUM);
  EXPECT_TRUE(verify_certificate(c).ok);
  auto d = tracezero_two_idem_commutators(A, TwoMode::DIFF);
  EXPECT_TRUE(verify_certificate(d).ok);
}

TEST(TraceZeroTwoIdem, RandomExact) {
  for (int n = 2; n <= 4; ++n)
    for (int t = 0; t < 12; ++t) {
      MR A = trace_zero(n);
      for (TwoMode m : {TwoMode::SUM, TwoMode::DIFF}) {
        auto c = tracezero_two_idem_commutators(A, m, static_cast<std::uint64_t>(t));
        EXPECT_TRUE(verify_certificate(c).ok);
      }
    }
}

TEST(TraceZeroTwoIdem, FloatBackend) {
  for (int t = 0; t < 10; ++t) {
    MD A = qmat_to_double(trace_zero(2 + t % 2));
    auto c = tracezero_two_idem_commutators(A, TwoMode::SUM, static_cast<std::uint64_t>(t));
    EXPECT_TRUE(verify_certificate(c).ok);
  }
}

TEST(CentralScalar, Examples) {
  auto m = central_scalar_mult_commutator(QR(-1), 2);
  EXPECT_EQ(m.target, -MR::identity(2));
  EXPECT_EQ(mult_commutator(m.comm[0]), -MR::identity(2));
  EXPECT_TRUE(verify_certificate(m).ok);

  auto one = central_scalar_mult_commutator(QR(1), 4);
  for (auto& c : one.comm) {
    EXPECT_EQ(c.G1, MR::identity(4));
    EXPECT_EQ(c.G2, MR::identity(4));
  }

  try {
    central_scalar_mult_commutator(QR(2), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotUnitScalar);
  }
  EXPECT_THROW(central_scalar_mult_commutator(QR::i(), 2), Error);
}

TEST(CentralScalar, SquareWitnesses) {
  PolyArg<double> sq = UniPoly<double>({QD(), QD(), QD(1.0)});
  auto c = central_scalar_mult_commutator(QD(-1.0), 3, &sq);
  ASSERT_EQ(c.comm[0].w1.size(), 1u);
  EXPECT_TRUE(verify_certificate(c, &sq).ok);
  EXPECT_LT((c.comm[0].w1[0] * c.comm[0].w1[0] - QD::i() * MD::identity(3)).max_abs(), 1e-9);
}

TEST(TheoremThe, Examples) {
  auto z = theoremThe_decompose<Rational>(MR(2, 2), nullptr);
  EXPECT_EQ(z.mats[0], MR::identity(2));
  EXPECT_EQ(z.mats[1], MR::identity(2));
  for (auto& c : z.comm) EXPECT_EQ(mult_commutator(c), MR::identity(2));

  for (MR A : {MR(Rational(-2) * MR::identity(2)), MR::unit(2, 0, 1)}) {
    auto r = theoremThe_try<Rational>(A, nullptr);
    EXPECT_TRUE(r.complete) << r.missing;
    EXPECT_TRUE(verify_certificate(r.cert).ok);
  }
}

TEST(TheoremThe, RandomWithWitnesses) {
  PolyArg<Rational> p = anticomm();
  int complete = 0;
  for (int t = 0; t < 10; ++t) {
    MR A = rqmat<Rational>(2 + t % 2, 2 + t % 2);
    auto r = theoremThe_try<Rational>(A, &p);
    if (r.complete) {
      ++complete;
      EXPECT_TRUE(verify_certificate(r.cert, &p).ok);
    }
  }
  EXPECT_EQ(complete, 10);
}

TEST(TheoremThe, PluggableDecomposerIsUsed) {
  SLDecomposer<Rational> never = [](const MR&, const PolyArg<Rational>*) {
    return std::optional<std::vector<CommPair<Rational>>>();
  };
  auto r = theoremThe_try<Rational>(MR::unit(2, 0, 1), nullptr, never);
  EXPECT_FALSE(r.complete);
  EXPECT_EQ(r.missing, "B, C");
  try {
    theoremThe_decompose<Rational>(MR::unit(2, 0, 1), nullptr, never);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DecomposerIncomplete);
  }
}

TEST(ProductTwoIdem, Examples) {
  auto z = product_two_idem_commutators(MR(2, 2));
  EXPECT_TRUE(verify_certificate(z).ok);
  auto e = product_two_idem_commutators(MR::unit(2, 0, 1));
  EXPECT_TRUE(verify_certificate(e).ok);
  MR P = rand_invertible(4);
  MR N = P * direct_sum(MR::unit(2, 0, 1), MR(2, 2)) * mat_inverse(P);
  EXPECT_TRUE(verify_certificate(product_two_idem_commutators(N)).ok);
  try {
    product_two_idem_commutators(MR::identity(3));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::ExcludedCase);
  }
  EXPECT_THROW(product_two_idem_commutators(MR::identity(2)), Error);
}
