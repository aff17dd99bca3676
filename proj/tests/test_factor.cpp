#include <gtest/gtest.h>

#include "skew/factor.hpp"
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

MR rand_nilpotent(int n) {
  MR N(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) N(i, j) = rint(0, 3) ? rquat<Rational>() : QR();
  MR P = rand_invertible(n);
  return P * N * mat_inverse(P);
}

MR rand_singular_mixed(int n) {
  int r = static_cast<int>(rint(1, n - 1));
  MR A = direct_sum(rand_invertible(r), rand_nilpotent(n - r));
  MR P = rand_invertible(n);
  return P * A * mat_inverse(P);
}

bool exact_diagonalizes(const MR& D, const MR& W) {
  return is_invertible(W) && is_diagonal(MR(mat_inverse(W) * D * W));
}

void expect_cert(const MR& A, const DiagProductCert<Rational>& c) {
  EXPECT_EQ(c.D1 * c.D2, A);
  EXPECT_EQ(c.product, A);
  EXPECT_TRUE(exact_diagonalizes(c.D1, c.W1));
  EXPECT_TRUE(exact_diagonalizes(c.D2, c.W2));
}

NCPoly<Rational> anticomm() {
  using P = NCPoly<Rational>;
  return P::var(2, 0) * P::var(2, 1) + P::var(2, 1) * P::var(2, 0);
}

}  // namespace

TEST(LDU, Reconstructs) {
  for (int t = 0; t < 100; ++t) {
    int n = static_cast<int>(rint(1, 4));
    MR A = rqmat<Rational>(n, n);
    auto f = ldu(A);
    if (!f) continue;
    EXPECT_EQ(f->L * MR::diag(f->d) * f->U, A);
    for (int i = 0; i < n; ++i) {
      EXPECT_EQ(f->L(i, i), QR(1));
      EXPECT_EQ(f->U(i, i), QR(1));
      for (int j = i + 1; j < n; ++j) {
        EXPECT_EQ(f->L(i, j), QR());
        EXPECT_EQ(f->U(j, i), QR());
      }
    }
  }
  EXPECT_FALSE(ldu(MR{{QR(), QR(1)}, {QR(1), QR()}}));
}

TEST(TriangularEigenvectors, NonConjugateDiagonal) {
  for (int t = 0; t < 50; ++t) {
    int n = static_cast<int>(rint(1, 4));
    MR T(n, n);
    for (int i = 0; i < n; ++i) {
      T(i, i) = QR(Rational(i + 1), rrat(), rrat(), rrat());
      for (int j = i + 1; j < n; ++j) T(i, j) = rquat<Rational>();
    }
    EXPECT_TRUE(exact_diagonalizes(T, triangular_eigenvectors(T, false)));
    MR L = MR(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) L(i, j) = T(j, i);
    EXPECT_TRUE(exact_diagonalizes(L, triangular_eigenvectors(L, true)));
  }
}

TEST(TwoDiagonalizable, Examples) {
  MR Z(2, 2);
  auto z = two_diagonalizable_product(Z);
  EXPECT_EQ(z.D1, Z);
  EXPECT_EQ(z.D2, MR::identity(2));
  expect_cert(Z, z);

  MR J = MR::unit(2, 0, 1);
  auto j = two_diagonalizable_product(J);
  EXPECT_EQ(j.D1, (MR{{QR(), QR(1)}, {QR(1), QR()}}));
  EXPECT_EQ(j.D2, MR::diag({QR(), QR(1)}));
  expect_cert(J, j);

  MR A = MR::diag({QR::i(), Rational(2) * QR::j()});
  auto a = two_diagonalizable_product(A);
  expect_cert(A, a);
  EXPECT_TRUE(verify_diag_product(a));
}

TEST(TwoDiagonalizable, RandomMixedClasses) {
  for (int n = 2; n <= 4; ++n) {
    for (int t = 0; t < 100; ++t) {
      MR A;
      switch (t % 3) {
        case 0: A = rand_invertible(n); break;
        case 1: A = rand_nilpotent(n); break;
        default: A = rand_singular_mixed(n); break;
      }
      auto c = two_diagonalizable_product(A, static_cast<std::uint64_t>(t));
      expect_cert(A, c);
    }
  }
}

TEST(TwoDiagonalizable, TamperedCertificateFails) {
  MR A = rand_invertible(3);
  auto c = two_diagonalizable_product(A);
  c.D1(0, 0) += QR(1);
  EXPECT_FALSE(verify_diag_product(c));
}

TEST(DiagPreimage, Examples) {
  auto b = diag_preimage<Rational>(MR::diag({QR(2), QR(4)}), MR::identity(2), anticomm());
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0], MR::diag({QR(1), QR(2)}));
  EXPECT_EQ(b[1], MR::diag({QR(1), QR(1)}));

  UniPoly<Rational> sq({QR(), QR(), QR(1)});
  auto s = diag_preimage<Rational>(MR::diag({QR(-1), QR(-1)}), MR::identity(2), sq);
  EXPECT_EQ(s[0], MR::diag({QR::i(), QR::i()}));

  UniPoly<double> sqd({QD(), QD(), QD(1.0)});
  auto f = diag_preimage<double>(MD::diag({QD::j(), QD::k()}), MD::identity(2), sqd);
  const double h = 1 / std::sqrt(2.0);
  EXPECT_TRUE(mat_close(f[0], MD::diag({QD(h, 0, h, 0), QD(h, 0, 0, h)}), 1e-10));
  EXPECT_LT((f[0] * f[0] - MD::diag({QD::j(), QD::k()})).max_abs(), 1e-8);
}

TEST(DiagPreimage, ConjugatedWitness) {
  for (int t = 0; t < 30; ++t) {
    MR W = rand_invertible(3);
    MR D = MR::diag({QR(rrat()), QR(rrat()), QR(rrat())});
    MR M = W * D * mat_inverse(W);
    auto b = diag_preimage<Rational>(M, W, anticomm());
    EXPECT_EQ(eval_poly_arg<Rational>(anticomm(), b, 3), M);
  }
  NCPoly<Rational> nc = NCPoly<Rational>::unit(1, kUnitI) * NCPoly<Rational>::var(1, 0);
  EXPECT_THROW(diag_preimage<Rational>(MR::identity(2), MR::identity(2), nc), Error);
}

TEST(PImageProduct, Examples) {
  auto r = p_image_matrix_product<Rational>(MR::identity(2), anticomm());
  EXPECT_EQ(r.cert.D1, MR::identity(2));
  EXPECT_EQ(r.cert.D2, MR::identity(2));
  MR half = to_qmat_scalar(2, QR(Rational(1, 2)));
  EXPECT_EQ(r.first, (std::vector<MR>{half, MR::identity(2)}));
  EXPECT_EQ(r.second, (std::vector<MR>{half, MR::identity(2)}));

  MR J = MR::unit(2, 0, 1);
  UniPoly<double> sq({QD(), QD(), QD(1.0)});
  auto s = p_image_matrix_product<double>(J, sq);
  MD lhs = eval_poly_arg<double>(sq, s.first, 2) * eval_poly_arg<double>(sq, s.second, 2);
  EXPECT_LT((lhs - qmat_to_double(J)).max_abs(), 1e-8);
}

TEST(PImageProduct, RandomInvertibleEndToEnd) {
  for (int t = 0; t < 10; ++t) {
    MR A = rand_invertible(3);
    auto r = p_image_matrix_product<Rational>(A, anticomm(), static_cast<std::uint64_t>(t));
    EXPECT_EQ(eval_poly_arg<Rational>(anticomm(), r.first, 3) * eval_poly_arg<Rational>(anticomm(), r.second, 3), A);
    UniPoly<double> sq({QD(), QD(), QD(1.0)});
    auto f = p_image_matrix_product<double>(A, sq, static_cast<std::uint64_t>(t));
    MD lhs = eval_poly_arg<double>(sq, f.first, 3) * eval_poly_arg<double>(sq, f.second, 3);
    EXPECT_LT((lhs - qmat_to_double(A)).max_abs(), 1e-8 * std::max(1.0, A.max_abs()));
  }
}

TEST(SLDifference, Examples) {
  auto z = sl_difference(MR(2, 2));
  EXPECT_EQ(z.B, MR::identity(2));
  EXPECT_EQ(z.C, MR::identity(2));
  auto e = sl_difference(MR::unit(2, 0, 1));
  EXPECT_EQ(e.B, MR::identity(2));
  EXPECT_EQ(e.C, MR::identity(2) - MR::unit(2, 0, 1));
  auto d = sl_difference(MR::identity(2));
  EXPECT_EQ(d.B - d.C, MR::identity(2));
  EXPECT_EQ(dieudonne_det(d.B), Rational(1));
  EXPECT_EQ(dieudonne_det(d.C), Rational(1));
  try {
    sl_difference(MR{{QR(1)}});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::ShapeTooSmall);
  }
}

TEST(SLDifference, Random) {
  for (int t = 0; t < 200; ++t) {
    int n = static_cast<int>(rint(2, 4));
    MR A = rqmat<Rational>(n, n, 30);
    auto r = sl_difference(A);
    EXPECT_EQ(r.B - r.C, A);
    EXPECT_TRUE(is_in_SL(r.B));
    EXPECT_TRUE(is_in_SL(r.C));
  }
}
