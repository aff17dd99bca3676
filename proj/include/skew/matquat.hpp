#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "skew/mat.hpp"
#include "skew/ncpoly.hpp"

namespace skew {

template <class S>
using CMat = Mat<Cplx<S>>;

// Zero threshold for FLOAT matrix identities: 1e-9 max(1, |A|).
template <class S>
double mat_tol(const QMat<S>& A) {
  if constexpr (is_exact_v<S>) return 0;
  return 1e-9 * std::max(1.0, A.max_abs());
}

// q = z + w j  ->  [[z, w], [-conj(w), conj(z)]] blockwise (interleaved 2x2 blocks).
template <class S>
CMat<S> complex_adjoint(const QMat<S>& A);

// Reduced norm of the Dieudonne determinant: product of qnorm over elimination pivots; 0 if singular.
template <class S>
S dieudonne_det(const QMat<S>& A);

template <class S>
bool is_in_SL(const QMat<S>& A);

// Upper Jordan block J_size(alpha), alpha = a + b i with b >= 0.
template <class S>
struct JordanBlock {
  int size = 1;
  Cplx<S> alpha;
};

template <class S>
struct JordanData {
  QMat<S> P;
  std::vector<JordanBlock<S>> blocks;
};

template <class S>
QMat<S> jordan_matrix(const std::vector<JordanBlock<S>>& blocks);

// P^-1 A P = jordan_matrix(blocks). FLOAT in general; EXACT when the spectrum is rational-complex.
template <class S>
JordanData<S> jordan_form(const QMat<S>& A);

template <class S>
struct DiagWitness {
  bool ok = false;
  QMat<S> W;               // W^-1 A W = diag(d) when ok
  std::vector<Quat<S>> d;
};

template <class S>
DiagWitness<S> is_diagonalizable(const QMat<S>& A);

template <class S>
bool is_nilpotent(const QMat<S>& A);

// P A Q = I_r (+) 0.
template <class S>
struct RankNormalForm {
  QMat<S> P, Q;
  int r = 0;
};

template <class S>
RankNormalForm<S> rank_normal_form(const QMat<S>& A);

template <class S>
struct Equivalence {
  QMat<S> P, Q;
};

// P A Q with zero diagonal: rank normal form followed by a cyclic column shift.
template <class S>
Equivalence<S> zero_diagonal_equivalence(const QMat<S>& A);

// P with P^-1 A P zero-diagonal. Needs Re(sum of diagonal) = 0 and A not a nonzero central scalar.
template <class S>
QMat<S> zero_diagonal_similarity(const QMat<S>& A, std::uint64_t seed = 0);

// Each column scaled by a positive rational so its coordinates are coprime integers. FLOAT: unchanged.
template <class S>
QMat<S> primitive_columns(const QMat<S>& P);

// M^ceil(n/(t+1)) = 0, i.e. M is similar into T_n^(t).
template <class S>
bool tri_level_membership(const QMat<S>& M, int t);

// M = M1 M2 (or M2 M1 when right_handed) with M1 in SL_n and M2 = diag(1, ..., 1, alpha).
template <class S>
struct SLFactor {
  QMat<S> M1, M2;
  Quat<S> alpha;
};

template <class S>
SLFactor<S> sl_factor(const QMat<S>& M, bool right_handed = false);

// x with a x - x b = c; throws Singular when a and b are conjugate.
template <class S>
Quat<S> solve_sylvester(const Quat<S>& a, const Quat<S>& b, const Quat<S>& c);

// Coordinates of a quaternion vector as a right C-vector: v_r = z_r + j w_r -> (z_r, w_r).
template <class S>
std::vector<Cplx<S>> to_complex_coords(const std::vector<Quat<S>>& v);
template <class S>
std::vector<Quat<S>> from_complex_coords(const std::vector<Cplx<S>>& x);

// Matrix of v -> A v on H^n viewed as a right C-vector space (2n x 2n).
template <class S>
CMat<S> right_complex_matrix(const QMat<S>& A);

template <class S>
bool is_diagonal(const QMat<S>& A, double tol = 0) {
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j)
      if (i != j && !qis_zero(A(i, j), tol)) return false;
  return true;
}

template <class S>
bool has_zero_diagonal(const QMat<S>& A, double tol = 0) {
  for (int i = 0; i < std::min(A.rows(), A.cols()); ++i)
    if (!qis_zero(A(i, i), tol)) return false;
  return true;
}

template <class S>
Quat<S> diagonal_sum(const QMat<S>& A) {
  Quat<S> s;
  for (int i = 0; i < std::min(A.rows(), A.cols()); ++i) s += A(i, i);
  return s;
}

template <class S>
std::optional<Quat<S>> central_scalar_value(const QMat<S>& A, double tol = 0) {
  if (!A.square() || A.rows() == 0) return std::nullopt;
  Quat<S> l = A(0, 0);
  if (!is_central(l, tol) || !is_diagonal(A, tol)) return std::nullopt;
  for (int i = 1; i < A.rows(); ++i)
    if (!qclose(A(i, i), l, tol)) return std::nullopt;
  return l;
}

template <class S>
QMat<S> to_qmat_scalar(int n, const Quat<S>& q) {
  return q * QMat<S>::identity(n);
}

// p(A_1, ..., A_m) for n x n quaternion matrices.
template <class S>
QMat<S> nc_eval_mat(const NCPoly<S>& p, const std::vector<QMat<S>>& pt, int n) {
  if (static_cast<int>(pt.size()) != p.nvars()) throw Error(Errc::ArityMismatch, "evaluation point");
  QMat<S> acc(n, n);
  for (auto& [w, c] : p.terms()) {
    QMat<S> m = Quat<S>(c) * QMat<S>::identity(n);
    for (Token t : w) m = is_unit(t) ? m * unit_quat<S>(t) : m * pt[t];
    acc += m;
  }
  return acc;
}

// sum a_t A^t; coefficients act as left scalars.
template <class S>
QMat<S> uni_eval_mat(const UniPoly<S>& f, const QMat<S>& A) {
  const int n = A.rows();
  QMat<S> acc(n, n), pw = QMat<S>::identity(n);
  for (int t = 0; t <= f.degree(); ++t) {
    acc += f.coeff(t) * pw;
    pw = pw * A;
  }
  return acc;
}

template <class S>
QMat<double> qmat_to_double(const QMat<S>& A) {
  return A.map([](const Quat<S>& q) {
    return Quat<double>(Scalar<S>::to_double(q.a), Scalar<S>::to_double(q.b), Scalar<S>::to_double(q.c),
                        Scalar<S>::to_double(q.d));
  });
}

}  // namespace skew
