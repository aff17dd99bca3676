#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "skew/matquat.hpp"

namespace skew {

// product = D1 D2 with W_i^-1 D_i W_i diagonal.
template <class S>
struct DiagProductCert {
  QMat<S> D1, D2, W1, W2, product;
};

template <class S>
bool verify_diag_product(const DiagProductCert<S>& c);

template <class S>
DiagProductCert<S> two_diagonalizable_product(const QMat<S>& A, std::uint64_t seed = 0);

// Eigenvector matrix of a triangular matrix whose diagonal entries are pairwise non-conjugate.
template <class S>
QMat<S> triangular_eigenvectors(const QMat<S>& T, bool lower);

// Noncommutative Doolittle: A = L diag(d) U, L unit lower, U unit upper. Empty optional on a zero pivot.
template <class S>
struct LDU {
  QMat<S> L, U;
  std::vector<Quat<S>> d;
};

template <class S>
std::optional<LDU<S>> ldu(const QMat<S>& A);

// A polynomial admissible for matrix preimages: central coefficients, so p(W X W^-1) = W p(X) W^-1.
template <class S>
using PolyArg = std::variant<NCPoly<S>, UniPoly<S>>;

template <class S>
int poly_arity(const PolyArg<S>& p) {
  return std::holds_alternative<NCPoly<S>>(p) ? std::get<NCPoly<S>>(p).nvars() : 1;
}

template <class S>
QMat<S> eval_poly_arg(const PolyArg<S>& p, const std::vector<QMat<S>>& pt, int n) {
  if (auto* nc = std::get_if<NCPoly<S>>(&p)) return nc_eval_mat(*nc, pt, n);
  if (pt.size() != 1) throw Error(Errc::ArityMismatch, "univariate polynomial takes one matrix");
  return uni_eval_mat(std::get<UniPoly<S>>(p), pt[0]);
}

// B_1..B_m with p(B_1..B_m) = M, where W^-1 M W is diagonal.
template <class S>
std::vector<QMat<S>> diag_preimage(const QMat<S>& M, const QMat<S>& W, const PolyArg<S>& p);

template <class S>
struct PImageProduct {
  std::vector<QMat<S>> first, second;
  DiagProductCert<Rational> cert;
};

// A = p(first) p(second). The factorization runs exactly; preimages are taken over S.
template <class S>
PImageProduct<S> p_image_matrix_product(const QMat<Rational>& A, const PolyArg<S>& p, std::uint64_t seed = 0);

// A = B - C with B, C in SL_n.
template <class S>
struct SLDifference {
  QMat<S> B, C;
};

template <class S>
SLDifference<S> sl_difference(const QMat<S>& A);

template <class S>
QMat<S> to_backend(const QMat<Rational>& A) {
  if constexpr (is_exact_v<S>)
    return A;
  else
    return qmat_to_double(A);
}

}  // namespace skew
