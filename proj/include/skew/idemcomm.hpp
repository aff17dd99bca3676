#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "skew/factor.hpp"

namespace skew {

enum class CertKind {
  IDEM_COMM,
  SUM_TWO_IDEM_COMM,
  DIFF_TWO_IDEM_COMM,
  PROD_TWO_IDEM_COMM,
  MULT_COMM_PRODUCT,
  SL_DIFF_OF_COMM_PRODUCTS,
  DIAG_PRODUCT,
  SL_DIFF,
};

const char* cert_kind_name(CertKind k);
CertKind parse_cert_kind(const std::string& s);  // Format on unknown names
std::vector<CertKind> all_cert_kinds();

template <class S>
struct IdemPair {
  QMat<S> E, F;
};

// G1 G2 G1^-1 G2^-1; w1, w2 are optional p-image witness tuples (empty when absent).
template <class S>
struct CommPair {
  QMat<S> G1, G2;
  std::vector<QMat<S>> w1, w2;
};

// Layout per kind:
//   IDEM_COMM                 idem[0]
//   SUM/DIFF/PROD_TWO_IDEM_COMM idem[0], idem[1]
//   MULT_COMM_PRODUCT         comm[0], comm[1]
//   SL_DIFF_OF_COMM_PRODUCTS  mats = {B, C}; B = comm[0] comm[1], C = comm[2] comm[3]
//   DIAG_PRODUCT              mats = {D1, D2, W1, W2}
//   SL_DIFF                   mats = {B, C}
template <class S>
struct Certificate {
  CertKind kind = CertKind::IDEM_COMM;
  QMat<S> target;
  std::vector<IdemPair<S>> idem;
  std::vector<CommPair<S>> comm;
  std::vector<QMat<S>> mats;
};

struct Verdict {
  bool ok = true;
  std::string violation;
};

// Checks every structural claim; witness tuples are checked only when p is given.
// Throws MalformedCertificate when the parts do not match the kind's layout.
template <class S>
Verdict verify_certificate(const Certificate<S>& c, const PolyArg<S>* p = nullptr);

template <class S>
QMat<S> idem_commutator(const IdemPair<S>& x) {
  return x.E * x.F - x.F * x.E;
}

template <class S>
QMat<S> mult_commutator(const CommPair<S>& x) {
  return x.G1 * x.G2 * mat_inverse(x.G1) * mat_inverse(x.G2);
}

// N = EF - FE for nilpotent N.
template <class S>
IdemPair<S> nilpotent_idem_commutator(const QMat<S>& N);

enum class TwoMode { SUM, DIFF };

// A = [E1,F1] +- [E2,F2] for A with zero diagonal sum.
template <class S>
Certificate<S> tracezero_two_idem_commutators(const QMat<S>& A, TwoMode mode, std::uint64_t seed = 0);

// lambda I_n as a product of two multiplicative commutators; lambda must be +-1.
template <class S>
Certificate<S> central_scalar_mult_commutator(const Quat<S>& lambda, int n, const PolyArg<S>* p = nullptr);

// B in SL_n as (commutator)(commutator), with witnesses when p is given; empty when not handled.
template <class S>
using SLDecomposer = std::function<std::optional<std::vector<CommPair<S>>>(const QMat<S>&, const PolyArg<S>*)>;

template <class S>
std::optional<std::vector<CommPair<S>>> builtin_sl_decomposer(const QMat<S>& B, const PolyArg<S>* p);

// Thrown as DecomposerIncomplete; partial holds whatever factors were completed.
template <class S>
struct DecomposeResult {
  Certificate<S> cert;
  bool complete = false;
  std::string missing;
};

// A = B - C with B, C each a product of two multiplicative commutators.
template <class S>
DecomposeResult<S> theoremThe_try(const QMat<S>& A, const PolyArg<S>* p, const SLDecomposer<S>& dec = {});

template <class S>
Certificate<S> theoremThe_decompose(const QMat<S>& A, const PolyArg<S>* p, const SLDecomposer<S>& dec = {});

// A = [E1,F1][E2,F2]; A invertible with n odd is excluded.
template <class S>
Certificate<S> product_two_idem_commutators(const QMat<S>& A, std::uint64_t seed = 0);

}  // namespace skew
