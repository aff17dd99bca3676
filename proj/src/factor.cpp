#include "skew/factor.hpp"

#include <algorithm>
#include <set>

#include "skew/rng.hpp"
#include "skew/uniroots.hpp"

namespace skew {

namespace {

template <class S>
bool mats_equal(const QMat<S>& a, const QMat<S>& b, double scale) {
  if constexpr (is_exact_v<S>)
    return a == b;
  else
    return mat_close(a, b, 1e-8 * std::max(1.0, scale));
}

template <class S>
QMat<S> diag_of(const std::vector<Quat<S>>& d) {
  return QMat<S>::diag(d);
}

template <class S>
QMat<S> random_conjugator(Rng& rng, int n) {
  for (;;) {
    QMat<S> P(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) P(i, j) = rng.small_int_quat<S>(9);
    if (is_invertible(P)) return P;
  }
}

// Distinct positive integers lambda_i with qnorm(d_i) / lambda_i^2 pairwise distinct.
template <class S>
std::vector<S> separating_scales(const std::vector<Quat<S>>& d) {
  std::vector<S> lam, vals;
  std::set<long> used;
  for (auto& q : d) {
    S nq = qnorm(q);
    for (long c = 1;; ++c) {
      if (used.count(c)) continue;
      S v = nq / S(c * c);
      bool clash = false;
      for (auto& w : vals)
        if (Scalar<S>::is_zero(S(v - w), is_exact_v<S> ? 0 : 1e-9 * std::max(1.0, Scalar<S>::to_double(w)))) clash = true;
      if (clash) continue;
      used.insert(c);
      lam.push_back(S(c));
      vals.push_back(v);
      break;
    }
  }
  return lam;
}

template <class S>
DiagProductCert<S> central_case(const QMat<S>& A, const Quat<S>& l) {
  const int n = A.rows();
  DiagProductCert<S> c;
  c.D1 = to_qmat_scalar(n, l);
  c.D2 = QMat<S>::identity(n);
  c.W1 = c.W2 = QMat<S>::identity(n);
  c.product = A;
  return c;
}

template <class S>
DiagProductCert<S> invertible_case(const QMat<S>& A, Rng& rng) {
  const int n = A.rows();
  if (auto l = central_scalar_value(A, mat_tol(A))) return central_case(A, *l);
  for (int attempt = 0; attempt < 32; ++attempt) {
    QMat<S> P = attempt == 0 ? QMat<S>::identity(n) : random_conjugator<S>(rng, n);
    QMat<S> Pi = mat_inverse(P);
    QMat<S> B = Pi * A * P;
    auto f = ldu(B);
    if (!f) continue;
    std::vector<S> lam = separating_scales(f->d);
    std::vector<Quat<S>> ld, li;
    for (int t = 0; t < n; ++t) {
      ld.emplace_back(lam[t]);
      li.emplace_back(S(S(1) / lam[t]));
    }
    QMat<S> D1 = f->L * diag_of(ld);
    QMat<S> D2 = diag_of(li) * diag_of(f->d) * f->U;
    QMat<S> W1, W2;
    try {
      W1 = triangular_eigenvectors(D1, true);
      W2 = triangular_eigenvectors(D2, false);
    } catch (const Error&) {
      continue;
    }
    DiagProductCert<S> c;
    c.D1 = P * D1 * Pi;
    c.D2 = P * D2 * Pi;
    c.W1 = P * W1;
    c.W2 = P * W2;
    c.product = A;
    if (verify_diag_product(c)) return c;
  }
  throw Error(Errc::GenericityExhausted, "no conjugate with invertible leading minors found");
}

// J_k(0) = X diag(0, 1, ..., 1) with X = [c | e_1 | ... | e_{k-1}] of characteristic polynomial
// t^k - c_0 t^(k-1) - ... - c_{k-1}, chosen with the distinct roots 1, -1, 2, -2, ...
template <class S>
void nilpotent_block(int k, QMat<S>& X, QMat<S>& E, QMat<S>& WX) {
  std::vector<S> roots;
  for (int t = 0; static_cast<int>(roots.size()) < k; ++t) roots.push_back(t % 2 ? S(-(t / 2 + 1)) : S(t / 2 + 1));
  std::vector<S> poly{S(1)};  // monic, coefficients from leading
  for (auto& r : roots) {
    std::vector<S> next(poly.size() + 1, S(0));
    for (std::size_t s = 0; s < poly.size(); ++s) {
      next[s] += poly[s];
      next[s + 1] -= r * poly[s];
    }
    poly = next;
  }
  X = QMat<S>(k, k);
  for (int s = 0; s < k; ++s) X(s, 0) = Quat<S>(S(-poly[s + 1]));
  for (int t = 1; t < k; ++t) X(t - 1, t) = Quat<S>(S(1));
  E = QMat<S>::identity(k);
  E(0, 0) = Quat<S>();
  WX = QMat<S>(k, k);
  for (int s = 0; s < k; ++s) {
    auto ker = right_kernel(QMat<S>(X - to_qmat_scalar(k, Quat<S>(roots[s]))), mat_tol(X) * 10);
    if (ker.size() != 1) throw Error(Errc::SolverExhausted, "companion eigenvector");
    WX.set_col(s, ker[0]);
  }
}

template <class S>
DiagProductCert<S> nilpotent_case(const QMat<S>& A) {
  const int n = A.rows();
  auto jd = jordan_form(A);
  QMat<S> X(n, n), E(n, n), WX(n, n);
  int off = 0;
  for (auto& b : jd.blocks) {
    QMat<S> x, e, w;
    nilpotent_block(b.size, x, e, w);
    X.set_block(off, off, x);
    E.set_block(off, off, e);
    WX.set_block(off, off, w);
    off += b.size;
  }
  QMat<S> Pi = mat_inverse(jd.P);
  DiagProductCert<S> c;
  c.D1 = jd.P * X * Pi;
  c.D2 = jd.P * E * Pi;
  c.W1 = jd.P * WX;
  c.W2 = jd.P;
  c.product = A;
  return c;
}

template <class S>
QMat<S> strict_part(const QMat<S>& A, bool lower) {
  QMat<S> R(A.rows(), A.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j)
      if (lower ? i > j : i < j) R(i, j) = A(i, j);
  return R;
}

template <class S>
bool is_diagonal_conj(const QMat<S>& D, const QMat<S>& W) {
  if (!is_invertible(W)) return false;
  QMat<S> Z = mat_inverse(W) * D * W;
  double tol = is_exact_v<S> ? 0 : 1e-8 * std::max(1.0, D.max_abs()) * std::max(1.0, W.max_abs());
  return is_diagonal(Z, tol);
}

}  // namespace

template <class S>
bool verify_diag_product(const DiagProductCert<S>& c) {
  if (!mats_equal(QMat<S>(c.D1 * c.D2), c.product, c.D1.max_abs() * c.D2.max_abs())) return false;
  return is_diagonal_conj(c.D1, c.W1) && is_diagonal_conj(c.D2, c.W2);
}

template <class S>
std::optional<LDU<S>> ldu(const QMat<S>& A) {
  const int n = A.rows();
  QMat<S> Sc = A;
  LDU<S> out{QMat<S>::identity(n), QMat<S>::identity(n), {}};
  const double tol = mat_tol(A);
  for (int k = 0; k < n; ++k) {
    Quat<S> p = Sc(k, k);
    if (qis_zero(p, tol)) return std::nullopt;
    Quat<S> pi = qinv(p);
    out.d.push_back(p);
    for (int i = k + 1; i < n; ++i) out.L(i, k) = Sc(i, k) * pi;
    for (int j = k + 1; j < n; ++j) out.U(k, j) = pi * Sc(k, j);
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) Sc(i, j) -= Sc(i, k) * pi * Sc(k, j);
  }
  return out;
}

template <class S>
QMat<S> triangular_eigenvectors(const QMat<S>& T, bool lower) {
  const int n = T.rows();
  QMat<S> W(n, n);
  for (int j = 0; j < n; ++j) {
    W(j, j) = Quat<S>(S(1));
    const Quat<S>& tj = T(j, j);
    if (lower) {
      for (int i = j + 1; i < n; ++i) {
        Quat<S> c;
        for (int l = j; l < i; ++l) c -= T(i, l) * W(l, j);
        W(i, j) = solve_sylvester(T(i, i), tj, c);
      }
    } else {
      for (int i = j - 1; i >= 0; --i) {
        Quat<S> c;
        for (int l = i + 1; l <= j; ++l) c -= T(i, l) * W(l, j);
        W(i, j) = solve_sylvester(T(i, i), tj, c);
      }
    }
  }
  return W;
}

template <class S>
DiagProductCert<S> two_diagonalizable_product(const QMat<S>& A, std::uint64_t seed) {
  if (!A.square() || A.rows() == 0) throw Error(Errc::ShapeMismatch, "square matrix required");
  const int n = A.rows();
  const double tol = mat_tol(A);
  Rng rng(seed);
  DiagProductCert<S> c;
  if (auto l = central_scalar_value(A, tol)) {
    c = central_case(A, *l);
  } else if (is_invertible(A)) {
    c = invertible_case(A, rng);
  } else if (is_nilpotent(A)) {
    c = nilpotent_case(A);
  } else {
    // Fitting decomposition: H^n = im A^n (+) ker A^n, both A-invariant.
    QMat<S> An = mat_pow(A, n);
    auto E = echelon(An);
    std::vector<std::vector<Quat<S>>> cols;
    for (int pc : E.pivcols) cols.push_back(An.col(pc));
    const int r = static_cast<int>(cols.size());
    for (auto& v : right_kernel(An)) cols.push_back(v);
    QMat<S> F = QMat<S>::from_cols(cols);
    QMat<S> Fi = mat_inverse(F);
    QMat<S> B = Fi * A * F;
    QMat<S> A1 = B.block(0, 0, r, r), A2 = B.block(r, r, n - r, n - r);
    auto c1 = invertible_case(A1, rng);
    auto c2 = nilpotent_case(A2);
    c.D1 = F * direct_sum(c1.D1, c2.D1) * Fi;
    c.D2 = F * direct_sum(c1.D2, c2.D2) * Fi;
    c.W1 = F * direct_sum(c1.W1, c2.W1);
    c.W2 = F * direct_sum(c1.W2, c2.W2);
    c.product = A;
  }
  if (!verify_diag_product(c)) throw Error(Errc::GenericityExhausted, "two-diagonalizable certificate failed");
  return c;
}

template <class S>
std::vector<QMat<S>> diag_preimage(const QMat<S>& M, const QMat<S>& W, const PolyArg<S>& p) {
  const int n = M.rows();
  if (auto* nc = std::get_if<NCPoly<S>>(&p)) {
    if (!is_central_coeffs(*nc)) throw Error(Errc::NonCentralCoefficients, "matrix preimage needs central coefficients");
  } else {
    for (auto& q : std::get<UniPoly<S>>(p).coeffs())
      if (!is_central(q, 0)) throw Error(Errc::NonCentralCoefficients, "matrix preimage needs central coefficients");
  }
  QMat<S> Wi = mat_inverse(W);
  QMat<S> Dm = Wi * M * W;
  const double tol = is_exact_v<S> ? 0 : 1e-8 * std::max(1.0, Dm.max_abs());
  if (!is_diagonal(Dm, tol))
    throw Error(Errc::NoWitness, "witness does not diagonalize the matrix");
  const int m = poly_arity(p);
  std::vector<std::vector<Quat<S>>> entries(m, std::vector<Quat<S>>(n));
  for (int t = 0; t < n; ++t) {
    std::vector<Quat<S>> pt;
    if (auto* nc = std::get_if<NCPoly<S>>(&p))
      pt = image_oracle(*nc, Dm(t, t));
    else
      pt = {preimage(std::get<UniPoly<S>>(p), Dm(t, t))};
    for (int l = 0; l < m; ++l) entries[l][t] = pt[l];
  }
  std::vector<QMat<S>> out;
  for (int l = 0; l < m; ++l) out.push_back(W * QMat<S>::diag(entries[l]) * Wi);
  return out;
}

template <class S>
PImageProduct<S> p_image_matrix_product(const QMat<Rational>& A, const PolyArg<S>& p, std::uint64_t seed) {
  PImageProduct<S> out;
  out.cert = two_diagonalizable_product(A, seed);
  out.first = diag_preimage(to_backend<S>(out.cert.D1), to_backend<S>(out.cert.W1), p);
  out.second = diag_preimage(to_backend<S>(out.cert.D2), to_backend<S>(out.cert.W2), p);
  return out;
}

template <class S>
SLDifference<S> sl_difference(const QMat<S>& A) {
  if (!A.square()) throw Error(Errc::ShapeMismatch, "square matrix required");
  const int n = A.rows();
  if (n < 2) throw Error(Errc::ShapeTooSmall, "SL difference needs n >= 2");
  const QMat<S> I = QMat<S>::identity(n);
  SLDifference<S> out;
  if (has_zero_diagonal(A)) {
    out.B = I + strict_part(A, true);
    out.C = I - strict_part(A, false);
    return out;
  }
  auto eq = zero_diagonal_equivalence(A);
  auto pf = sl_factor(eq.P, true);   // P = P2 P1
  auto qf = sl_factor(eq.Q, false);  // Q = Q1 Q2
  QMat<S> N = pf.M1 * A * qf.M1;
  for (int t = 0; t < n; ++t) N(t, t) = Quat<S>();
  QMat<S> B1 = I + strict_part(N, true), C1 = I - strict_part(N, false);
  QMat<S> P1i = mat_inverse(pf.M1), Q1i = mat_inverse(qf.M1);
  out.B = P1i * B1 * Q1i;
  out.C = P1i * C1 * Q1i;
  if constexpr (is_exact_v<S>)
    if (out.B - out.C != A || !is_in_SL(out.B) || !is_in_SL(out.C))
      throw Error(Errc::SolverExhausted, "SL difference failed to verify");
  return out;
}

#define SKEW_INSTANTIATE(S)                                                                                \
  template bool verify_diag_product(const DiagProductCert<S>&);                                            \
  template DiagProductCert<S> two_diagonalizable_product(const QMat<S>&, std::uint64_t);                   \
  template QMat<S> triangular_eigenvectors(const QMat<S>&, bool);                                          \
  template std::optional<LDU<S>> ldu(const QMat<S>&);                                                      \
  template std::vector<QMat<S>> diag_preimage(const QMat<S>&, const QMat<S>&, const PolyArg<S>&);          \
  template PImageProduct<S> p_image_matrix_product(const QMat<Rational>&, const PolyArg<S>&, std::uint64_t); \
  template SLDifference<S> sl_difference(const QMat<S>&);

SKEW_INSTANTIATE(Rational)
SKEW_INSTANTIATE(double)

}  // namespace skew
