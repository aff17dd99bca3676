#include "skew/idemcomm.hpp"

#include <algorithm>
#include <array>

#include "skew/rng.hpp"
#include "skew/zmat.hpp"

namespace skew {

const char* cert_kind_name(CertKind k) {
  switch (k) {
    case CertKind::IDEM_COMM: return "IDEM_COMM";
    case CertKind::SUM_TWO_IDEM_COMM: return "SUM_TWO_IDEM_COMM";
    case CertKind::DIFF_TWO_IDEM_COMM: return "DIFF_TWO_IDEM_COMM";
    case CertKind::PROD_TWO_IDEM_COMM: return "PROD_TWO_IDEM_COMM";
    case CertKind::MULT_COMM_PRODUCT: return "MULT_COMM_PRODUCT";
    case CertKind::SL_DIFF_OF_COMM_PRODUCTS: return "SL_DIFF_OF_COMM_PRODUCTS";
    case CertKind::DIAG_PRODUCT: return "DIAG_PRODUCT";
    case CertKind::SL_DIFF: return "SL_DIFF";
  }
  return "?";
}

std::vector<CertKind> all_cert_kinds() {
  return {CertKind::IDEM_COMM,         CertKind::SUM_TWO_IDEM_COMM,        CertKind::DIFF_TWO_IDEM_COMM,
          CertKind::PROD_TWO_IDEM_COMM, CertKind::MULT_COMM_PRODUCT,        CertKind::SL_DIFF_OF_COMM_PRODUCTS,
          CertKind::DIAG_PRODUCT,       CertKind::SL_DIFF};
}

CertKind parse_cert_kind(const std::string& s) {
  for (CertKind k : all_cert_kinds())
    if (s == cert_kind_name(k)) return k;
  throw Error(Errc::Format, "unknown certificate kind '" + s + "'");
}

namespace {

template <class S>
bool close(const QMat<S>& a, const QMat<S>& b) {
  if constexpr (is_exact_v<S>)
    return a == b;
  else
    return mat_close(a, b, 1e-8 * std::max({1.0, a.max_abs(), b.max_abs()}));
}

template <class S>
bool qzero(const Quat<S>& q, double scale = 1) {
  if constexpr (is_exact_v<S>)
    return q == Quat<S>();
  else
    return qis_zero(q, 1e-9 * std::max(1.0, scale));
}

template <class S>
bool szero(const S& x, double scale = 1) {
  if constexpr (is_exact_v<S>)
    return x == S(0);
  else
    return std::abs(x) <= 1e-9 * std::max(1.0, scale);
}

template <class S>
IdemPair<S> conj_pair(const QMat<S>& P, const IdemPair<S>& x) {
  QMat<S> Pi = mat_inverse(P);
  return {P * x.E * Pi, P * x.F * Pi};
}

template <class S>
CommPair<S> conj_comm(const QMat<S>& P, const CommPair<S>& x) {
  QMat<S> Pi = mat_inverse(P);
  return {P * x.G1 * Pi, P * x.G2 * Pi, {}, {}};
}

template <class S>
QMat<S> strict(const QMat<S>& A, bool upper) {
  QMat<S> out(A.rows(), A.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j)
      if (upper ? j > i : j < i) out(i, j) = A(i, j);
  return out;
}

// ---- verification ----

struct Checker {
  Verdict v;
  void fail(const std::string& what) {
    if (v.ok) {
      v.ok = false;
      v.violation = what;
    }
  }
};

template <class S>
void check_pair(Checker& ck, const IdemPair<S>& x, int idx) {
  const std::string tag = " (pair " + std::to_string(idx) + ")";
  if (!close(QMat<S>(x.E * x.E), x.E)) ck.fail("E^2 = E" + tag);
  if (!close(QMat<S>(x.F * x.F), x.F)) ck.fail("F^2 = F" + tag);
  // Over H only the real part of the diagonal sum of a commutator vanishes.
  if (!szero<S>(diagonal_sum(idem_commutator(x)).a, x.E.max_abs() * x.F.max_abs()))
    ck.fail("Re(diagonal sum of [E,F]) = 0" + tag);
}

const char* idem_relation(CertKind k) {
  switch (k) {
    case CertKind::IDEM_COMM: return "EF - FE = target";
    case CertKind::SUM_TWO_IDEM_COMM: return "[E1,F1] + [E2,F2] = target";
    case CertKind::DIFF_TWO_IDEM_COMM: return "[E1,F1] - [E2,F2] = target";
    default: return "[E1,F1][E2,F2] = target";
  }
}

template <class S>
void check_idem_float(Checker& ck, const Certificate<S>& c) {
  for (std::size_t t = 0; t < c.idem.size(); ++t) check_pair(ck, c.idem[t], static_cast<int>(t));
  if (!ck.v.ok) return;
  QMat<S> x = idem_commutator(c.idem[0]);
  if (c.kind != CertKind::IDEM_COMM) {
    QMat<S> y = idem_commutator(c.idem[1]);
    x = c.kind == CertKind::SUM_TWO_IDEM_COMM ? QMat<S>(x + y)
        : c.kind == CertKind::DIFF_TWO_IDEM_COMM ? QMat<S>(x - y)
                                                 : QMat<S>(x * y);
  }
  if (!close(x, c.target)) ck.fail(idem_relation(c.kind));
}

// Same checks on integer matrices over a common denominator; the conjugated pairs produced for
// larger n carry entries with thousands of digits.
void check_idem_exact(Checker& ck, const Certificate<Rational>& c) {
  std::vector<ZMat> comms;
  for (std::size_t t = 0; t < c.idem.size(); ++t) {
    const std::string tag = " (pair " + std::to_string(t) + ")";
    ZMat E(c.idem[t].E), F(c.idem[t].F);
    if (!(E * E == E)) ck.fail("E^2 = E" + tag);
    if (!(F * F == F)) ck.fail("F^2 = F" + tag);
    comms.push_back(E * F - F * E);
    if (!comms.back().real_diagonal_sum_is_zero()) ck.fail("Re(diagonal sum of [E,F]) = 0" + tag);
  }
  if (!ck.v.ok) return;
  ZMat x = comms[0];
  if (c.kind == CertKind::SUM_TWO_IDEM_COMM) x = comms[0] + comms[1];
  if (c.kind == CertKind::DIFF_TWO_IDEM_COMM) x = comms[0] - comms[1];
  if (c.kind == CertKind::PROD_TWO_IDEM_COMM) x = comms[0] * comms[1];
  if (!(x == ZMat(c.target))) ck.fail(idem_relation(c.kind));
}

template <class S>
std::optional<QMat<S>> check_comm(Checker& ck, const CommPair<S>& x, int idx, const PolyArg<S>* p) {
  const std::string tag = " (commutator " + std::to_string(idx) + ")";
  if (!is_invertible(x.G1)) ck.fail("G1 invertible" + tag);
  if (!is_invertible(x.G2)) ck.fail("G2 invertible" + tag);
  if (!ck.v.ok) return std::nullopt;
  if (p) {
    const int n = x.G1.rows();
    auto wit = [&](const std::vector<QMat<S>>& w, const QMat<S>& G, const char* name) {
      if (w.empty()) return;
      if (static_cast<int>(w.size()) != poly_arity(*p)) {
        ck.fail(std::string("witness arity for ") + name + tag);
        return;
      }
      for (auto& m : w)
        if (m.rows() != n || m.cols() != n) throw Error(Errc::MalformedCertificate, "witness shape");
      if (!close(eval_poly_arg(*p, w, n), G)) ck.fail(std::string("p(witness) = ") + name + tag);
    };
    wit(x.w1, x.G1, "G1");
    wit(x.w2, x.G2, "G2");
  }
  return mult_commutator(x);
}

template <class S>
void check_shapes(const Certificate<S>& c) {
  if (!c.target.square()) throw Error(Errc::MalformedCertificate, "target must be square");
  const int n = c.target.rows();
  auto sq = [&](const QMat<S>& m) {
    if (m.rows() != n || m.cols() != n) throw Error(Errc::MalformedCertificate, "part shape differs from target");
  };
  for (auto& x : c.idem) {
    sq(x.E);
    sq(x.F);
  }
  for (auto& x : c.comm) {
    sq(x.G1);
    sq(x.G2);
  }
  for (auto& m : c.mats) sq(m);
  std::size_t ni = 0, nc = 0, nm = 0;
  switch (c.kind) {
    case CertKind::IDEM_COMM: ni = 1; break;
    case CertKind::SUM_TWO_IDEM_COMM:
    case CertKind::DIFF_TWO_IDEM_COMM:
    case CertKind::PROD_TWO_IDEM_COMM: ni = 2; break;
    case CertKind::MULT_COMM_PRODUCT: nc = 2; break;
    case CertKind::SL_DIFF_OF_COMM_PRODUCTS:
      nc = 4;
      nm = 2;
      break;
    case CertKind::DIAG_PRODUCT: nm = 4; break;
    case CertKind::SL_DIFF: nm = 2; break;
  }
  if (c.idem.size() != ni || c.comm.size() != nc || c.mats.size() != nm)
    throw Error(Errc::MalformedCertificate,
                std::string(cert_kind_name(c.kind)) + " expects " + std::to_string(ni) + " idempotent pairs, " +
                    std::to_string(nc) + " commutators, " + std::to_string(nm) + " matrices");
}

template <class S>
bool unit_norm(const S& x) {
  if constexpr (is_exact_v<S>)
    return x == S(1);
  else
    return std::abs(x - 1) <= 1e-8;
}

// ---- nilpotent blocks ----

// E = diag(1,0,1,...), F upper triangular with [E,F] = J_k(0) and F^2 = F.
template <class S>
IdemPair<S> nilpotent_block(int k) {
  QMat<S> E(k, k), F(k, k);
  std::vector<int> e(k);
  for (int i = 0; i < k; ++i) e[i] = (i % 2 == 0) ? 1 : 0;
  for (int i = 0; i < k; ++i) {
    E(i, i) = Quat<S>(S(e[i]));
    F(i, i) = Quat<S>(S(e[i]));
  }
  for (int d = 1; d < k; ++d)
    for (int i = 0; i + d < k; ++i) {
      const int j = i + d;
      if (d == 1) {
        F(i, j) = Quat<S>(S(e[i] - e[j]));
      } else if (d % 2 == 0) {
        Quat<S> s;
        for (int l = i + 1; l < j; ++l) s += F(i, l) * F(l, j);
        F(i, j) = S(e[i] ? -1 : 1) * s;
      }
    }
  return {E, F};
}

// ---- n = 2 fallback ----

template <class S>
S qdot(const Quat<S>& p, const Quat<S>& q) {
  return p.a * q.a + p.b * q.b + p.c * q.c + p.d * q.d;
}

// Component orthogonal to span(1, y).
template <class S>
Quat<S> perp(const Quat<S>& q, const Quat<S>& y) {
  Quat<S> qv = qpure(q), yv = qpure(y);
  return qv - (qdot(qv, yv) / qdot(yv, yv)) * yv;
}

// Some x with M x = b (real columns), if consistent.
template <class S>
std::optional<std::vector<S>> particular(const Mat<S>& M, const std::vector<S>& b) {
  const int r = M.rows(), c = M.cols();
  Mat<S> aug(r, c + 1);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) aug(i, j) = M(i, j);
    aug(i, c) = b[i];
  }
  auto E = echelon(aug);
  for (int pc : E.pivcols)
    if (pc == c) return std::nullopt;
  std::vector<S> x(c, S(0));
  for (int t = 0; t < E.rank(); ++t) x[E.pivcols[t]] = E.R(t, c);
  return x;
}

template <class S>
std::vector<S> coords(const Quat<S>& q) {
  return {q.a, q.b, q.c, q.d};
}

template <class S>
QMat<S> m2(const Quat<S>& a, const Quat<S>& b, const Quat<S>& c, const Quat<S>& d) {
  QMat<S> M(2, 2);
  M(0, 0) = a;
  M(0, 1) = b;
  M(1, 0) = c;
  M(1, 1) = d;
  return M;
}

// A = [E1,F1] + [E2,F2] for 2x2 A with zero diagonal sum, without a zero-diagonal similarity.
// After A' = U^-1 A U (U unit upper), X = [[ab, a], [-b, -ba]] is [E1,F1] for E1 = [[1,a],[0,0]],
// F1 = [[0,0],[b,1]]; a, b are chosen so that Y = A' - X has e1 as an eigenvector of Y^2 with
// eigenvalue k such that k + 1/4 = (Y11 + tau)^2. In the basis (e1, Y e1), Y = [[0,k],[1,0]] = [e11, F2].
template <class S>
std::optional<std::array<IdemPair<S>, 2>> two_by_two_fallback(const QMat<S>& A, std::uint64_t seed) {
  using Q = Quat<S>;
  const double sc = std::max(1.0, A.max_abs());
  const Q one(S(1)), zero;
  const std::vector<QMat<S>> pre = {QMat<S>::identity(2), m2<S>(zero, one, one, zero), m2<S>(one, zero, one, one),
                                    m2<S>(one, one, zero, one), m2<S>(one, zero, Q(S(2)), one),
                                    m2<S>(Q(S(2)), one, one, one)};
  Rng rng(seed);
  for (const auto& R : pre) {
    QMat<S> A1 = mat_inverse(R) * A * R;
    const Q y = A1(1, 0);
    if (qzero(qpure(y), sc)) continue;
    for (int attempt = 0; attempt < 12; ++attempt) {
      const Q m = rng.small_int_quat<S>(3);
      QMat<S> Um = m2<S>(one, m, zero, one);
      QMat<S> A2 = mat_inverse(Um) * A1 * Um;
      const Q a = A2(0, 0), x = A2(0, 1), e = A2(1, 1);
      const Q s = a + e;
      if (!szero(s.a, sc) || qzero(s, sc)) continue;
      // alpha y - y alpha = -s
      Mat<S> L(4, 4);
      for (int t = 0; t < 4; ++t) {
        Q b;
        b[t] = S(1);
        Q img = b * y - y * b;
        for (int r = 0; r < 4; ++r) L(r, t) = img[r];
      }
      auto ap0 = particular(L, coords(Q(-s)));
      if (!ap0) continue;
      const Q ap = perp(Q((*ap0)[0], (*ap0)[1], (*ap0)[2], (*ap0)[3]), y);
      const Q u = S(2) * perp(a, y) + S(2) * (ap * y), v = ap - perp(x, y), w = S(2) * ap;
      Mat<S> UV(4, 2);
      for (int r = 0; r < 4; ++r) {
        UV(r, 0) = u[r];
        UV(r, 1) = v[r];
      }
      auto sig = particular(UV, coords(w));
      if (!sig || szero((*sig)[0]) || szero((*sig)[1])) continue;
      const S t = S(1) / (*sig)[0], tau = S(1) / (*sig)[1];
      const Q num = S(2) * tau * a + Q(tau * tau - S(1) / S(4)) - t * x;
      const Q den = Q(S(2) * tau * t - t) - S(2) * tau * y;
      if (qzero(den)) continue;
      const Q al = num * qinv(den), be = Q(t) - y;
      QMat<S> X = m2<S>(al * be, al, -be, -(be * al));
      QMat<S> Y = A2 - X;
      QMat<S> Y2 = Y * Y;
      const Q kap = Y2(0, 0), r = Y(0, 0) + Q(tau);
      if (!qzero(Y2(1, 0), sc * sc) || !qzero(r * r - kap - Q(S(1) / S(4)), sc * sc) || qzero(Y(1, 0))) continue;
      const S half = S(1) / S(2);
      IdemPair<S> p1{m2<S>(one, al, zero, zero), m2<S>(zero, zero, be, one)};
      IdemPair<S> p2{m2<S>(one, zero, zero, zero), m2<S>(Q(half) + r, kap, -one, Q(half) - r)};
      QMat<S> Q1 = R * Um, Q2 = Q1 * m2<S>(one, Y(0, 0), zero, Y(1, 0));
      std::array<IdemPair<S>, 2> out{conj_pair(Q1, p1), conj_pair(Q2, p2)};
      if (close(QMat<S>(idem_commutator(out[0]) + idem_commutator(out[1])), A)) return out;
    }
  }
  return std::nullopt;
}

// ---- SL decomposer ----

template <class S>
bool non_conjugate(const Quat<S>& p, const Quat<S>& q) {
  return !(szero(S(p.a - q.a)) && szero(S(qnorm(qpure(p)) - qnorm(qpure(q)))));
}

// Real 4x4 matrix of q -> l q r1 - l2 q r2 style maps, built from a callable.
template <class S, class Fn>
std::optional<Quat<S>> solve_quat_linear(Fn f, const Quat<S>& rhs) {
  Mat<S> M(4, 4);
  for (int t = 0; t < 4; ++t) {
    Quat<S> b;
    b[t] = S(1);
    Quat<S> img = f(b);
    for (int r = 0; r < 4; ++r) M(r, t) = img[r];
  }
  if (!is_invertible(M)) return std::nullopt;
  Mat<S> rb(4, 1);
  for (int r = 0; r < 4; ++r) rb(r, 0) = rhs[r];
  Mat<S> x = mat_solve(M, rb);
  return Quat<S>(x(0, 0), x(1, 0), x(2, 0), x(3, 0));
}

// Unit lower L = D T D^-1 T^-1 with D = diag(1..n), T lower triangular with diagonal 1..n.
template <class S>
std::optional<CommPair<S>> lower_as_commutator(const QMat<S>& L) {
  const int n = L.rows();
  std::vector<Quat<S>> d(n);
  QMat<S> T(n, n);
  for (int i = 0; i < n; ++i) {
    d[i] = Quat<S>(S(i + 1));
    T(i, i) = Quat<S>(S(i + 1));
  }
  for (int j = 0; j < n; ++j)
    for (int i = j + 1; i < n; ++i) {
      Quat<S> s;
      for (int k = j; k < i; ++k) s += L(i, k) * T(k, j);
      T(i, j) = s / (S(i + 1) / S(j + 1) - S(1));
    }
  QMat<S> D = QMat<S>::diag(d);
  CommPair<S> c{D, T, {}, {}};
  if (!close(mult_commutator(c), L)) return std::nullopt;
  return c;
}

// Upper triangular M with diagonal entries of norm 1 as G T G^-1 T^-1, G diagonal, T upper triangular
// with pairwise non-conjugate diagonal.
template <class S>
std::optional<CommPair<S>> upper_as_commutator(const QMat<S>& M) {
  using Q = Quat<S>;
  const int n = M.rows();
  std::vector<Q> x(n), t(n);
  int next_real = 1;
  S bscale(1);
  for (int i = 0; i < n; ++i) {
    const Q di = M(i, i);
    if (!unit_norm(qnorm(di))) return std::nullopt;
    if (qzero(di - Q(S(1)))) {
      x[i] = t[i] = Q(S(next_real++));
      continue;
    }
    // b pure with Re(d b) = 0, then d b is conjugate to b: d = g b g^-1 b^-1.
    Q dv = qpure(di), b;
    for (const Q& cand : {Q::i(), Q::j(), Q::k()}) {
      b = qzero(dv) ? cand : cand - (qdot(cand, dv) / qdot(dv, dv)) * dv;
      if (!qzero(b)) break;
    }
    b = bscale * b;
    bscale += S(1);
    auto g = conjugate_in_H(Q(di * b), b, is_exact_v<S> ? 0 : 1e-9);
    if (!g) return std::nullopt;
    x[i] = *g;
    t[i] = b;
  }
  // Make the x_i pairwise non-conjugate by rescaling quaternionic ones.
  for (int i = 0; i < n; ++i)
    for (int guard = 0; guard < 64; ++guard) {
      bool clash = false;
      for (int j = 0; j < i; ++j)
        if (!non_conjugate(x[i], x[j])) clash = true;
      if (!clash) break;
      x[i] = S(n + 2) * x[i];
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (!non_conjugate(t[i], t[j])) return std::nullopt;
  QMat<S> T(n, n);
  for (int i = 0; i < n; ++i) T(i, i) = t[i];
  for (int j = 0; j < n; ++j)
    for (int i = j - 1; i >= 0; --i) {
      // sum_{i<=k<=j} M_ik T_kj = x_i T_ij x_j^-1
      Q rhs;
      for (int k = i + 1; k <= j; ++k) rhs -= M(i, k) * T(k, j);
      const Q mi = M(i, i), xi = x[i], xj_inv = qinv(x[j]);
      auto sol = solve_quat_linear<S>([&](const Q& q) { return mi * q - xi * q * xj_inv; }, rhs);
      if (!sol) return std::nullopt;
      T(i, j) = *sol;
    }
  CommPair<S> c{QMat<S>::diag(x), T, {}, {}};
  if (!close(mult_commutator(c), M)) return std::nullopt;
  return c;
}

template <class S>
bool attach_witness(CommPair<S>& c, const QMat<S>& W1, const QMat<S>& W2, const PolyArg<S>* p) {
  if (!p) return true;
  try {
    c.w1 = diag_preimage(c.G1, W1, *p);
    c.w2 = diag_preimage(c.G2, W2, *p);
    return true;
  } catch (const Error&) {
    return false;
  }
}

template <class S>
std::vector<CommPair<S>> identity_pairs(int n) {
  QMat<S> I = QMat<S>::identity(n);
  return {CommPair<S>{I, I, {}, {}}, CommPair<S>{I, I, {}, {}}};
}

template <class S>
bool verified_or_throw(const Certificate<S>& c, const PolyArg<S>* p, Errc code) {
  Verdict v = verify_certificate(c, p);
  if (!v.ok) throw Error(code, "constructed certificate failed verification: " + v.violation);
  return true;
}

}  // namespace

template <class S>
Verdict verify_certificate(const Certificate<S>& c, const PolyArg<S>* p) {
  check_shapes(c);
  Checker ck;
  const QMat<S>& A = c.target;
  switch (c.kind) {
    case CertKind::IDEM_COMM:
    case CertKind::SUM_TWO_IDEM_COMM:
    case CertKind::DIFF_TWO_IDEM_COMM:
    case CertKind::PROD_TWO_IDEM_COMM:
      if constexpr (is_exact_v<S>)
        check_idem_exact(ck, c);
      else
        check_idem_float(ck, c);
      break;
    case CertKind::MULT_COMM_PRODUCT: {
      auto a = check_comm(ck, c.comm[0], 0, p);
      auto b = check_comm(ck, c.comm[1], 1, p);
      if (ck.v.ok && !close(QMat<S>(*a * *b), A)) ck.fail("(G1,G2)(H1,H2) = target");
      break;
    }
    case CertKind::SL_DIFF_OF_COMM_PRODUCTS: {
      std::vector<QMat<S>> g;
      for (int t = 0; t < 4; ++t) {
        auto m = check_comm(ck, c.comm[t], t, p);
        if (m) g.push_back(*m);
      }
      if (!ck.v.ok) break;
      if (!close(QMat<S>(g[0] * g[1]), c.mats[0])) ck.fail("commutators 0,1 multiply to B");
      if (!close(QMat<S>(g[2] * g[3]), c.mats[1])) ck.fail("commutators 2,3 multiply to C");
      if (!close(QMat<S>(c.mats[0] - c.mats[1]), A)) ck.fail("B - C = target");
      break;
    }
    case CertKind::DIAG_PRODUCT: {
      DiagProductCert<S> d{c.mats[0], c.mats[1], c.mats[2], c.mats[3], A};
      if (!close(QMat<S>(d.D1 * d.D2), A)) ck.fail("D1 D2 = target");
      if (!verify_diag_product(d)) ck.fail("W_i^-1 D_i W_i diagonal");
      break;
    }
    case CertKind::SL_DIFF:
      if (!close(QMat<S>(c.mats[0] - c.mats[1]), A)) ck.fail("B - C = target");
      if (!unit_norm(dieudonne_det(c.mats[0]))) ck.fail("Dieudonne determinant of B is 1");
      if (!unit_norm(dieudonne_det(c.mats[1]))) ck.fail("Dieudonne determinant of C is 1");
      break;
  }
  return ck.v;
}

template <class S>
IdemPair<S> nilpotent_idem_commutator(const QMat<S>& N) {
  if (!N.square()) throw Error(Errc::ShapeMismatch, "square matrix required");
  if (!is_nilpotent(N)) throw Error(Errc::NotNilpotent, "N^n != 0");
  const int n = N.rows();
  if (N.is_zero(mat_tol(N))) return {QMat<S>(n, n), QMat<S>(n, n)};
  auto jd = jordan_form(N);
  QMat<S> E, F;
  bool first = true;
  for (auto& b : jd.blocks) {
    auto blk = nilpotent_block<S>(b.size);
    E = first ? blk.E : direct_sum(E, blk.E);
    F = first ? blk.F : direct_sum(F, blk.F);
    first = false;
  }
  IdemPair<S> out = conj_pair(jd.P, IdemPair<S>{E, F});
  Certificate<S> c;
  c.kind = CertKind::IDEM_COMM;
  c.target = N;
  c.idem = {out};
  if (!verify_certificate(c).ok) throw Error(Errc::SolverExhausted, "idempotent pair failed to verify");
  return out;
}

template <class S>
Certificate<S> tracezero_two_idem_commutators(const QMat<S>& A, TwoMode mode, std::uint64_t seed) {
  if (!A.square()) throw Error(Errc::ShapeMismatch, "square matrix required");
  if (!qzero(diagonal_sum(A), A.max_abs())) throw Error(Errc::NonzeroTrace, "diagonal sum is nonzero");
  const int n = A.rows();
  Certificate<S> c;
  c.kind = mode == TwoMode::SUM ? CertKind::SUM_TWO_IDEM_COMM : CertKind::DIFF_TWO_IDEM_COMM;
  c.target = A;
  std::array<IdemPair<S>, 2> parts;
  if (A.is_zero(mat_tol(A))) {
    parts = {IdemPair<S>{QMat<S>(n, n), QMat<S>(n, n)}, IdemPair<S>{QMat<S>(n, n), QMat<S>(n, n)}};
  } else {
    std::optional<QMat<S>> P;
    try {
      P = zero_diagonal_similarity(A, seed);
    } catch (const Error& e) {
      if (n != 2 || e.code() != Errc::SearchExhausted) throw;
    }
    if (P) {
      QMat<S> B = mat_inverse(*P) * A * *P;
      parts = {conj_pair(*P, nilpotent_idem_commutator(strict(B, true))),
               conj_pair(*P, nilpotent_idem_commutator(strict(B, false)))};
    } else {
      auto fb = two_by_two_fallback(A, seed);
      if (!fb) throw Error(Errc::SolverExhausted, "no two-commutator decomposition found for this 2x2 matrix");
      parts = *fb;
    }
  }
  if (mode == TwoMode::DIFF) std::swap(parts[1].E, parts[1].F);
  c.idem = {parts[0], parts[1]};
  verified_or_throw<S>(c, nullptr, Errc::SolverExhausted);
  return c;
}

template <class S>
Certificate<S> central_scalar_mult_commutator(const Quat<S>& lambda, int n, const PolyArg<S>* p) {
  if (n < 1) throw Error(Errc::ShapeTooSmall, "n >= 1 required");
  const bool plus = qzero(lambda - Quat<S>(S(1))), minus = qzero(lambda + Quat<S>(S(1)));
  if (!plus && !minus) throw Error(Errc::NotUnitScalar, "central scalar with lambda^n = +-1 must be +-1");
  const QMat<S> I = QMat<S>::identity(n);
  Certificate<S> c;
  c.kind = CertKind::MULT_COMM_PRODUCT;
  c.target = lambda * I;
  c.comm = identity_pairs<S>(n);
  if (minus) {
    c.comm[0].G1 = Quat<S>::i() * I;
    c.comm[0].G2 = Quat<S>::j() * I;
  }
  if (p)
    for (auto& x : c.comm) {
      x.w1 = diag_preimage(x.G1, I, *p);
      x.w2 = diag_preimage(x.G2, I, *p);
    }
  verified_or_throw(c, p, Errc::SolverExhausted);
  return c;
}

template <class S>
std::optional<std::vector<CommPair<S>>> builtin_sl_decomposer(const QMat<S>& B, const PolyArg<S>* p) {
  const int n = B.rows();
  const QMat<S> I = QMat<S>::identity(n);
  if (auto l = central_scalar_value(B, mat_tol(B))) {
    if (!qzero(*l - Quat<S>(S(1))) && !qzero(*l + Quat<S>(S(1)))) return std::nullopt;
    try {
      return central_scalar_mult_commutator(*l, n, p).comm;
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  if (!unit_norm(dieudonne_det(B))) return std::nullopt;
  // Krylov basis of B - I: K^-1 B K = I + companion, whose LDU pivots are 1, ..., 1, delta.
  const QMat<S> C = B - I;
  Rng rng(0x5eed);
  for (int attempt = 0; attempt < 24; ++attempt) {
    QMat<S> v(n, 1);
    if (attempt < n)
      v(attempt, 0) = Quat<S>(S(1));
    else
      for (int i = 0; i < n; ++i) v(i, 0) = rng.small_int_quat<S>(3);
    QMat<S> K(n, n), cur = v;
    for (int j = 0; j < n; ++j) {
      K.set_col(j, cur.col(0));
      cur = C * cur;
    }
    if (!is_invertible(K)) continue;
    QMat<S> Ki = mat_inverse(K);
    QMat<S> Bp = Ki * B * K;
    auto f = ldu(Bp);
    if (!f) continue;
    auto lo = lower_as_commutator(f->L);
    auto up = upper_as_commutator(QMat<S>(QMat<S>::diag(f->d) * f->U));
    if (!lo || !up) continue;
    QMat<S> WL = triangular_eigenvectors(lo->G2, true), WU = triangular_eigenvectors(up->G2, false);
    CommPair<S> c1 = conj_comm(K, *lo), c2 = conj_comm(K, *up);
    if (!attach_witness(c1, K, QMat<S>(K * WL), p) || !attach_witness(c2, K, QMat<S>(K * WU), p)) return std::nullopt;
    if (!close(QMat<S>(mult_commutator(c1) * mult_commutator(c2)), B)) continue;
    return std::vector<CommPair<S>>{c1, c2};
  }
  return std::nullopt;
}

template <class S>
DecomposeResult<S> theoremThe_try(const QMat<S>& A, const PolyArg<S>* p, const SLDecomposer<S>& dec) {
  if (!A.square()) throw Error(Errc::ShapeMismatch, "square matrix required");
  const int n = A.rows();
  if (n < 2) throw Error(Errc::ShapeTooSmall, "n >= 2 required");
  auto sd = sl_difference(A);
  SLDecomposer<S> run = dec ? dec : SLDecomposer<S>(builtin_sl_decomposer<S>);
  DecomposeResult<S> out;
  out.cert.kind = CertKind::SL_DIFF_OF_COMM_PRODUCTS;
  out.cert.target = A;
  out.cert.mats = {sd.B, sd.C};
  auto rb = run(sd.B, p);
  auto rc = run(sd.C, p);
  if (rb) out.cert.comm.insert(out.cert.comm.end(), rb->begin(), rb->end());
  if (rc) out.cert.comm.insert(out.cert.comm.end(), rc->begin(), rc->end());
  if (!rb) out.missing = "B";
  if (!rc) out.missing += out.missing.empty() ? "C" : ", C";
  if (rb && rc) {
    Verdict v = verify_certificate(out.cert, p);
    out.complete = v.ok;
    if (!v.ok) out.missing = "verification: " + v.violation;
  }
  return out;
}

template <class S>
Certificate<S> theoremThe_decompose(const QMat<S>& A, const PolyArg<S>* p, const SLDecomposer<S>& dec) {
  auto r = theoremThe_try(A, p, dec);
  if (!r.complete) throw Error(Errc::DecomposerIncomplete, "SL decomposer could not handle " + r.missing);
  return r.cert;
}

namespace {

// [E1,F1][E2,F2] = J_2(0): X = (3/2) e12 = [e11, F1]; Y = diag(-2/3, 2/3) = V^-1 M V with
// M = [[4/3, 1], [-4/3, -4/3]] = [[1,1],[0,0]] [[0,0],[4/3,1]] - [[0,0],[4/3,1]] [[1,1],[0,0]].
template <class S>
std::array<IdemPair<S>, 2> j2_zero_product() {
  using Q = Quat<S>;
  const Q one(S(1)), zero;
  IdemPair<S> p1{m2<S>(one, zero, zero, zero), m2<S>(one, Q(S(3) / S(2)), zero, zero)};
  QMat<S> V = m2<S>(one, Q(S(3)), Q(S(-2)), Q(S(-2)));
  QMat<S> Vi = mat_inverse(V);
  IdemPair<S> p2{Vi * m2<S>(one, one, zero, zero) * V, Vi * m2<S>(zero, zero, Q(S(4) / S(3)), one) * V};
  return {p1, p2};
}

}  // namespace

template <class S>
Certificate<S> product_two_idem_commutators(const QMat<S>& A, std::uint64_t) {
  if (!A.square()) throw Error(Errc::ShapeMismatch, "square matrix required");
  const int n = A.rows();
  if (n % 2 == 1 && is_invertible(A))
    throw Error(Errc::ExcludedCase, "invertible matrix of odd size");
  Certificate<S> c;
  c.kind = CertKind::PROD_TWO_IDEM_COMM;
  c.target = A;
  const QMat<S> Z(n, n);
  if (A.is_zero(mat_tol(A))) {
    c.idem = {IdemPair<S>{Z, Z}, IdemPair<S>{Z, Z}};
    return c;
  }
  JordanData<S> jd;
  try {
    jd = jordan_form(A);
  } catch (const Error& e) {
    throw Error(Errc::DecomposerIncomplete, std::string("Jordan reduction unavailable: ") + e.what());
  }
  // Blockwise: zero 1x1 blocks and J_2(0) blocks are handled; anything else is outside the built-in search.
  QMat<S> E1, F1, E2, F2;
  bool first = true;
  for (auto& b : jd.blocks) {
    const bool zero_eig = szero(b.alpha.re) && szero(b.alpha.im);
    std::array<IdemPair<S>, 2> blk;
    if (zero_eig && b.size == 1) {
      QMat<S> z(1, 1);
      blk = {IdemPair<S>{z, z}, IdemPair<S>{z, z}};
    } else if (zero_eig && b.size == 2) {
      blk = j2_zero_product<S>();
    } else {
      throw Error(Errc::DecomposerIncomplete,
                  "no built-in construction for a Jordan block of size " + std::to_string(b.size) +
                      (zero_eig ? " at eigenvalue 0" : " at a nonzero eigenvalue"));
    }
    E1 = first ? blk[0].E : direct_sum(E1, blk[0].E);
    F1 = first ? blk[0].F : direct_sum(F1, blk[0].F);
    E2 = first ? blk[1].E : direct_sum(E2, blk[1].E);
    F2 = first ? blk[1].F : direct_sum(F2, blk[1].F);
    first = false;
  }
  c.idem = {conj_pair(jd.P, IdemPair<S>{E1, F1}), conj_pair(jd.P, IdemPair<S>{E2, F2})};
  verified_or_throw<S>(c, nullptr, Errc::DecomposerIncomplete);
  return c;
}

#define SKEW_INSTANTIATE(S)                                                                                         \
  template Verdict verify_certificate(const Certificate<S>&, const PolyArg<S>*);                                    \
  template IdemPair<S> nilpotent_idem_commutator(const QMat<S>&);                                                   \
  template Certificate<S> tracezero_two_idem_commutators(const QMat<S>&, TwoMode, std::uint64_t);                   \
  template Certificate<S> central_scalar_mult_commutator(const Quat<S>&, int, const PolyArg<S>*);                   \
  template std::optional<std::vector<CommPair<S>>> builtin_sl_decomposer(const QMat<S>&, const PolyArg<S>*);        \
  template DecomposeResult<S> theoremThe_try(const QMat<S>&, const PolyArg<S>*, const SLDecomposer<S>&);            \
  template Certificate<S> theoremThe_decompose(const QMat<S>&, const PolyArg<S>*, const SLDecomposer<S>&);          \
  template Certificate<S> product_two_idem_commutators(const QMat<S>&, std::uint64_t);

SKEW_INSTANTIATE(Rational)
SKEW_INSTANTIATE(double)

}  // namespace skew
