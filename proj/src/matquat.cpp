#include "skew/matquat.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>

#include "skew/rng.hpp"

namespace skew {

namespace {

template <class S>
using Cx = Cplx<S>;

template <class S>
using QVec = std::vector<Quat<S>>;

template <class S>
using CVec = std::vector<Cx<S>>;

template <class S>
bool cis_zero(const Cx<S>& z, double tol) {
  return Field<Cx<S>>::is_zero(z, tol);
}

template <class S>
Cx<S> cplx_from(double re, double im) {
  if constexpr (is_exact_v<S>)
    return Cx<S>(rationalize(re, 1e-7 * (1 + std::abs(re))), rationalize(im, 1e-7 * (1 + std::abs(im))));
  else
    return Cx<S>(re, im);
}

template <class S>
std::complex<double> to_std(const Cx<S>& z) {
  return {Scalar<S>::to_double(z.re), Scalar<S>::to_double(z.im)};
}

template <class S>
Eigen::MatrixXcd to_eigen(const CMat<S>& M) {
  Eigen::MatrixXcd E(M.rows(), M.cols());
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) E(i, j) = to_std(M(i, j));
  return E;
}

// Linear algebra over C(S): exact elimination for rationals, SVD for doubles.
template <class S>
struct CLin;

template <>
struct CLin<Rational> {
  static std::vector<CVec<Rational>> kernel(const CMat<Rational>& M) { return right_kernel(M); }
  static int rank(const CMat<Rational>& M) { return mat_rank(M); }
};

template <>
struct CLin<double> {
  static double threshold(const Eigen::JacobiSVD<Eigen::MatrixXcd>& svd) {
    double top = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    return 1e-8 * std::max(1.0, top);
  }
  static std::vector<CVec<double>> kernel(const CMat<double>& M) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(M), Eigen::ComputeFullV);
    double thr = threshold(svd);
    const auto& sv = svd.singularValues();
    std::vector<CVec<double>> out;
    for (int c = 0; c < M.cols(); ++c) {
      if (c < sv.size() && sv(c) > thr) continue;
      CVec<double> v(M.cols());
      for (int r = 0; r < M.cols(); ++r) v[r] = Cx<double>(svd.matrixV()(r, c).real(), svd.matrixV()(r, c).imag());
      out.push_back(v);
    }
    return out;
  }
  static int rank(const CMat<double>& M) {
    if (M.rows() == 0 || M.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(M));
    double thr = threshold(svd);
    int r = 0;
    for (int t = 0; t < svd.singularValues().size(); ++t)
      if (svd.singularValues()(t) > thr) ++r;
    return r;
  }
};

template <class S>
int cols_rank(const std::vector<CVec<S>>& cols, int dim) {
  if (cols.empty()) return 0;
  CMat<S> M(dim, static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) M.set_col(static_cast<int>(j), cols[j]);
  return CLin<S>::rank(M);
}

// Right multiplication by j in complex coordinates: (z, w) -> (-conj w, conj z).
template <class S>
CVec<S> jmap(const CVec<S>& x) {
  CVec<S> y(x.size());
  for (std::size_t r = 0; r + 1 < x.size(); r += 2) {
    y[r] = -cconj(x[r + 1]);
    y[r + 1] = cconj(x[r]);
  }
  return y;
}

template <class S>
CVec<S> capply(const CMat<S>& M, const CVec<S>& v) {
  return M.apply(v);
}

template <class S>
QMat<S> qmat_from_double(const QMat<double>& A) {
  if constexpr (is_exact_v<S>)
    return A.map([](const Quat<double>& q) {
      return Quat<S>(Scalar<S>::from_double(q.a), Scalar<S>::from_double(q.b), Scalar<S>::from_double(q.c),
                     Scalar<S>::from_double(q.d));
    });
  else
    return A;
}

struct Cluster {
  std::complex<double> mean;
  int size = 0;
};

std::vector<Cluster> cluster_eigenvalues(const Eigen::VectorXcd& ev, double radius) {
  const int n = static_cast<int>(ev.size());
  std::vector<int> comp(n);
  for (int t = 0; t < n; ++t) comp[t] = t;
  std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t)
      if (std::abs(ev(s) - ev(t)) <= radius) comp[find(s)] = find(t);
  std::vector<Cluster> out;
  std::vector<int> idx(n, -1);
  for (int t = 0; t < n; ++t) {
    int r = find(t);
    if (idx[r] < 0) {
      idx[r] = static_cast<int>(out.size());
      out.push_back({});
    }
    auto& c = out[idx[r]];
    c.mean += ev(t);
    ++c.size;
  }
  for (auto& c : out) c.mean /= static_cast<double>(c.size);
  return out;
}

template <class S>
struct EigenClass {
  Cx<S> lambda;
  bool real = false;
  int cluster_size = 0;  // algebraic multiplicity in the complex matrix
};

template <class S>
CMat<S> shifted(const CMat<S>& M, const Cx<S>& l) {
  CMat<S> N = M;
  for (int t = 0; t < M.rows(); ++t) N(t, t) -= l;
  return N;
}

// H-block sizes (descending) for the class lambda, from nullities of powers.
template <class S>
std::vector<int> block_sizes(const CMat<S>& N, bool real, int& gen_nullity) {
  const int dim = N.rows();
  std::vector<int> nu{0};
  CMat<S> pw = CMat<S>::identity(dim);
  for (int k = 1; k <= dim; ++k) {
    pw = pw * N;
    int nk = dim - CLin<S>::rank(pw);
    if (nk == nu.back()) break;
    nu.push_back(nk);
  }
  gen_nullity = nu.back();
  const int K = static_cast<int>(nu.size()) - 1;
  std::vector<int> sizes;
  for (int k = K; k >= 1; --k) {
    int ge_k = nu[k] - nu[k - 1];
    int ge_k1 = k + 1 <= K ? nu[k + 1] - nu[k] : 0;
    int exact = ge_k - ge_k1;
    if (real) {
      if (exact % 2) throw Error(Errc::ClusterAmbiguous, "odd multiplicity for a real eigenvalue");
      exact /= 2;
    }
    for (int t = 0; t < exact; ++t) sizes.push_back(k);
  }
  return sizes;
}

template <class S>
std::vector<EigenClass<S>> eigen_classes(const QMat<S>& A, const CMat<S>& M, double radius_scale) {
  const int dim = M.rows();
  std::vector<EigenClass<S>> out;
  if (is_nilpotent(A)) {
    out.push_back({Cx<S>(), true, dim});
    return out;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(M), false);
  if (es.info() != Eigen::Success) throw Error(Errc::ClusterAmbiguous, "eigenvalue solver failed");
  double scale = std::max(1.0, M.max_abs());
  double radius = radius_scale * scale;
  for (auto& c : cluster_eigenvalues(es.eigenvalues(), radius)) {
    double re = c.mean.real(), im = c.mean.imag();
    bool real = std::abs(im) <= radius;
    if (!real && im < 0) continue;
    if (real) im = 0;
    EigenClass<S> e;
    e.lambda = cplx_from<S>(re, im);
    e.real = real;
    e.cluster_size = c.size;
    out.push_back(e);
  }
  std::sort(out.begin(), out.end(), [](const EigenClass<S>& x, const EigenClass<S>& y) {
    auto a = to_std(x.lambda), b = to_std(y.lambda);
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return out;
}

template <class S>
JordanData<S> jordan_attempt(const QMat<S>& A, double radius_scale) {
  const int n = A.rows();
  const int dim = 2 * n;
  CMat<S> M = right_complex_matrix(A);
  auto classes = eigen_classes(A, M, radius_scale);
  Rng rng(0x6a6f7264616eULL);
  JordanData<S> out;
  std::vector<std::vector<Cx<S>>> pcols;
  int total = 0;
  for (auto& ec : classes) {
    CMat<S> N = shifted(M, ec.lambda);
    int gen = 0;
    auto sizes = block_sizes(N, ec.real, gen);
    if (gen == 0) throw Error(Errc::ClusterAmbiguous, "candidate eigenvalue is not an eigenvalue");
    if (gen != ec.cluster_size) {
      if constexpr (is_exact_v<S>)
        throw Error(Errc::ExactnessUnavailable, "spectrum is not rational-complex");
      else
        throw Error(Errc::ClusterAmbiguous, "eigenvalue cluster does not match the Jordan structure");
    }
    total += ec.real ? gen : 2 * gen;
    std::vector<CMat<S>> pw{CMat<S>::identity(dim)};
    int maxsize = sizes.empty() ? 0 : sizes.front();
    for (int k = 1; k <= maxsize; ++k) pw.push_back(pw.back() * N);
    std::vector<CVec<S>> W;
    std::size_t next = 0;
    while (next < sizes.size()) {
      int m = sizes[next];
      int need = 0;
      while (next + need < sizes.size() && sizes[next + need] == m) ++need;
      auto Km = CLin<S>::kernel(pw[m]);
      auto Km1 = CLin<S>::kernel(pw[m - 1]);
      std::vector<CVec<S>> cands = Km;
      for (std::size_t s = 0; s < Km.size(); ++s)
        for (std::size_t t = s + 1; t < Km.size(); ++t) {
          CVec<S> v = Km[s];
          for (int r = 0; r < dim; ++r) v[r] += Km[t][r];
          cands.push_back(v);
        }
      for (int extra = 0; extra < 64; ++extra) {
        CVec<S> v(dim);
        for (auto& b : Km) {
          Cx<S> c(Scalar<S>::from_int(rng.integer(-3, 3)), Scalar<S>::from_int(rng.integer(-3, 3)));
          for (int r = 0; r < dim; ++r) v[r] += b[r] * c;
        }
        cands.push_back(v);
      }
      int got = 0;
      for (auto& x : cands) {
        if (got == need) break;
        std::vector<CVec<S>> base = Km1;
        base.insert(base.end(), W.begin(), W.end());
        int r0 = cols_rank(base, dim);
        base.push_back(x);
        if (ec.real) base.push_back(jmap(x));
        int r1 = cols_rank(base, dim);
        if (r1 != r0 + (ec.real ? 2 : 1)) continue;
        // chain x_1 = N^{m-1} x, ..., x_m = x
        std::vector<CVec<S>> chain;
        for (int t = m - 1; t >= 0; --t) chain.push_back(capply(pw[t], x));
        for (auto& v : chain) {
          W.push_back(v);
          W.push_back(jmap(v));
          pcols.push_back(v);
        }
        out.blocks.push_back({m, ec.lambda});
        ++got;
      }
      if (got < need) throw Error(Errc::ClusterAmbiguous, "could not build independent Jordan chains");
      next += need;
    }
  }
  if (total != dim) {
    if constexpr (is_exact_v<S>)
      throw Error(Errc::ExactnessUnavailable, "spectrum is not rational-complex");
    else
      throw Error(Errc::ClusterAmbiguous, "eigenvalue clusters do not cover the spectrum");
  }
  out.P = QMat<S>(n, n);
  for (int j = 0; j < n; ++j) out.P.set_col(j, from_complex_coords(pcols.at(j)));
  QMat<S> J = jordan_matrix(out.blocks);
  if (!is_invertible(out.P)) throw Error(Errc::ClusterAmbiguous, "Jordan basis is singular");
  if constexpr (is_exact_v<S>) {
    if (A * out.P != out.P * J) throw Error(Errc::ExactnessUnavailable, "Jordan identity failed");
  } else {
    double scale = std::max(1.0, A.max_abs()) * std::max(1.0, out.P.max_abs());
    if ((A * out.P - out.P * J).max_abs() > 1e-6 * scale)
      throw Error(Errc::ClusterAmbiguous, "Jordan identity failed");
  }
  return out;
}

template <class S>
QVec<S> qcol_apply(const QMat<S>& A, const QVec<S>& v) {
  return A.apply(v);
}

template <class S>
QVec<S> vmul_right(QVec<S> v, const Quat<S>& q) {
  for (auto& x : v) x = x * q;
  return v;
}

template <class S>
QVec<S> vsub(QVec<S> u, const QVec<S>& v) {
  for (std::size_t t = 0; t < u.size(); ++t) u[t] -= v[t];
  return u;
}

template <class S>
QVec<S> unit_vec(int n, int t) {
  QVec<S> v(n);
  v[t] = Quat<S>(S(1));
  return v;
}

template <class S>
Mat<S> sylvester_operator(const Quat<S>& a, const Quat<S>& b) {
  const Quat<S> basis[4] = {Quat<S>(S(1)), Quat<S>::i(), Quat<S>::j(), Quat<S>::k()};
  Mat<S> L(4, 4);
  for (int t = 0; t < 4; ++t) {
    Quat<S> v = a * basis[t] - basis[t] * b;
    for (int r = 0; r < 4; ++r) L(r, t) = v[r];
  }
  return L;
}

// y with a y = y b.
template <class S>
std::vector<Quat<S>> sylvester_kernel(const Quat<S>& a, const Quat<S>& b, double tol) {
  std::vector<Quat<S>> out;
  for (auto& v : right_kernel(sylvester_operator(a, b), tol)) out.emplace_back(v[0], v[1], v[2], v[3]);
  return out;
}

template <class S>
double qnorm_d(const Quat<S>& q) {
  return Scalar<S>::to_double(qnorm(q));
}

template <class S>
class ZeroDiagSearch {
 public:
  explicit ZeroDiagSearch(std::uint64_t seed, double tol) : rng_(seed), tol_(tol) {}

  std::optional<QMat<S>> solve(const QMat<S>& B) {
    const int n = B.rows();
    if (has_zero_diagonal(B, tol_)) return QMat<S>::identity(n);
    if (n == 1 || central_scalar_value(B, tol_)) return std::nullopt;
    if (n == 2) return two_by_two(B);
    if (n == 3)
      if (auto P = cyclic_three(B)) return P;
    return greedy(B);
  }

 private:
  std::vector<QVec<S>> candidates(int n) {
    std::vector<QVec<S>> out;
    out.push_back(QVec<S>(n, Quat<S>(S(1))));
    for (int t = 0; t < n; ++t) out.push_back(unit_vec<S>(n, t));
    for (int r = 0; r < 12; ++r) {
      QVec<S> v(n);
      for (auto& q : v) q = rng_.small_int_quat<S>(2);
      out.push_back(v);
    }
    return out;
  }

  bool independent(const std::vector<QVec<S>>& cols) const {
    return mat_rank(QMat<S>::from_cols(cols), tol_ > 0 ? 1e-9 : -1) == static_cast<int>(cols.size());
  }

  std::optional<QMat<S>> complete_basis(std::vector<QVec<S>> cols) const {
    const int n = static_cast<int>(cols[0].size());
    if (!independent(cols)) return std::nullopt;
    for (int t = 0; t < n && static_cast<int>(cols.size()) < n; ++t) {
      cols.push_back(unit_vec<S>(n, t));
      if (!independent(cols)) cols.pop_back();
    }
    return QMat<S>::from_cols(cols);
  }

  bool check(const QMat<S>& B, const QMat<S>& P) const {
    if (!is_invertible(P)) return false;
    QMat<S> Z = mat_inverse(P) * B * P;
    double t = tol_ > 0 ? 1e-8 * std::max(1.0, B.max_abs()) * std::max(1.0, P.max_abs()) : 0;
    return has_zero_diagonal(Z, t);
  }

  std::optional<QMat<S>> two_by_two(const QMat<S>& B) {
    QMat<S> C = B * B;
    std::vector<QVec<S>> vs;
    if (central_scalar_value(C, tol_)) {
      vs = candidates(2);
    } else {
      try {
        auto jd = jordan_form(C);
        std::vector<QVec<S>> eig;
        for (std::size_t b = 0, col = 0; b < jd.blocks.size(); col += jd.blocks[b].size, ++b)
          if (jd.blocks[b].size == 1) eig.push_back(jd.P.col(static_cast<int>(col)));
        vs = eig;
        for (std::size_t s = 0; s < eig.size(); ++s)
          for (std::size_t t = s + 1; t < eig.size(); ++t) {
            QVec<S> v = eig[s];
            for (int r = 0; r < 2; ++r) v[r] += eig[t][r];
            vs.push_back(v);
          }
      } catch (const Error&) {
        return std::nullopt;
      }
    }
    for (auto& v : vs) {
      QVec<S> Bv = qcol_apply(B, v);
      if (!independent({v, Bv})) continue;
      QMat<S> P = primitive_columns(QMat<S>::from_cols({v, Bv}));
      if (check(B, P)) return P;
    }
    return std::nullopt;
  }

  // Krylov basis (p, Bp, u) with u = B^2 p - p sigma puts the trailing block in the form
  // C = [[0, x], [1, k]] with x free. With v = (a, 1), Cv and v are a zero-diagonal basis when
  // C^2 v = v lambda, i.e. a x - x (a + k) = -a k (a + k). The particular solution a (a + k) makes
  // Cv parallel to v, so a is chosen conjugate to a + k (Re k = 0 here) and a kernel element added.
  std::optional<QMat<S>> cyclic_three(const QMat<S>& B) {
    for (auto& p : candidates(3)) {
      QVec<S> p2 = qcol_apply(B, p), p3 = qcol_apply(B, p2), p4 = qcol_apply(B, p3);
      if (!independent({p, p2, p3})) continue;
      QMat<S> K = QMat<S>::from_cols({p, p2, p3});
      QVec<S> kv = mat_inverse(K).apply(p4);
      Quat<S> k = kv[2];
      if (qis_zero(k, tol_)) {
        K = primitive_columns(K);
        if (check(B, K)) return K;
        continue;
      }
      if constexpr (!is_exact_v<S>) k.a = 0;
      for (const Quat<S>& e : {Quat<S>::i(), Quat<S>::j(), Quat<S>::k()}) {
        Quat<S> u = (k * e - e * k) * Quat<S>(S(1) / S(2));
        if (qis_zero(u, tol_)) continue;
        Quat<S> a = u - k * Quat<S>(S(1) / S(2)), b = a + k;
        auto ker = sylvester_kernel(a, b, tol_ > 0 ? 1e-10 * std::max(1.0, qnorm_d(a)) : -1);
        if (ker.empty()) continue;
        Quat<S> x = a * b + ker[0];
        Quat<S> sigma = kv[1] - x;
        QVec<S> w = vsub(p3, vmul_right(p, sigma));
        QMat<S> P1 = QMat<S>::from_cols({p, p2, w});
        QMat<S> P2 = {{a, x}, {Quat<S>(S(1)), b}};
        if (!is_invertible(P1) || !is_invertible(P2)) continue;
        QMat<S> P = primitive_columns(QMat<S>(P1 * direct_sum(QMat<S>::identity(1), P2)));
        if (check(B, P)) return P;
      }
    }
    return std::nullopt;
  }

  std::optional<QMat<S>> greedy(const QMat<S>& B) {
    const int n = B.rows();
    for (auto& v : candidates(n)) {
      auto P = complete_basis({v, qcol_apply(B, v)});
      if (!P) continue;
      QMat<S> M = mat_inverse(*P) * B * *P;
      if constexpr (!is_exact_v<S>) M(0, 0) = Quat<S>();
      auto Q = solve(M.block(1, 1, n - 1, n - 1));
      if (!Q) continue;
      QMat<S> R = primitive_columns(QMat<S>(*P * direct_sum(QMat<S>::identity(1), *Q)));
      if (check(B, R)) return R;
    }
    return std::nullopt;
  }

  Rng rng_;
  double tol_;
};

}  // namespace

template <class S>
CMat<S> complex_adjoint(const QMat<S>& A) {
  CMat<S> C(2 * A.rows(), 2 * A.cols());
  for (int r = 0; r < A.rows(); ++r)
    for (int s = 0; s < A.cols(); ++s) {
      const Quat<S>& q = A(r, s);
      Cx<S> z(q.a, q.b), w(q.c, q.d);
      C(2 * r, 2 * s) = z;
      C(2 * r, 2 * s + 1) = w;
      C(2 * r + 1, 2 * s) = -cconj(w);
      C(2 * r + 1, 2 * s + 1) = cconj(z);
    }
  return C;
}

template <class S>
S dieudonne_det(const QMat<S>& A) {
  if (!A.square()) throw Error(Errc::ShapeMismatch, "determinant of non-square matrix");
  auto E = echelon(A);
  if (E.rank() < A.rows()) return S(0);
  S d(1);
  for (auto& p : E.pivots) d *= qnorm(p);
  return d;
}

template <class S>
bool is_in_SL(const QMat<S>& A) {
  if (!is_invertible(A)) return false;
  S d = dieudonne_det(A);
  if constexpr (is_exact_v<S>)
    return d == 1;
  else
    return std::abs(d - 1) <= 1e-9 * std::max(1.0, std::pow(A.max_abs(), 2 * A.rows()));
}

template <class S>
QMat<S> jordan_matrix(const std::vector<JordanBlock<S>>& blocks) {
  int n = 0;
  for (auto& b : blocks) n += b.size;
  QMat<S> J(n, n);
  int off = 0;
  for (auto& b : blocks) {
    for (int t = 0; t < b.size; ++t) {
      J(off + t, off + t) = Quat<S>(b.alpha.re, b.alpha.im, S(0), S(0));
      if (t + 1 < b.size) J(off + t, off + t + 1) = Quat<S>(S(1));
    }
    off += b.size;
  }
  return J;
}

template <class S>
std::vector<Cplx<S>> to_complex_coords(const std::vector<Quat<S>>& v) {
  std::vector<Cplx<S>> x(2 * v.size());
  for (std::size_t r = 0; r < v.size(); ++r) {
    x[2 * r] = Cplx<S>(v[r].a, v[r].b);
    x[2 * r + 1] = Cplx<S>(v[r].c, -v[r].d);
  }
  return x;
}

template <class S>
std::vector<Quat<S>> from_complex_coords(const std::vector<Cplx<S>>& x) {
  std::vector<Quat<S>> v(x.size() / 2);
  for (std::size_t r = 0; r < v.size(); ++r)
    v[r] = Quat<S>(x[2 * r].re, x[2 * r].im, x[2 * r + 1].re, -x[2 * r + 1].im);
  return v;
}

template <class S>
CMat<S> right_complex_matrix(const QMat<S>& A) {
  const int n = A.rows();
  CMat<S> M(2 * n, 2 * A.cols());
  for (int s = 0; s < A.cols(); ++s) {
    QVec<S> c = A.col(s), cj = c;
    for (auto& q : cj) q = q * Quat<S>::j();
    M.set_col(2 * s, to_complex_coords(c));
    M.set_col(2 * s + 1, to_complex_coords(cj));
  }
  return M;
}

template <class S>
bool is_nilpotent(const QMat<S>& A) {
  if (!A.square()) throw Error(Errc::ShapeMismatch, "nilpotency of non-square matrix");
  QMat<S> pw = mat_pow(A, A.rows());
  if constexpr (is_exact_v<S>)
    return pw.is_zero();
  else
    return pw.max_abs() <= 1e-9 * std::max(1.0, std::pow(A.max_abs(), A.rows()));
}

template <class S>
JordanData<S> jordan_form(const QMat<S>& A) {
  if (!A.square()) throw Error(Errc::ShapeMismatch, "Jordan form of non-square matrix");
  if (A.rows() == 0) return {};
  try {
    return jordan_attempt(A, 1e-6);
  } catch (const Error& e) {
    if (e.code() != Errc::ClusterAmbiguous) throw;
  }
  try {
    return jordan_attempt(A, 1e-3);
  } catch (const Error& e) {
    if (is_exact_v<S> && e.code() == Errc::ClusterAmbiguous)
      throw Error(Errc::ExactnessUnavailable, "no exact Jordan form over Q(i)");
    throw;
  }
}

template <class S>
DiagWitness<S> is_diagonalizable(const QMat<S>& A) {
  DiagWitness<S> w;
  auto jd = jordan_form(A);
  for (auto& b : jd.blocks)
    if (b.size != 1) return w;
  w.ok = true;
  w.W = jd.P;
  for (auto& b : jd.blocks) w.d.emplace_back(b.alpha.re, b.alpha.im, S(0), S(0));
  return w;
}

template <class S>
RankNormalForm<S> rank_normal_form(const QMat<S>& A) {
  auto E = echelon(A, true);
  const int m = A.cols(), r = E.rank();
  std::vector<int> order = E.pivcols;
  std::vector<bool> piv(m, false);
  for (int c : E.pivcols) piv[c] = true;
  for (int c = 0; c < m; ++c)
    if (!piv[c]) order.push_back(c);
  QMat<S> Q1(m, m);
  for (int t = 0; t < m; ++t) Q1(order[t], t) = Quat<S>(S(1));
  QMat<S> R = E.R * Q1;
  QMat<S> Q2 = QMat<S>::identity(m);
  for (int i = 0; i < r; ++i)
    for (int j = r; j < m; ++j) Q2(i, j) = -R(i, j);
  RankNormalForm<S> out;
  out.P = E.T;
  out.Q = Q1 * Q2;
  out.r = r;
  return out;
}

template <class S>
Equivalence<S> zero_diagonal_equivalence(const QMat<S>& A) {
  if (!A.square()) throw Error(Errc::ShapeMismatch, "zero-diagonal form of non-square matrix");
  const int n = A.rows();
  if (n < 2) {
    if (A.is_zero(mat_tol(A))) return {QMat<S>::identity(n), QMat<S>::identity(n)};
    throw Error(Errc::ShapeTooSmall, "a nonzero 1x1 matrix has no zero-diagonal equivalent");
  }
  auto rnf = rank_normal_form(A);
  QMat<S> C(n, n);
  for (int t = 0; t < n; ++t) C(t, (t + 1) % n) = Quat<S>(S(1));
  return {rnf.P, rnf.Q * C};
}

template <class S>
QMat<S> primitive_columns(const QMat<S>& P) {
  if constexpr (!is_exact_v<S>) {
    return P;
  } else {
    using Int = decltype(numerator(Rational()));
    QMat<S> out = P;
    for (int j = 0; j < P.cols(); ++j) {
      Int l(1), g(0);
      for (int i = 0; i < P.rows(); ++i)
        for (int t = 0; t < 4; ++t) l = lcm(l, Int(denominator(P(i, j)[t])));
      for (int i = 0; i < P.rows(); ++i)
        for (int t = 0; t < 4; ++t) g = gcd(g, Int(numerator(Rational(P(i, j)[t] * Rational(l)))));
      if (g == 0) continue;
      const Rational f = Rational(l) / Rational(g);
      for (int i = 0; i < P.rows(); ++i) out(i, j) = f * P(i, j);
    }
    return out;
  }
}

template <class S>
QMat<S> zero_diagonal_similarity(const QMat<S>& A, std::uint64_t seed) {
  if (!A.square()) throw Error(Errc::ShapeMismatch, "zero-diagonal similarity of non-square matrix");
  const double tol = mat_tol(A);
  const int n = A.rows();
  if (has_zero_diagonal(A, tol)) return QMat<S>::identity(n);
  if (central_scalar_value(A, tol)) throw Error(Errc::CentralScalar, "nonzero central scalar matrix");
  if (!Scalar<S>::is_zero(diagonal_sum(A).a, tol * n))
    throw Error(Errc::SearchExhausted, "real part of the diagonal sum is a similarity invariant and is nonzero");
  ZeroDiagSearch<S> search(seed, tol);
  auto P = search.solve(A);
  if (!P) throw Error(Errc::SearchExhausted, "no zero-diagonal conjugate found");
  return *P;
}

template <class S>
bool tri_level_membership(const QMat<S>& M, int t) {
  if (!M.square()) throw Error(Errc::ShapeMismatch, "level of non-square matrix");
  const int n = M.rows();
  if (t < 0 || t > std::max(0, n - 1)) throw Error(Errc::BadLevel, "level must lie in [0, n-1]");
  const int e = (n + t) / (t + 1);
  QMat<S> pw = mat_pow(M, e);
  if constexpr (is_exact_v<S>)
    return pw.is_zero();
  else
    return pw.max_abs() <= 1e-9 * std::max(1.0, std::pow(M.max_abs(), e));
}

template <class S>
SLFactor<S> sl_factor(const QMat<S>& M, bool right_handed) {
  if (!M.square()) throw Error(Errc::ShapeMismatch, "SL factor of non-square matrix");
  const int n = M.rows();
  auto E = echelon(M);
  if (E.rank() < n) throw Error(Errc::Singular, "matrix is singular");
  SLFactor<S> out;
  out.alpha = Quat<S>(S(1));
  for (auto& p : E.pivots) out.alpha = out.alpha * p;
  if (is_in_SL(M)) {
    out.alpha = Quat<S>(S(1));
    out.M1 = M;
    out.M2 = QMat<S>::identity(n);
    return out;
  }
  out.M2 = QMat<S>::identity(n);
  out.M2(n - 1, n - 1) = out.alpha;
  QMat<S> inv2 = QMat<S>::identity(n);
  inv2(n - 1, n - 1) = qinv(out.alpha);
  out.M1 = right_handed ? inv2 * M : M * inv2;
  return out;
}

template <class S>
Quat<S> solve_sylvester(const Quat<S>& a, const Quat<S>& b, const Quat<S>& c) {
  Mat<S> L = sylvester_operator(a, b);
  Mat<S> rhs(4, 1);
  for (int r = 0; r < 4; ++r) rhs(r, 0) = c[r];
  Mat<S> x = mat_solve(L, rhs, is_exact_v<S> ? -1.0 : 1e-12 * std::max(1.0, L.max_abs()));
  return Quat<S>(x(0, 0), x(1, 0), x(2, 0), x(3, 0));
}

#define SKEW_INSTANTIATE(S)                                                              \
  template CMat<S> complex_adjoint(const QMat<S>&);                                      \
  template S dieudonne_det(const QMat<S>&);                                              \
  template bool is_in_SL(const QMat<S>&);                                                \
  template QMat<S> jordan_matrix(const std::vector<JordanBlock<S>>&);                    \
  template JordanData<S> jordan_form(const QMat<S>&);                                    \
  template DiagWitness<S> is_diagonalizable(const QMat<S>&);                             \
  template bool is_nilpotent(const QMat<S>&);                                            \
  template RankNormalForm<S> rank_normal_form(const QMat<S>&);                           \
  template Equivalence<S> zero_diagonal_equivalence(const QMat<S>&);                     \
  template QMat<S> zero_diagonal_similarity(const QMat<S>&, std::uint64_t);              \
  template QMat<S> primitive_columns(const QMat<S>&);              \
  template bool tri_level_membership(const QMat<S>&, int);                               \
  template SLFactor<S> sl_factor(const QMat<S>&, bool);                                  \
  template Quat<S> solve_sylvester(const Quat<S>&, const Quat<S>&, const Quat<S>&);      \
  template std::vector<Cplx<S>> to_complex_coords(const std::vector<Quat<S>>&);          \
  template std::vector<Quat<S>> from_complex_coords(const std::vector<Cplx<S>>&);        \
  template CMat<S> right_complex_matrix(const QMat<S>&);

SKEW_INSTANTIATE(Rational)
SKEW_INSTANTIATE(double)

}  // namespace skew
