#pragma once

#include <algorithm>
#include <vector>

#include "skew/quat.hpp"

namespace skew {

// Per-entry-type operations needed by elimination.
template <class K>
struct Field;

template <>
struct Field<Rational> {
  using Real = Rational;
  static constexpr bool exact = true;
  static Rational inv(const Rational& x) {
    if (x == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
    return Rational(1) / x;
  }
  static double mag(const Rational& x) { return std::abs(x.convert_to<double>()); }
  static bool is_zero(const Rational& x, double) { return x == 0; }
};

template <>
struct Field<double> {
  using Real = double;
  static constexpr bool exact = false;
  static double inv(double x) {
    if (x == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
    return 1.0 / x;
  }
  static double mag(double x) { return std::abs(x); }
  static bool is_zero(double x, double tol) { return std::abs(x) <= tol; }
};

template <class S>
struct Field<Quat<S>> {
  using Real = S;
  static constexpr bool exact = is_exact_v<S>;
  static Quat<S> inv(const Quat<S>& x) { return qinv(x); }
  static double mag(const Quat<S>& x) { return qabs(x); }
  static bool is_zero(const Quat<S>& x, double tol) { return qis_zero(x, tol); }
};

template <class S>
struct Field<Cplx<S>> {
  using Real = S;
  static constexpr bool exact = is_exact_v<S>;
  static Cplx<S> inv(const Cplx<S>& x) { return cinv(x); }
  static double mag(const Cplx<S>& x) { return std::sqrt(Scalar<S>::to_double(cnorm(x))); }
  static bool is_zero(const Cplx<S>& x, double tol) {
    if constexpr (is_exact_v<S>)
      return x.re == 0 && x.im == 0;
    else
      return mag(x) <= tol;
  }
};

// Dense row-major matrix over a (possibly noncommutative) ring K.
template <class K>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : r_(rows), c_(cols), e_(static_cast<std::size_t>(rows) * cols, K(0)) {}
  Mat(std::initializer_list<std::initializer_list<K>> rows) {
    r_ = static_cast<int>(rows.size());
    c_ = r_ ? static_cast<int>(rows.begin()->size()) : 0;
    for (auto& row : rows) {
      if (static_cast<int>(row.size()) != c_) throw Error(Errc::ShapeMismatch, "ragged initializer");
      for (auto& x : row) e_.push_back(x);
    }
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = K(1);
    return m;
  }
  static Mat diag(const std::vector<K>& d) {
    Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  // e_{ij} with 0-based indices.
  static Mat unit(int n, int i, int j, const K& v = K(1)) {
    Mat m(n, n);
    m(i, j) = v;
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  bool square() const { return r_ == c_; }

  K& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * c_ + j]; }
  const K& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * c_ + j]; }

  std::vector<K> col(int j) const {
    std::vector<K> v(r_);
    for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_col(int j, const std::vector<K>& v) {
    for (int i = 0; i < r_; ++i) (*this)(i, j) = v.at(i);
  }
  Mat block(int i0, int j0, int nr, int nc) const {
    Mat m(nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
    return m;
  }
  void set_block(int i0, int j0, const Mat& b) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }
  static Mat from_cols(const std::vector<std::vector<K>>& cols) {
    int n = cols.empty() ? 0 : static_cast<int>(cols[0].size());
    Mat m(n, static_cast<int>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(static_cast<int>(j), cols[j]);
    return m;
  }

  Mat operator-() const {
    Mat m = *this;
    for (auto& x : m.e_) x = -x;
    return m;
  }
  Mat& operator+=(const Mat& b) {
    same_shape(b);
    for (std::size_t t = 0; t < e_.size(); ++t) e_[t] += b.e_[t];
    return *this;
  }
  Mat& operator-=(const Mat& b) {
    same_shape(b);
    for (std::size_t t = 0; t < e_.size(); ++t) e_[t] -= b.e_[t];
    return *this;
  }
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.c_ != b.r_) throw Error(Errc::ShapeMismatch, "product of incompatible shapes");
    Mat m(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
      for (int k = 0; k < a.c_; ++k) {
        const K& x = a(i, k);
        if (x == K(0)) continue;
        for (int j = 0; j < b.c_; ++j) m(i, j) += x * b(k, j);
      }
    return m;
  }
  // Left and right scalar multiplication differ over H.
  friend Mat operator*(const K& s, const Mat& a) {
    Mat m = a;
    for (auto& x : m.e_) x = s * x;
    return m;
  }
  friend Mat operator*(const Mat& a, const K& s) {
    Mat m = a;
    for (auto& x : m.e_) x = x * s;
    return m;
  }
  std::vector<K> apply(const std::vector<K>& v) const {
    if (static_cast<int>(v.size()) != c_) throw Error(Errc::ShapeMismatch, "vector length");
    std::vector<K> out(r_, K(0));
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  bool operator==(const Mat& b) const { return r_ == b.r_ && c_ == b.c_ && e_ == b.e_; }
  bool operator!=(const Mat& b) const { return !(*this == b); }

  bool is_zero(double tol = 0) const {
    for (auto& x : e_)
      if (!Field<K>::is_zero(x, tol)) return false;
    return true;
  }
  double max_abs() const {
    double m = 0;
    for (auto& x : e_) m = std::max(m, Field<K>::mag(x));
    return m;
  }
  const std::vector<K>& data() const { return e_; }

  template <class F>
  auto map(F f) const {
    using R = decltype(f(std::declval<K>()));
    Mat<R> m(r_, c_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) m(i, j) = f((*this)(i, j));
    return m;
  }

 private:
  void same_shape(const Mat& b) const {
    if (r_ != b.r_ || c_ != b.c_) throw Error(Errc::ShapeMismatch, "shapes differ");
  }
  int r_ = 0, c_ = 0;
  std::vector<K> e_;
};

template <class K>
Mat<K> mat_pow(const Mat<K>& a, int e) {
  Mat<K> r = Mat<K>::identity(a.rows());
  for (int t = 0; t < e; ++t) r = r * a;
  return r;
}

template <class K>
Mat<K> hstack(const Mat<K>& a, const Mat<K>& b) {
  if (a.rows() != b.rows()) throw Error(Errc::ShapeMismatch, "hstack");
  Mat<K> m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

template <class K>
Mat<K> direct_sum(const Mat<K>& a, const Mat<K>& b) {
  Mat<K> m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

template <class K>
bool mat_close(const Mat<K>& a, const Mat<K>& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if constexpr (Field<K>::exact) return a == b;
  return (a - b).max_abs() <= tol;
}

// Reduced row echelon form by left row operations. T*A = R when tracked.
template <class K>
struct Echelon {
  Mat<K> R;
  Mat<K> T;
  std::vector<int> pivcols;
  std::vector<K> pivots;  // pivot values before normalisation, in elimination order
  int swaps = 0;
  int rank() const { return static_cast<int>(pivcols.size()); }
};

// Relative zero threshold for FLOAT elimination.
template <class K>
double elim_tol(const Mat<K>& a, double rel = 1e-10) {
  if constexpr (Field<K>::exact) return 0;
  return rel * std::max(1.0, a.max_abs());
}

template <class K>
Echelon<K> echelon(const Mat<K>& A, bool track = false, double tol = -1) {
  using F = Field<K>;
  if (tol < 0) tol = elim_tol(A);
  Echelon<K> E;
  E.R = A;
  if (track) E.T = Mat<K>::identity(A.rows());
  Mat<K>& R = E.R;
  const int n = A.rows(), m = A.cols();
  int row = 0;
  auto swap_rows = [&](Mat<K>& M, int r1, int r2) {
    for (int j = 0; j < M.cols(); ++j) std::swap(M(r1, j), M(r2, j));
  };
  for (int c = 0; c < m && row < n; ++c) {
    int piv = -1;
    if constexpr (F::exact) {
      for (int r = row; r < n; ++r)
        if (!(R(r, c) == K(0))) {
          piv = r;
          break;
        }
    } else {
      double best = tol;
      for (int r = row; r < n; ++r) {
        double v = F::mag(R(r, c));
        if (v > best) {
          best = v;
          piv = r;
        }
      }
    }
    if (piv < 0) {
      if constexpr (!F::exact)
        for (int r = row; r < n; ++r) R(r, c) = K(0);
      continue;
    }
    if (piv != row) {
      swap_rows(R, piv, row);
      if (track) swap_rows(E.T, piv, row);
      ++E.swaps;
    }
    K p = R(row, c);
    K pinv = F::inv(p);
    for (int j = 0; j < m; ++j) R(row, j) = pinv * R(row, j);
    R(row, c) = K(1);
    if (track)
      for (int j = 0; j < n; ++j) E.T(row, j) = pinv * E.T(row, j);
    for (int r = 0; r < n; ++r) {
      if (r == row) continue;
      K f = R(r, c);
      if (f == K(0)) continue;
      for (int j = 0; j < m; ++j) R(r, j) -= f * R(row, j);
      R(r, c) = K(0);
      if (track)
        for (int j = 0; j < n; ++j) E.T(r, j) -= f * E.T(row, j);
    }
    E.pivcols.push_back(c);
    E.pivots.push_back(p);
    ++row;
  }
  return E;
}

template <class K>
int mat_rank(const Mat<K>& A, double tol = -1) {
  return echelon(A, false, tol).rank();
}

// Right kernel basis {v : A v = 0}; over H the kernel is a right module.
template <class K>
std::vector<std::vector<K>> right_kernel(const Mat<K>& A, double tol = -1) {
  auto E = echelon(A, false, tol);
  std::vector<bool> is_piv(A.cols(), false);
  for (int c : E.pivcols) is_piv[c] = true;
  std::vector<std::vector<K>> basis;
  for (int f = 0; f < A.cols(); ++f) {
    if (is_piv[f]) continue;
    std::vector<K> v(A.cols(), K(0));
    v[f] = K(1);
    for (int i = 0; i < E.rank(); ++i) v[E.pivcols[i]] = -E.R(i, f);
    basis.push_back(v);
  }
  return basis;
}

template <class K>
Mat<K> mat_inverse(const Mat<K>& A, double tol = -1) {
  if (!A.square()) throw Error(Errc::ShapeMismatch, "inverse of non-square matrix");
  auto E = echelon(A, true, tol);
  if (E.rank() < A.rows()) throw Error(Errc::Singular, "matrix is singular");
  return E.T;
}

template <class K>
bool is_invertible(const Mat<K>& A, double tol = -1) {
  return A.square() && mat_rank(A, tol) == A.rows();
}

// X with A X = B for square invertible A.
template <class K>
Mat<K> mat_solve(const Mat<K>& A, const Mat<K>& B, double tol = -1) {
  return mat_inverse(A, tol) * B;
}

// Determinant over a commutative field.
template <class K>
K det_commutative(const Mat<K>& A) {
  if (!A.square()) throw Error(Errc::ShapeMismatch, "determinant of non-square matrix");
  auto E = echelon(A);
  if (E.rank() < A.rows()) return K(0);
  K d(1);
  for (auto& p : E.pivots) d = d * p;
  return (E.swaps % 2) ? -d : d;
}

enum class MOp { Add, Sub, Mul };

template <class K>
Mat<K> mat_arith(const Mat<K>& a, const Mat<K>& b, MOp op) {
  switch (op) {
    case MOp::Add: return a + b;
    case MOp::Sub: return a - b;
    case MOp::Mul: return a * b;
  }
  return a;
}

template <class S>
using QMat = Mat<Quat<S>>;

}  // namespace skew
