#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "skew/scalar.hpp"

namespace skew {

// Sparse commutative polynomial in nvars variables over S.
template <class S>
class CPoly {
 public:
  using Exps = std::vector<int>;
  using Terms = std::map<Exps, S>;

  CPoly() = default;
  explicit CPoly(int nvars) : n_(nvars) {}

  static CPoly constant(int nvars, const S& c) {
    CPoly p(nvars);
    p.add_term(Exps(nvars, 0), c);
    return p;
  }
  static CPoly var(int nvars, int v) {
    CPoly p(nvars);
    Exps e(nvars, 0);
    e.at(v) = 1;
    p.add_term(e, S(1));
    return p;
  }
  // Dense univariate coefficients, low to high.
  static CPoly from_univariate(const std::vector<S>& c) {
    CPoly p(1);
    for (std::size_t i = 0; i < c.size(); ++i) p.add_term(Exps{static_cast<int>(i)}, c[i]);
    return p;
  }

  int nvars() const { return n_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add_term(const Exps& e, const S& c) {
    if (static_cast<int>(e.size()) != n_) throw Error(Errc::ArityMismatch, "exponent length");
    if (c == S(0)) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
      t_.emplace(e, c);
      return;
    }
    it->second += c;
    if (it->second == S(0)) t_.erase(it);
  }

  S coeff(const Exps& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? S(0) : it->second;
  }

  int total_degree() const {
    int d = -1;
    for (auto& [e, c] : t_) {
      int s = 0;
      for (int x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }
  int degree_in(int v) const {
    int d = -1;
    for (auto& [e, c] : t_) d = std::max(d, e.at(v));
    return d;
  }

  CPoly operator-() const {
    CPoly r(n_);
    for (auto& [e, c] : t_) r.t_.emplace(e, -c);
    return r;
  }
  CPoly& operator+=(const CPoly& q) {
    check(q);
    for (auto& [e, c] : q.t_) add_term(e, c);
    return *this;
  }
  CPoly& operator-=(const CPoly& q) {
    check(q);
    for (auto& [e, c] : q.t_) add_term(e, -c);
    return *this;
  }
  friend CPoly operator+(CPoly p, const CPoly& q) { return p += q; }
  friend CPoly operator-(CPoly p, const CPoly& q) { return p -= q; }
  friend CPoly operator*(const CPoly& p, const CPoly& q) {
    p.check(q);
    CPoly r(p.n_);
    Exps e(p.n_);
    for (auto& [ea, ca] : p.t_)
      for (auto& [eb, cb] : q.t_) {
        for (int i = 0; i < p.n_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  CPoly& operator*=(const CPoly& q) { return *this = *this * q; }
  CPoly scaled(const S& s) const {
    CPoly r(n_);
    if (s == S(0)) return r;
    for (auto& [e, c] : t_) r.add_term(e, c * s);
    return r;
  }
  bool operator==(const CPoly& q) const { return n_ == q.n_ && t_ == q.t_; }
  bool operator!=(const CPoly& q) const { return !(*this == q); }

  S eval(const std::vector<S>& pt) const {
    if (static_cast<int>(pt.size()) != n_) throw Error(Errc::ArityMismatch, "evaluation point");
    S acc(0);
    for (auto& [e, c] : t_) {
      S m = c;
      for (int i = 0; i < n_; ++i)
        for (int k = 0; k < e[i]; ++k) m *= pt[i];
      acc += m;
    }
    return acc;
  }

  CPoly derivative(int v) const {
    CPoly r(n_);
    for (auto& [e, c] : t_) {
      if (e.at(v) == 0) continue;
      Exps f = e;
      f[v] -= 1;
      r.add_term(f, c * S(e[v]));
    }
    return r;
  }

  // Coefficients with respect to variable v (index = power); each keeps nvars with v's exponent 0.
  std::vector<CPoly> coeffs_in(int v) const {
    int d = degree_in(v);
    std::vector<CPoly> out(std::max(d + 1, 0), CPoly(n_));
    for (auto& [e, c] : t_) {
      Exps f = e;
      f[v] = 0;
      out[e[v]].add_term(f, c);
    }
    return out;
  }

  // Substitute value for variable v (variable count unchanged).
  CPoly substitute(int v, const S& value) const {
    CPoly r(n_);
    for (auto& [e, c] : t_) {
      S m = c;
      for (int k = 0; k < e.at(v); ++k) m *= value;
      Exps f = e;
      f[v] = 0;
      r.add_term(f, m);
    }
    return r;
  }

  // Dense coefficients of a polynomial that only involves variable v.
  std::vector<S> univariate(int v = 0) const {
    std::vector<S> out(std::max(degree_in(v) + 1, 0), S(0));
    for (auto& [e, c] : t_) {
      for (int i = 0; i < n_; ++i)
        if (i != v && e[i] != 0) throw Error(Errc::ArityMismatch, "not univariate");
      out[e[v]] = c;
    }
    return out;
  }

  // Same polynomial viewed in a larger variable set, variable i mapped to map[i].
  CPoly remap(int nvars, const std::vector<int>& map) const {
    CPoly r(nvars);
    for (auto& [e, c] : t_) {
      Exps f(nvars, 0);
      for (int i = 0; i < n_; ++i) f.at(map.at(i)) += e[i];
      r.add_term(f, c);
    }
    return r;
  }

  // Drop coefficients with |c| <= tol (float cleanup; no-op on exact zero tolerance).
  CPoly chopped(double tol) const {
    CPoly r(n_);
    for (auto& [e, c] : t_)
      if (!Scalar<S>::is_zero(c, tol)) r.t_.emplace(e, c);
    return r;
  }

  double max_abs_coeff() const {
    double m = 0;
    for (auto& [e, c] : t_) m = std::max(m, std::abs(Scalar<S>::to_double(c)));
    return m;
  }

 private:
  void check(const CPoly& q) const {
    if (n_ != q.n_) throw Error(Errc::ArityMismatch, "variable counts differ");
  }
  int n_ = 0;
  Terms t_;
};

enum class ArithOp { Add, Sub, Mul };

template <class S>
CPoly<S> cpoly_arith(const CPoly<S>& p, const CPoly<S>& q, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return p + q;
    case ArithOp::Sub: return p - q;
    case ArithOp::Mul: return p * q;
  }
  return p;
}

template <class S>
S cpoly_eval(const CPoly<S>& p, const std::vector<S>& pt) {
  return p.eval(pt);
}

// Multivariate division assumed exact (lex order on exponent vectors). Float
// remainders below tol are discarded.
template <class S>
CPoly<S> exact_divide(CPoly<S> a, const CPoly<S>& b, double tol = 0) {
  if (b.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
  const int n = a.nvars();
  CPoly<S> q(n);
  const auto& lb = *b.terms().rbegin();
  while (!a.is_zero()) {
    const auto la = *a.terms().rbegin();
    typename CPoly<S>::Exps e(n);
    bool divisible = true;
    for (int i = 0; i < n; ++i) {
      e[i] = la.first[i] - lb.first[i];
      if (e[i] < 0) divisible = false;
    }
    if (!divisible) {
      if constexpr (is_exact_v<S>) throw Error(Errc::DivisionByZero, "inexact polynomial division");
      a = a.chopped(tol);
      if (a.is_zero()) break;
      CPoly<S> rest(n);
      for (auto& [ex, c] : a.terms())
        if (ex != la.first) rest.add_term(ex, c);
      a = rest;
      continue;
    }
    S c = la.second / lb.second;
    CPoly<S> m(n);
    m.add_term(e, c);
    q += m;
    a -= m * b;
    if constexpr (!is_exact_v<S>) {
      a = a.chopped(tol);
    }
  }
  return q;
}

// Sylvester-matrix determinant in the variable `var`. Rows 0..deg(q)-1 carry p's
// coefficients (leading first), the remaining deg(p) rows carry q's.
template <class S>
CPoly<S> resultant(const CPoly<S>& p, const CPoly<S>& q, int var) {
  if (p.nvars() != q.nvars()) throw Error(Errc::ArityMismatch, "resultant arity");
  if (p.is_zero() || q.is_zero()) throw Error(Errc::ZeroPolynomial, "resultant of zero polynomial");
  const int n = p.nvars();
  auto pc = p.coeffs_in(var);
  auto qc = q.coeffs_in(var);
  const int dp = static_cast<int>(pc.size()) - 1;
  const int dq = static_cast<int>(qc.size()) - 1;
  if (dp <= 0 && dq <= 0) return CPoly<S>::constant(n, S(1));
  const int N = dp + dq;
  if (N == 0) return CPoly<S>::constant(n, S(1));
  std::vector<std::vector<CPoly<S>>> M(N, std::vector<CPoly<S>>(N, CPoly<S>(n)));
  for (int r = 0; r < dq; ++r)
    for (int k = 0; k <= dp; ++k) M[r][r + k] = pc[dp - k];
  for (int r = 0; r < dp; ++r)
    for (int k = 0; k <= dq; ++k) M[dq + r][r + k] = qc[dq - k];
  // Fraction-free Bareiss elimination.
  double tol = 0;
  if constexpr (!is_exact_v<S>) {
    double scale = std::max(p.max_abs_coeff(), q.max_abs_coeff());
    tol = 1e-13 * std::max(1.0, scale);
  }
  CPoly<S> prev = CPoly<S>::constant(n, S(1));
  int sign = 1;
  for (int k = 0; k < N - 1; ++k) {
    if (M[k][k].is_zero()) {
      int sw = -1;
      for (int r = k + 1; r < N; ++r)
        if (!M[r][k].is_zero()) {
          sw = r;
          break;
        }
      if (sw < 0) return CPoly<S>(n);
      std::swap(M[k], M[sw]);
      sign = -sign;
    }
    for (int i = k + 1; i < N; ++i) {
      for (int j = k + 1; j < N; ++j) {
        CPoly<S> num = M[k][k] * M[i][j] - M[i][k] * M[k][j];
        M[i][j] = exact_divide(num, prev, tol);
      }
      M[i][k] = CPoly<S>(n);
    }
    prev = M[k][k];
  }
  CPoly<S> det = M[N - 1][N - 1];
  return sign > 0 ? det : -det;
}

}  // namespace skew
