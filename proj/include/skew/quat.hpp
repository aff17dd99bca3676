#pragma once

#include <array>
#include <optional>
#include <ostream>

#include "skew/scalar.hpp"

namespace skew {

// a + b i + c j + d k with i^2 = j^2 = k^2 = -1, ij = -ji = k.
template <class S>
struct Quat {
  S a{0}, b{0}, c{0}, d{0};

  Quat() = default;
  Quat(const S& a_) : a(a_) {}
  Quat(const S& a_, const S& b_, const S& c_, const S& d_) : a(a_), b(b_), c(c_), d(d_) {}
  Quat(int v) : a(v) {}

  static Quat i() { return Quat(S(0), S(1), S(0), S(0)); }
  static Quat j() { return Quat(S(0), S(0), S(1), S(0)); }
  static Quat k() { return Quat(S(0), S(0), S(0), S(1)); }

  const S& operator[](int t) const { return t == 0 ? a : t == 1 ? b : t == 2 ? c : d; }
  S& operator[](int t) { return t == 0 ? a : t == 1 ? b : t == 2 ? c : d; }

  Quat operator-() const { return Quat(-a, -b, -c, -d); }
  Quat& operator+=(const Quat& q) {
    a += q.a;
    b += q.b;
    c += q.c;
    d += q.d;
    return *this;
  }
  Quat& operator-=(const Quat& q) {
    a -= q.a;
    b -= q.b;
    c -= q.c;
    d -= q.d;
    return *this;
  }
  friend Quat operator+(Quat p, const Quat& q) { return p += q; }
  friend Quat operator-(Quat p, const Quat& q) { return p -= q; }
  friend Quat operator*(const Quat& p, const Quat& q) {
    return Quat(p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
                p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
                p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
                p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a);
  }
  Quat& operator*=(const Quat& q) { return *this = *this * q; }
  friend Quat operator*(const S& s, const Quat& q) { return Quat(s * q.a, s * q.b, s * q.c, s * q.d); }
  friend Quat operator*(const Quat& q, const S& s) { return s * q; }
  friend Quat operator/(const Quat& q, const S& s) { return Quat(q.a / s, q.b / s, q.c / s, q.d / s); }

  bool operator==(const Quat& q) const { return a == q.a && b == q.b && c == q.c && d == q.d; }
  bool operator!=(const Quat& q) const { return !(*this == q); }
};

template <class S>
Quat<S> qconj(const Quat<S>& q) {
  return Quat<S>(q.a, -q.b, -q.c, -q.d);
}
template <class S>
S qnorm(const Quat<S>& q) {
  return q.a * q.a + q.b * q.b + q.c * q.c + q.d * q.d;
}
template <class S>
S qtrace(const Quat<S>& q) {
  return q.a + q.a;
}
template <class S>
Quat<S> qpure(const Quat<S>& q) {
  return Quat<S>(S(0), q.b, q.c, q.d);
}
template <class S>
Quat<S> qinv(const Quat<S>& q) {
  S n = qnorm(q);
  if (n == S(0)) throw Error(Errc::DivisionByZero, "inverse of zero quaternion");
  return qconj(q) / n;
}
template <class S>
double qabs(const Quat<S>& q) {
  return std::sqrt(Scalar<S>::to_double(qnorm(q)));
}
template <class S>
bool qis_zero(const Quat<S>& q, double tol = 0) {
  if constexpr (is_exact_v<S>)
    return q.a == 0 && q.b == 0 && q.c == 0 && q.d == 0;
  else
    return qabs(q) <= tol;
}
template <class S>
bool is_central(const Quat<S>& q, double tol = 0) {
  if constexpr (is_exact_v<S>)
    return q.b == 0 && q.c == 0 && q.d == 0;
  else
    return std::sqrt(q.b * q.b + q.c * q.c + q.d * q.d) <= tol;
}

enum class QOp { Add, Sub, Mul };

template <class S>
Quat<S> qarith(const Quat<S>& p, const Quat<S>& q, QOp op) {
  switch (op) {
    case QOp::Add: return p + q;
    case QOp::Sub: return p - q;
    case QOp::Mul: return p * q;
  }
  return p;
}

template <class S>
bool qclose(const Quat<S>& p, const Quat<S>& q, double tol) {
  return qis_zero(Quat<S>(p - q), tol);
}

// g with p = g q g^-1, if p and q are conjugate. tol only matters on FLOAT.
template <class S>
std::optional<Quat<S>> conjugate_in_H(const Quat<S>& p, const Quat<S>& q, double tol = 0) {
  auto eq = [&](const S& x, const S& y) { return Scalar<S>::is_zero(x - y, tol); };
  bool pc = is_central(p, tol), qc = is_central(q, tol);
  if (pc || qc) {
    if (pc && qc && eq(p.a, q.a)) return Quat<S>(S(1));
    return std::nullopt;
  }
  if (!eq(p.a, q.a) || !eq(qnorm(p), qnorm(q))) return std::nullopt;
  Quat<S> pp = qpure(p), qp = qpure(q);
  std::optional<Quat<S>> g;
  Quat<S> cand = pp + qp;
  double scale = std::max(1.0, qabs(pp));
  if (!qis_zero(cand, tol * scale)) {
    g = cand;
  } else {
    for (const Quat<S>& s : {Quat<S>::i(), Quat<S>::j(), Quat<S>::k()}) {
      Quat<S> h = pp * s - s * pp;
      if (!qis_zero(h, tol * scale)) {
        g = h;
        break;
      }
    }
  }
  if (!g) return std::nullopt;
  if (!qclose(Quat<S>(*g * q * qinv(*g)), p, tol * 16 * scale)) return std::nullopt;
  return g;
}

template <class S>
std::ostream& operator<<(std::ostream& os, const Quat<S>& q) {
  return os << "[" << q.a << ", " << q.b << ", " << q.c << ", " << q.d << "]";
}

// x + y i over S; used for the complex adjoint over F(i).
template <class S>
struct Cplx {
  S re{0}, im{0};
  Cplx() = default;
  Cplx(const S& r) : re(r) {}
  Cplx(const S& r, const S& i) : re(r), im(i) {}
  Cplx(int v) : re(v) {}
  Cplx operator-() const { return Cplx(-re, -im); }
  Cplx& operator+=(const Cplx& z) {
    re += z.re;
    im += z.im;
    return *this;
  }
  Cplx& operator-=(const Cplx& z) {
    re -= z.re;
    im -= z.im;
    return *this;
  }
  friend Cplx operator+(Cplx x, const Cplx& y) { return x += y; }
  friend Cplx operator-(Cplx x, const Cplx& y) { return x -= y; }
  friend Cplx operator*(const Cplx& x, const Cplx& y) {
    return Cplx(x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re);
  }
  Cplx& operator*=(const Cplx& z) { return *this = *this * z; }
  bool operator==(const Cplx& z) const { return re == z.re && im == z.im; }
  bool operator!=(const Cplx& z) const { return !(*this == z); }
};

template <class S>
Cplx<S> cconj(const Cplx<S>& z) {
  return Cplx<S>(z.re, -z.im);
}
template <class S>
S cnorm(const Cplx<S>& z) {
  return z.re * z.re + z.im * z.im;
}
template <class S>
Cplx<S> cinv(const Cplx<S>& z) {
  S n = cnorm(z);
  if (n == S(0)) throw Error(Errc::DivisionByZero, "inverse of zero complex");
  return Cplx<S>(z.re / n, -z.im / n);
}

}  // namespace skew
