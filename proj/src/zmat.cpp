#include "skew/zmat.hpp"

#include <algorithm>

namespace skew {

ZMat::ZMat(const QMat<Rational>& A) : n_(A.rows()), m_(A.cols()), v_(static_cast<std::size_t>(n_) * m_ * 4) {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < m_; ++j)
      for (int t = 0; t < 4; ++t) den_ = lcm(den_, Int(denominator(A(i, j)[t])));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < m_; ++j)
      for (int t = 0; t < 4; ++t) {
        const Rational& x = A(i, j)[t];
        at(i, j, t) = numerator(x) * (den_ / denominator(x));
      }
}

ZMat operator*(const ZMat& x, const ZMat& y) {
  if (x.m_ != y.n_) throw Error(Errc::ShapeMismatch, "product shape");
  ZMat z;
  z.n_ = x.n_;
  z.m_ = y.m_;
  z.v_.assign(static_cast<std::size_t>(z.n_) * z.m_ * 4, ZMat::Int(0));
  z.den_ = x.den_ * y.den_;
  for (int i = 0; i < x.n_; ++i)
    for (int k = 0; k < x.m_; ++k) {
      const ZMat::Int &a0 = x.at(i, k, 0), &a1 = x.at(i, k, 1), &a2 = x.at(i, k, 2), &a3 = x.at(i, k, 3);
      if (a0 == 0 && a1 == 0 && a2 == 0 && a3 == 0) continue;
      for (int j = 0; j < y.m_; ++j) {
        const ZMat::Int &b0 = y.at(k, j, 0), &b1 = y.at(k, j, 1), &b2 = y.at(k, j, 2), &b3 = y.at(k, j, 3);
        z.at(i, j, 0) += a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3;
        z.at(i, j, 1) += a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2;
        z.at(i, j, 2) += a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1;
        z.at(i, j, 3) += a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0;
      }
    }
  return z;
}

ZMat ZMat::combine(const ZMat& x, const ZMat& y, bool sub) {
  if (x.n_ != y.n_ || x.m_ != y.m_) throw Error(Errc::ShapeMismatch, "sum shape");
  ZMat z;
  z.n_ = x.n_;
  z.m_ = x.m_;
  z.den_ = x.den_ * y.den_;
  z.v_.resize(x.v_.size());
  for (std::size_t t = 0; t < x.v_.size(); ++t)
    z.v_[t] = sub ? x.v_[t] * y.den_ - y.v_[t] * x.den_ : x.v_[t] * y.den_ + y.v_[t] * x.den_;
  return z;
}

bool operator==(const ZMat& x, const ZMat& y) {
  if (x.n_ != y.n_ || x.m_ != y.m_) return false;
  for (std::size_t t = 0; t < x.v_.size(); ++t)
    if (x.v_[t] * y.den_ != y.v_[t] * x.den_) return false;
  return true;
}

bool ZMat::real_diagonal_sum_is_zero() const {
  Int t(0);
  for (int i = 0; i < std::min(n_, m_); ++i) t += at(i, i, 0);
  return t == 0;
}

}  // namespace skew
