#pragma once

#include <vector>

#include "skew/mat.hpp"

namespace skew {

// Exact quaternion matrix stored as integer entries over one common denominator. Products and sums
// avoid the per-operation gcd of rational arithmetic; used to check identities between large matrices.
class ZMat {
 public:
  using Int = decltype(numerator(Rational()));

  ZMat() = default;
  explicit ZMat(const QMat<Rational>& A);

  int rows() const { return n_; }
  int cols() const { return m_; }
  bool real_diagonal_sum_is_zero() const;

  friend ZMat operator*(const ZMat& x, const ZMat& y);
  friend ZMat operator+(const ZMat& x, const ZMat& y) { return combine(x, y, false); }
  friend ZMat operator-(const ZMat& x, const ZMat& y) { return combine(x, y, true); }
  friend bool operator==(const ZMat& x, const ZMat& y);

 private:
  static ZMat combine(const ZMat& x, const ZMat& y, bool sub);
  Int& at(int i, int j, int t) { return v_[(static_cast<std::size_t>(i) * m_ + j) * 4 + t]; }
  const Int& at(int i, int j, int t) const { return v_[(static_cast<std::size_t>(i) * m_ + j) * 4 + t]; }

  int n_ = 0, m_ = 0;
  std::vector<Int> v_;
  Int den_{1};
};

}  // namespace skew
