#pragma once

#include <random>

#include "skew/cpoly.hpp"
#include "skew/mat.hpp"

namespace skew::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

inline long long rint(long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng());
}

inline Rational rrat(int num = 9, int den = 4) {
  return make_rational(rint(-num, num), rint(1, den));
}

inline double rdouble(double lo = -2, double hi = 2) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

template <class S>
S rscalar() {
  if constexpr (is_exact_v<S>)
    return rrat();
  else
    return rdouble();
}

template <class S>
Quat<S> rquat() {
  return Quat<S>(rscalar<S>(), rscalar<S>(), rscalar<S>(), rscalar<S>());
}

template <class S>
Quat<S> rquat_nonzero() {
  for (;;) {
    auto q = rquat<S>();
    if (!qis_zero(q)) return q;
  }
}

template <class S>
QMat<S> rqmat(int n, int m, int zero_pct = 0) {
  QMat<S> a(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = rint(1, 100) <= zero_pct ? Quat<S>() : rquat<S>();
  return a;
}

template <class S>
CPoly<S> rcpoly(int nvars, int maxdeg, int terms) {
  CPoly<S> p(nvars);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(nvars);
    int budget = static_cast<int>(rint(0, maxdeg));
    for (int v = 0; v < nvars && budget > 0; ++v) {
      e[v] = static_cast<int>(rint(0, budget));
      budget -= e[v];
    }
    p.add_term(e, rscalar<S>());
  }
  return p;
}

}  // namespace skew::testing
