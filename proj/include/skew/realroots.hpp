#pragma once

#include <vector>

#include "skew/cpoly.hpp"

namespace skew {

// Dense univariate helpers, coefficients low to high.
namespace upoly {

template <class S>
void trim(std::vector<S>& p) {
  while (!p.empty() && p.back() == S(0)) p.pop_back();
}
template <class S>
int degree(const std::vector<S>& p) {
  int d = static_cast<int>(p.size()) - 1;
  while (d >= 0 && p[d] == S(0)) --d;
  return d;
}
template <class S>
S eval(const std::vector<S>& p, const S& x) {
  S acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}
template <class S>
std::vector<S> derivative(const std::vector<S>& p) {
  std::vector<S> d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * S(static_cast<long long>(i)));
  trim(d);
  return d;
}
template <class S>
std::vector<S> mul(const std::vector<S>& a, const std::vector<S>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<S> r(a.size() + b.size() - 1, S(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}
template <class S>
std::vector<S> add(const std::vector<S>& a, const std::vector<S>& b) {
  std::vector<S> r(std::max(a.size(), b.size()), S(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

// Exact quotient and remainder over a field.
void divmod(const std::vector<Rational>& a, const std::vector<Rational>& b,
            std::vector<Rational>& q, std::vector<Rational>& r);
std::vector<Rational> rem(const std::vector<Rational>& a, const std::vector<Rational>& b);
std::vector<Rational> monic(std::vector<Rational> p);
std::vector<Rational> gcd(std::vector<Rational> a, std::vector<Rational> b);
std::vector<Rational> squarefree(const std::vector<Rational>& p);
std::vector<std::vector<Rational>> sturm_chain(const std::vector<Rational>& p);
int sign_changes_at(const std::vector<std::vector<Rational>>& chain, const Rational& x);
int sign_changes_at_infinity(const std::vector<std::vector<Rational>>& chain, bool positive);
// Cauchy bound: all real roots lie in (-B, B).
Rational root_bound(const std::vector<Rational>& p);

}  // namespace upoly

template <class S>
struct RealRoot {
  S approx;
  S lo, hi;            // isolating interval (EXACT); approx +- tiny (FLOAT)
  bool exact = false;  // approx is exactly a root
  double residual = 0;
};

std::vector<RealRoot<Rational>> real_roots_exact(const std::vector<Rational>& p);
std::vector<RealRoot<double>> real_roots_float(const std::vector<double>& p);

// Shrinks an isolating interval of the squarefree polynomial sf to width <= width.
void refine_interval(const std::vector<Rational>& sf, RealRoot<Rational>& r, const Rational& width);

template <class S>
std::vector<RealRoot<S>> real_roots_univariate(const CPoly<S>& p) {
  if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "real_roots_univariate");
  int var = 0;
  for (int v = 0; v < p.nvars(); ++v)
    if (p.degree_in(v) > 0) var = v;
  auto c = p.univariate(var);
  if constexpr (is_exact_v<S>)
    return real_roots_exact(c);
  else
    return real_roots_float(c);
}

}  // namespace skew
