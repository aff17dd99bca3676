#pragma once

#include <array>
#include <optional>
#include <vector>

#include "skew/ncpoly.hpp"

namespace skew {

// 4-tuple of commutative polynomials multiplied with the quaternion rule.
template <class S>
struct PolyQuat {
  std::array<CPoly<S>, 4> c;

  static PolyQuat constant(int n, const Quat<S>& q) {
    PolyQuat r;
    for (int t = 0; t < 4; ++t) r.c[t] = CPoly<S>::constant(n, q[t]);
    return r;
  }
  // y_{l,1} + y_{l,2} i + y_{l,3} j + y_{l,4} k
  static PolyQuat variable(int n, int l) {
    PolyQuat r;
    for (int t = 0; t < 4; ++t) r.c[t] = CPoly<S>::var(n, 4 * l + t);
    return r;
  }
  friend PolyQuat operator*(const PolyQuat& p, const PolyQuat& q) {
    const auto& [a1, b1, c1, d1] = p.c;
    const auto& [a2, b2, c2, d2] = q.c;
    PolyQuat r;
    r.c[0] = a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2;
    r.c[1] = a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2;
    r.c[2] = a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2;
    r.c[3] = a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2;
    return r;
  }
  PolyQuat& operator+=(const PolyQuat& q) {
    for (int t = 0; t < 4; ++t) c[t] += q.c[t];
    return *this;
  }
};

// Components (a, b, c, d) of p as polynomials in y_{l,t}, variable index 4l + t.
template <class S>
std::array<CPoly<S>, 4> realify_poly(const NCPoly<S>& p) {
  const int m = p.nvars();
  const int n = 4 * m;
  PolyQuat<S> acc = PolyQuat<S>::constant(n, Quat<S>());
  std::vector<PolyQuat<S>> vars;
  for (int l = 0; l < m; ++l) vars.push_back(PolyQuat<S>::variable(n, l));
  for (auto& [w, coef] : p.terms()) {
    // Units act as signed coordinate permutations, handled by the generic product.
    PolyQuat<S> term = PolyQuat<S>::constant(n, Quat<S>(coef));
    for (Token t : w) term = term * (is_unit(t) ? PolyQuat<S>::constant(n, unit_quat<S>(t)) : vars[t]);
    acc += term;
  }
  return acc.c;
}

template <class S>
struct RealPolyMap {
  int m = 0;
  std::vector<CPoly<S>> components;  // 4m entries in 4m variables, order (l, t)

  std::vector<S> eval(const std::vector<S>& y) const {
    std::vector<S> out;
    out.reserve(components.size());
    for (auto& c : components) out.push_back(c.eval(y));
    return out;
  }
};

template <class S>
RealPolyMap<S> realify_map(const std::vector<NCPoly<S>>& f) {
  const int m = static_cast<int>(f.size());
  RealPolyMap<S> map;
  map.m = m;
  for (auto& fi : f) {
    if (fi.nvars() != m) throw Error(Errc::ArityMismatch, "map component arity differs from map length");
    for (auto& c : realify_poly(fi)) map.components.push_back(c);
  }
  return map;
}

template <class S>
std::vector<std::vector<CPoly<S>>> jacobian(const RealPolyMap<S>& map) {
  const int n = 4 * map.m;
  std::vector<std::vector<CPoly<S>>> J(map.components.size(), std::vector<CPoly<S>>(n, CPoly<S>(n)));
  for (std::size_t r = 0; r < map.components.size(); ++r)
    for (int s = 0; s < n; ++s) J[r][s] = map.components[r].derivative(s);
  return J;
}

template <class S>
std::vector<S> quats_to_coords(const std::vector<Quat<S>>& q) {
  std::vector<S> y;
  for (auto& x : q)
    for (int t = 0; t < 4; ++t) y.push_back(x[t]);
  return y;
}

template <class S>
std::vector<Quat<S>> coords_to_quats(const std::vector<S>& y) {
  std::vector<Quat<S>> q(y.size() / 4);
  for (std::size_t l = 0; l < q.size(); ++l) q[l] = Quat<S>(y[4 * l], y[4 * l + 1], y[4 * l + 2], y[4 * l + 3]);
  return q;
}

RealPolyMap<double> to_float(const RealPolyMap<Rational>& map);
inline const RealPolyMap<double>& to_float(const RealPolyMap<double>& map) { return map; }

template <class S>
struct CollisionReport {
  int trials = 0;
  bool found = false;
  std::vector<Quat<S>> a, b;  // distinct inputs with equal outputs
  bool certified = false;     // outputs compared exactly in S
};

// Seeded search for two distinct inputs with equal images.
template <class S>
CollisionReport<S> injectivity_probe(const RealPolyMap<S>& map, int trials, std::uint64_t seed);

// Damped Newton on f_R(y) = coords(target); residual infinity norm < 1e-8 on success.
std::optional<std::vector<Quat<double>>> surjectivity_probe(const RealPolyMap<double>& map,
                                                            const std::vector<Quat<double>>& target,
                                                            int starts, std::uint64_t seed);

}  // namespace skew
