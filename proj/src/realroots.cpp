#include "skew/realroots.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>

namespace skew {
namespace upoly {

void divmod(const std::vector<Rational>& a, const std::vector<Rational>& b, std::vector<Rational>& q,
            std::vector<Rational>& r) {
  int db = degree(b);
  if (db < 0) throw Error(Errc::DivisionByZero, "polynomial division by zero");
  r = a;
  trim(r);
  int da = degree(r);
  q.assign(da >= db ? da - db + 1 : 0, Rational(0));
  const Rational lead = b[db];
  while (degree(r) >= db) {
    int dr = degree(r);
    Rational c = r[dr] / lead;
    q[dr - db] = c;
    for (int i = 0; i <= db; ++i) r[dr - db + i] -= c * b[i];
    trim(r);
  }
  trim(q);
}

std::vector<Rational> rem(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> q, r;
  divmod(a, b, q, r);
  return r;
}

std::vector<Rational> monic(std::vector<Rational> p) {
  trim(p);
  if (p.empty()) return p;
  Rational l = p.back();
  for (auto& c : p) c /= l;
  return p;
}

std::vector<Rational> gcd(std::vector<Rational> a, std::vector<Rational> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

std::vector<Rational> squarefree(const std::vector<Rational>& p) {
  auto g = gcd(p, derivative(p));
  std::vector<Rational> q, r;
  divmod(p, g, q, r);
  return monic(q);
}

std::vector<std::vector<Rational>> sturm_chain(const std::vector<Rational>& p) {
  std::vector<std::vector<Rational>> chain;
  auto a = p;
  trim(a);
  chain.push_back(a);
  auto b = derivative(a);
  while (!b.empty()) {
    chain.push_back(b);
    auto r = rem(a, b);
    for (auto& c : r) c = -c;
    a = std::move(b);
    b = std::move(r);
  }
  return chain;
}

static int sign_of(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

static int count_changes(const std::vector<int>& signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int sign_changes_at(const std::vector<std::vector<Rational>>& chain, const Rational& x) {
  std::vector<int> s;
  s.reserve(chain.size());
  for (auto& p : chain) s.push_back(sign_of(eval(p, x)));
  return count_changes(s);
}

int sign_changes_at_infinity(const std::vector<std::vector<Rational>>& chain, bool positive) {
  std::vector<int> s;
  for (auto& p : chain) {
    int d = degree(p);
    if (d < 0) continue;
    int sg = sign_of(p[d]);
    if (!positive && d % 2 == 1) sg = -sg;
    s.push_back(sg);
  }
  return count_changes(s);
}

Rational root_bound(const std::vector<Rational>& p) {
  int d = degree(p);
  if (d <= 0) return Rational(1);
  Rational m(0);
  for (int i = 0; i < d; ++i) {
    Rational v = p[i] / p[d];
    if (v < 0) v = -v;
    if (v > m) m = v;
  }
  return m + 1;
}

}  // namespace upoly

namespace {

using Chain = std::vector<std::vector<Rational>>;

// Number of distinct roots in (a, b].
int count_in(const Chain& chain, const Rational& a, const Rational& b) {
  return upoly::sign_changes_at(chain, a) - upoly::sign_changes_at(chain, b);
}

void isolate(const std::vector<Rational>& sf, const Chain& chain, Rational lo, Rational hi, int count,
             std::vector<RealRoot<Rational>>& out) {
  if (count <= 0) return;
  if (count == 1) {
    RealRoot<Rational> r;
    if (upoly::eval(sf, hi) == 0) {
      r.approx = r.lo = r.hi = hi;
      r.exact = true;
    } else {
      r.lo = lo;
      r.hi = hi;
      r.approx = (lo + hi) / 2;
    }
    out.push_back(r);
    return;
  }
  Rational mid = (lo + hi) / 2;
  if (upoly::eval(sf, mid) == 0) {
    // Cut a small window around the exact root so neighbouring intervals stay disjoint from it.
    Rational eps = (hi - lo) / 4;
    while (count_in(chain, mid - eps, mid + eps) != 1) eps /= 2;
    RealRoot<Rational> r;
    r.approx = r.lo = r.hi = mid;
    r.exact = true;
    isolate(sf, chain, lo, mid - eps, count_in(chain, lo, mid - eps), out);
    out.push_back(r);
    isolate(sf, chain, mid + eps, hi, count_in(chain, mid + eps, hi), out);
    return;
  }
  isolate(sf, chain, lo, mid, count_in(chain, lo, mid), out);
  isolate(sf, chain, mid, hi, count_in(chain, mid, hi), out);
}

}  // namespace

void refine_interval(const std::vector<Rational>& sf, RealRoot<Rational>& r, const Rational& width) {
  if (r.exact) return;
  Rational flo = upoly::eval(sf, r.lo);
  while (r.hi - r.lo > width) {
    Rational mid = (r.lo + r.hi) / 2;
    Rational fm = upoly::eval(sf, mid);
    if (fm == 0) {
      r.lo = r.hi = r.approx = mid;
      r.exact = true;
      return;
    }
    if ((fm > 0) == (flo > 0)) {
      r.lo = mid;
      flo = fm;
    } else {
      r.hi = mid;
    }
  }
  r.approx = (r.lo + r.hi) / 2;
}

std::vector<RealRoot<Rational>> real_roots_exact(const std::vector<Rational>& p) {
  if (upoly::degree(p) < 0) throw Error(Errc::ZeroPolynomial, "real_roots_exact");
  std::vector<RealRoot<Rational>> out;
  if (upoly::degree(p) == 0) return out;
  auto sf = upoly::squarefree(p);
  auto chain = upoly::sturm_chain(sf);
  Rational B = upoly::root_bound(sf);
  int total = count_in(chain, -B, B);
  isolate(sf, chain, -B, B, total, out);
  for (auto& r : out) {
    if (r.exact) continue;
    // Rational roots are reported exactly when the simplest candidate hits.
    Rational c = simplest_between(r.lo, r.hi);
    if (upoly::eval(sf, c) == 0) {
      r.lo = r.hi = r.approx = c;
      r.exact = true;
    }
  }
  // Closed intervals must be pairwise disjoint; neighbours may share an endpoint.
  for (std::size_t i = 1; i < out.size(); ++i) {
    while (out[i - 1].hi >= out[i].lo) {
      RealRoot<Rational>& w = (out[i - 1].exact || (!out[i].exact && out[i].hi - out[i].lo >
                                                     out[i - 1].hi - out[i - 1].lo))
                                  ? out[i]
                                  : out[i - 1];
      refine_interval(sf, w, (w.hi - w.lo) / 2);
    }
  }
  return out;
}

std::vector<RealRoot<double>> real_roots_float(const std::vector<double>& pin) {
  std::vector<double> p = pin;
  upoly::trim(p);
  if (p.empty()) throw Error(Errc::ZeroPolynomial, "real_roots_float");
  std::vector<RealRoot<double>> out;
  double scale = 0;
  for (double c : p) scale = std::max(scale, std::abs(c));
  const double tol = 1e-10 * (1 + scale);
  std::vector<double> cand;
  std::size_t lowzeros = 0;
  while (lowzeros < p.size() && p[lowzeros] == 0) ++lowzeros;
  if (lowzeros > 0) cand.push_back(0.0);
  std::vector<double> q(p.begin() + lowzeros, p.end());
  const int d = static_cast<int>(q.size()) - 1;
  if (d >= 1) {
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) C(i, i - 1) = 1;
    for (int i = 0; i < d; ++i) C(i, d - 1) = -q[i] / q[d];
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
    for (int i = 0; i < d; ++i) {
      std::complex<double> z = es.eigenvalues()[i];
      if (std::abs(z.imag()) > 1e-5 * (1 + std::abs(z))) continue;
      cand.push_back(z.real());
    }
  }
  auto dp = upoly::derivative(p);
  for (double x : cand) {
    for (int it = 0; it < 60; ++it) {
      double fx = upoly::eval(p, x);
      double dfx = upoly::eval(dp, x);
      if (fx == 0 || dfx == 0) break;
      double nx = x - fx / dfx;
      if (std::abs(upoly::eval(p, nx)) >= std::abs(fx)) break;
      x = nx;
    }
    double res = std::abs(upoly::eval(p, x));
    if (res > tol) continue;
    RealRoot<double> r;
    r.approx = r.lo = r.hi = x;
    r.residual = res;
    out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.approx < b.approx; });
  std::vector<RealRoot<double>> dedup;
  for (auto& r : out) {
    if (!dedup.empty() && std::abs(r.approx - dedup.back().approx) <= 1e-7 * (1 + std::abs(r.approx))) {
      if (r.residual < dedup.back().residual) dedup.back() = r;
      continue;
    }
    dedup.push_back(r);
  }
  return dedup;
}

}  // namespace skew
