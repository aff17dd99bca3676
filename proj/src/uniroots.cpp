#include "skew/uniroots.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>

#include "skew/realroots.hpp"
#include "skew/rng.hpp"

namespace skew {

namespace {

using QD = Quat<double>;

UniPoly<double> to_float(const UniPoly<Rational>& f) {
  std::vector<QD> c;
  for (auto& q : f.coeffs())
    c.emplace_back(q.a.convert_to<double>(), q.b.convert_to<double>(), q.c.convert_to<double>(),
                   q.d.convert_to<double>());
  return UniPoly<double>(c);
}

// q^k = alpha_k q + beta_k for q in the class x^2 - s x + n; returns (A, B) with f(q) = A q + B.
template <class S>
std::pair<Quat<S>, Quat<S>> class_remainder(const UniPoly<S>& f, const S& s, const S& n) {
  S alpha(0), beta(1);
  Quat<S> A, B;
  for (auto& a : f.coeffs()) {
    A += a * alpha;
    B += a * beta;
    S na = s * alpha + beta;
    S nb = -(n * alpha);
    alpha = na;
    beta = nb;
  }
  return {A, B};
}

// Directional derivative of q -> f(q) along h.
QD derivative_along(const UniPoly<double>& f, const QD& q, const QD& h) {
  const auto& a = f.coeffs();
  std::vector<QD> pw{QD(1.0)};
  for (std::size_t k = 1; k < a.size(); ++k) pw.push_back(pw.back() * q);
  QD acc;
  for (std::size_t k = 1; k < a.size(); ++k) {
    QD inner;
    for (std::size_t j = 0; j < k; ++j) inner += pw[j] * h * pw[k - 1 - j];
    acc += a[k] * inner;
  }
  return acc;
}

QD polish_quat(const UniPoly<double>& f, QD q, int iters = 40) {
  double res = qabs(f.eval_right(q));
  const QD basis[4] = {QD(1.0), QD::i(), QD::j(), QD::k()};
  for (int it = 0; it < iters && res > 0; ++it) {
    Eigen::Matrix4d J;
    for (int c = 0; c < 4; ++c) {
      QD d = derivative_along(f, q, basis[c]);
      for (int r = 0; r < 4; ++r) J(r, c) = d[r];
    }
    QD fq = f.eval_right(q);
    Eigen::Vector4d rhs(fq.a, fq.b, fq.c, fq.d);
    Eigen::FullPivLU<Eigen::Matrix4d> lu(J);
    if (!lu.isInvertible()) break;
    Eigen::Vector4d delta = lu.solve(-rhs);
    double lambda = 1;
    bool improved = false;
    while (lambda > 1e-6) {
      QD nq(q.a + lambda * delta(0), q.b + lambda * delta(1), q.c + lambda * delta(2), q.d + lambda * delta(3));
      double nr = qabs(f.eval_right(nq));
      if (nr < res) {
        q = nq;
        res = nr;
        improved = true;
        break;
      }
      lambda /= 2;
    }
    if (!improved) break;
  }
  return q;
}

double polish_central(const UniPoly<double>& f, double r, int iters = 40) {
  double res = qabs(f.eval_right(QD(r)));
  for (int it = 0; it < iters && res > 0; ++it) {
    QD fr = f.eval_right(QD(r));
    QD d = derivative_along(f, QD(r), QD(1.0));
    double dn = qnorm(d);
    if (dn == 0) break;
    // Gauss-Newton step for real r.
    double step = -(d.a * fr.a + d.b * fr.b + d.c * fr.c + d.d * fr.d) / dn;
    double lambda = 1;
    bool improved = false;
    while (lambda > 1e-6) {
      double nr = r + lambda * step;
      double v = qabs(f.eval_right(QD(nr)));
      if (v < res) {
        r = nr;
        res = v;
        improved = true;
        break;
      }
      lambda /= 2;
    }
    if (!improved) break;
  }
  return r;
}

bool quat_desc(const QD& x, const QD& y) {
  for (int t = 0; t < 4; ++t)
    if (x[t] != y[t]) return x[t] > y[t];
  return false;
}

RootSet<double> niven_float(const UniPoly<double>& f) {
  if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "niven_roots");
  RootSet<double> rs;
  const int t = f.degree();
  if (t == 0) return rs;
  const double tol = root_tolerance(f);
  const QD linv = qinv(f.lead());
  const UniPoly<double> g = linv * f;
  if (t == 1) {
    QD q = -g.coeff(0);
    if (is_central(q, 1e-14 * (1 + qabs(q))))
      rs.central.push_back(q.a);
    else
      rs.isolated.push_back(q);
    return rs;
  }
  // Complex adjoint of the companion matrix C (C v = v q, v = (1, q, ..., q^{t-1})).
  Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(2 * t, 2 * t);
  auto put = [&](int r, int c, const QD& q) {
    std::complex<double> z(q.a, q.b), w(q.c, q.d);
    X(2 * r, 2 * c) = z;
    X(2 * r, 2 * c + 1) = w;
    X(2 * r + 1, 2 * c) = -std::conj(w);
    X(2 * r + 1, 2 * c + 1) = std::conj(z);
  };
  for (int r = 0; r + 1 < t; ++r) put(r, r + 1, QD(1.0));
  for (int k = 0; k < t; ++k) put(t - 1, k, -g.coeff(k));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(X, false);
  std::vector<std::pair<double, double>> cand;  // (x, y >= 0)
  for (int i = 0; i < 2 * t; ++i) {
    std::complex<double> z = es.eigenvalues()[i];
    double x = z.real(), y = std::abs(z.imag());
    bool dup = false;
    for (auto& [cx, cy] : cand)
      if (std::abs(cx - x) + std::abs(cy - y) <= 1e-7 * (1 + std::abs(z))) dup = true;
    if (!dup) cand.emplace_back(x, y);
  }
  double gsum = 0;
  for (auto& a : g.coeffs()) gsum += qabs(a);
  auto resid = [&](const QD& q) { return qabs(f.eval_right(q)); };
  for (auto [x, y] : cand) {
    const double mag = 1 + std::hypot(x, y);
    if (y <= 1e-6 * mag) {
      double r = polish_central(f, x);
      if (resid(QD(r)) <= tol) {
        rs.central.push_back(r);
        continue;
      }
    }
    const double s = 2 * x, n = x * x + y * y;
    auto [A, B] = class_remainder(g, s, n);
    double scale = 0, pw = 1;
    for (auto& a : g.coeffs()) {
      scale += qabs(a) * pw;
      pw *= std::max(1.0, std::sqrt(n));
    }
    const double stol = 1e-7 * (1 + scale);
    if (y > 1e-6 * mag && qabs(A) <= stol && qabs(B) <= stol) {
      SphericalClass<double> sc{s, n};
      QD m1 = spherical_member(sc);
      QD m2(x, 0, y, 0), m3(x, 0, 0, y);
      if (resid(m1) <= 1e3 * tol && resid(m2) <= 1e3 * tol && resid(m3) <= 1e3 * tol) {
        rs.spherical.push_back(sc);
        continue;
      }
    }
    std::vector<QD> starts;
    if (qabs(A) > 1e-300) starts.push_back(-(qinv(A) * B));
    starts.push_back(QD(x, y, 0, 0));
    starts.push_back(QD(x, 0, y, 0));
    starts.push_back(QD(x, 0, 0, y));
    QD best;
    double bres = INFINITY;
    for (auto& st : starts) {
      QD q = polish_quat(f, st);
      double r = resid(q);
      if (r < bres) {
        bres = r;
        best = q;
      }
      if (r <= tol * 1e-3) break;
    }
    if (bres <= tol) {
      if (is_central(best, 1e-12 * (1 + qabs(best))))
        rs.central.push_back(best.a);
      else
        rs.isolated.push_back(best);
    }
  }
  // Deduplicate.
  std::sort(rs.central.begin(), rs.central.end());
  rs.central.erase(std::unique(rs.central.begin(), rs.central.end(),
                               [](double a, double b) { return std::abs(a - b) <= 1e-7 * (1 + std::abs(a)); }),
                   rs.central.end());
  std::vector<SphericalClass<double>> sph;
  for (auto& c : rs.spherical) {
    bool dup = false;
    for (auto& d : sph)
      if (std::abs(c.s - d.s) + std::abs(c.n - d.n) <= 1e-3 * (1 + std::abs(c.n))) dup = true;
    if (!dup) sph.push_back(c);
  }
  rs.spherical = sph;
  std::vector<QD> iso;
  for (auto& q : rs.isolated) {
    bool dup = false;
    for (auto& c : rs.spherical)
      if (std::abs(qtrace(q) - c.s) + std::abs(qnorm(q) - c.n) <= 1e-5 * (1 + c.n)) dup = true;
    for (auto& r : iso)
      if (qabs(QD(q - r)) <= 1e-7 * (1 + qabs(q))) dup = true;
    if (!dup) iso.push_back(q);
  }
  std::sort(iso.begin(), iso.end(), quat_desc);
  rs.isolated = iso;
  return rs;
}

std::vector<Rational> component_poly(const UniPoly<Rational>& f, int c) {
  std::vector<Rational> p;
  for (auto& a : f.coeffs()) p.push_back(a[c]);
  upoly::trim(p);
  return p;
}

Rational rat_of(double x) { return rationalize(x, 1e-9 * (1 + std::abs(x))); }

Quat<Rational> rat_quat(const QD& q) { return Quat<Rational>(rat_of(q.a), rat_of(q.b), rat_of(q.c), rat_of(q.d)); }

RootSet<Rational> niven_exact(const UniPoly<Rational>& f) {
  if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "niven_roots");
  RootSet<Rational> rs;
  const int t = f.degree();
  if (t == 0) return rs;
  if (t == 1) {
    Quat<Rational> q = -(qinv(f.lead()) * f.coeff(0));
    if (is_central(q))
      rs.central.push_back(q.a);
    else
      rs.isolated.push_back(q);
    return rs;
  }
  // Root classes are the quadratic/linear real factors of N(f) = sum_c F_c^2.
  std::vector<Rational> N;
  std::vector<std::vector<Rational>> F(4);
  for (int c = 0; c < 4; ++c) {
    F[c] = component_poly(f, c);
    N = upoly::add(N, upoly::mul(F[c], F[c]));
  }
  auto sfN = upoly::squarefree(N);
  const int real_classes = static_cast<int>(real_roots_exact(sfN).size());
  const int total_classes = real_classes + (upoly::degree(sfN) - real_classes) / 2;
  int found = 0;

  std::vector<Rational> G;
  for (int c = 0; c < 4; ++c) G = upoly::gcd(G, F[c]);
  if (upoly::degree(G) >= 1) {
    auto Gsf = upoly::squarefree(G);
    for (auto r : real_roots_exact(Gsf)) {
      if (!r.exact) {
        refine_interval(Gsf, r, Rational(1) / Rational(Integer(1) << 40));
        rs.approx = true;
      }
      rs.central.push_back(r.approx);
      ++found;
    }
  }
  const RootSet<double> fr = niven_float(to_float(f));
  auto try_class = [&](double sd, double nd, const std::optional<QD>& approx_root) {
    Rational s = rat_of(sd), n = rat_of(nd);
    std::vector<Rational> quad{n, -s, Rational(1)};
    bool divides = s * s < 4 * n && upoly::rem(sfN, quad).empty();
    if (divides) {
      auto [A, B] = class_remainder(f, s, n);
      if (qis_zero(A) && qis_zero(B)) {
        rs.spherical.push_back({s, n});
        ++found;
        return;
      }
      if (!qis_zero(A)) {
        Quat<Rational> q = -(qinv(A) * B);
        if (qis_zero(f.eval_right(q))) {
          rs.isolated.push_back(q);
          ++found;
          return;
        }
      }
    }
    rs.approx = true;
    if (approx_root) {
      rs.isolated.push_back(rat_quat(*approx_root));
    } else {
      rs.spherical.push_back({s, n});
    }
    ++found;
  };
  for (auto& c : fr.spherical) try_class(c.s, c.n, std::nullopt);
  for (auto& q : fr.isolated) try_class(qtrace(q), qnorm(q), q);
  if (found < total_classes) rs.approx = true;
  return rs;
}

}  // namespace

template <class S>
Quat<S> spherical_member(const SphericalClass<S>& c) {
  S half = c.s / S(2);
  S m = c.n - half * half;
  if constexpr (is_exact_v<S>) {
    Rational x, y, z;
    if (!three_squares(m, x, y, z, 64))
      throw Error(Errc::ExactnessUnavailable, "no rational member of the spherical class");
    return Quat<S>(half, x, y, z);
  } else {
    return Quat<S>(half, std::sqrt(std::max(0.0, m)), 0.0, 0.0);
  }
}

template <class S>
RootSet<S> niven_roots(const UniPoly<S>& f) {
  if constexpr (is_exact_v<S>)
    return niven_exact(f);
  else
    return niven_float(f);
}

template <class S>
int conjugacy_class_count(const RootSet<S>& rs) {
  std::vector<std::pair<double, double>> classes;
  auto add = [&](double s, double n) {
    for (auto& [cs, cn] : classes)
      if (std::abs(cs - s) <= 1e-6 * (1 + std::abs(s)) && std::abs(cn - n) <= 1e-6 * (1 + std::abs(n))) return;
    classes.emplace_back(s, n);
  };
  for (auto& c : rs.spherical) add(Scalar<S>::to_double(c.s), Scalar<S>::to_double(c.n));
  for (auto& r : rs.central) {
    double x = Scalar<S>::to_double(r);
    add(2 * x, x * x);
  }
  for (auto& q : rs.isolated) add(Scalar<S>::to_double(qtrace(q)), Scalar<S>::to_double(qnorm(q)));
  return static_cast<int>(classes.size());
}

template <class S>
bool gordon_motzkin_check(const UniPoly<S>& f) {
  return conjugacy_class_count(niven_roots(f)) <= f.degree();
}

template <class S>
Quat<S> preimage(const UniPoly<S>& f, const Quat<S>& c) {
  if (f.degree() < 1) throw Error(Errc::ZeroPolynomial, "preimage needs a nonconstant polynomial");
  UniPoly<S> g = f - UniPoly<S>::constant(c);
  RootSet<S> rs = niven_roots(g);
  if constexpr (is_exact_v<S>) {
    for (auto& q : rs.isolated)
      if (qis_zero(g.eval_right(q))) return q;
    for (auto& sc : rs.spherical) {
      try {
        Quat<S> q = spherical_member(sc);
        if (qis_zero(g.eval_right(q))) return q;
      } catch (const Error&) {
      }
    }
    for (auto& r : rs.central)
      if (qis_zero(g.eval_right(Quat<S>(r)))) return Quat<S>(r);
    throw Error(Errc::ExactnessUnavailable, "no rational right root; use the float backend");
  } else {
    const double tol = root_tolerance(g);
    std::vector<Quat<S>> cands = rs.isolated;
    for (auto& sc : rs.spherical) cands.push_back(spherical_member(sc));
    for (auto& r : rs.central) cands.push_back(Quat<S>(r));
    for (auto& q : cands)
      if (qabs(g.eval_right(q)) <= tol) return q;
    throw Error(Errc::SolverExhausted, "no verified right root found");
  }
}

template <class S>
std::vector<Quat<S>> image_oracle(const NCPoly<S>& p, const Quat<S>& target) {
  auto w = central_witness(p);
  if (!w) throw Error(Errc::NoWitness, "p vanishes on the center");
  const int m = p.nvars();
  auto solve_at = [&](const std::vector<S>& base, int l) -> std::optional<std::vector<Quat<S>>> {
    UniPoly<S> f = specialize(p, l, base);
    if (f.degree() < 1) return std::nullopt;
    std::vector<Quat<S>> pt;
    for (auto& v : base) pt.emplace_back(v);
    pt[l] = preimage(f, target);
    return pt;
  };
  for (int l = 0; l < m; ++l)
    if (auto pt = solve_at(w->point, l)) return *pt;
  // Walk from the witness towards 0 one coordinate at a time; some step is nonconstant.
  std::vector<S> base = w->point;
  for (int l = 0; l < m; ++l) {
    if (auto pt = solve_at(base, l)) return *pt;
    base[l] = S(0);
  }
  throw Error(Errc::NoWitness, "no nonconstant specialization");
}

template <class S>
InfinitudeReport image_infinitude_probe(const UniPoly<S>& f, int sample, std::uint64_t seed) {
  InfinitudeReport rep;
  rep.sample = sample;
  Rng rng(seed);
  std::vector<Quat<S>> values;
  std::vector<S> norms;
  for (int k = 0; k < sample; ++k) {
    Quat<S> q;
    for (;;) {
      q = Quat<S>(S(static_cast<long long>(k + 1)), rng.scalar<S>(3, 2), rng.scalar<S>(3, 2), rng.scalar<S>(3, 2));
      S n = qnorm(q);
      bool clash = false;
      for (auto& m : norms)
        if (Scalar<S>::is_zero(m - n, 1e-9 * (1 + Scalar<S>::to_double(n)))) clash = true;
      if (!clash) {
        norms.push_back(n);
        break;
      }
    }
    Quat<S> v = f.eval_right(q);
    bool seen = false;
    for (auto& u : values)
      if (qis_zero(Quat<S>(u - v), 1e-9 * (1 + qabs(v)))) seen = true;
    if (!seen) values.push_back(v);
  }
  rep.distinct = static_cast<int>(values.size());
  if (rep.distinct < sample)
    rep.note = "collisions: each value is attained on at most deg(f) conjugacy classes";
  return rep;
}

#define SKEW_INSTANTIATE(S)                                                                  \
  template RootSet<S> niven_roots(const UniPoly<S>&);                                        \
  template int conjugacy_class_count(const RootSet<S>&);                                     \
  template bool gordon_motzkin_check(const UniPoly<S>&);                                     \
  template Quat<S> preimage(const UniPoly<S>&, const Quat<S>&);                              \
  template std::vector<Quat<S>> image_oracle(const NCPoly<S>&, const Quat<S>&);              \
  template InfinitudeReport image_infinitude_probe(const UniPoly<S>&, int, std::uint64_t); \
  template Quat<S> spherical_member(const SphericalClass<S>&);

SKEW_INSTANTIATE(Rational)
SKEW_INSTANTIATE(double)

}  // namespace skew
