#include "skew/realify.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "skew/rng.hpp"

namespace skew {

RealPolyMap<double> to_float(const RealPolyMap<Rational>& map) {
  RealPolyMap<double> out;
  out.m = map.m;
  for (auto& c : map.components) {
    CPoly<double> d(c.nvars());
    for (auto& [e, v] : c.terms()) d.add_term(e, v.convert_to<double>());
    out.components.push_back(d);
  }
  return out;
}

namespace {

struct Newton {
  const RealPolyMap<double>& map;
  std::vector<std::vector<CPoly<double>>> J;

  explicit Newton(const RealPolyMap<double>& m) : map(m), J(jacobian(m)) {}

  static double inf_norm(const std::vector<double>& v) {
    double r = 0;
    for (double x : v) r = std::max(r, std::abs(x));
    return r;
  }
  std::vector<double> residual(const std::vector<double>& y, const std::vector<double>& target) const {
    auto f = map.eval(y);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] -= target[i];
    return f;
  }

  // Throws SingularJacobian when the linear step cannot be solved.
  std::optional<std::vector<double>> solve(std::vector<double> y, const std::vector<double>& target,
                                           double tol = 1e-8, int iters = 50) const {
    const int n = static_cast<int>(y.size());
    auto r = residual(y, target);
    double rn = inf_norm(r);
    for (int it = 0; it < iters && rn >= tol; ++it) {
      Eigen::MatrixXd Jm(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) Jm(a, b) = J[a][b].eval(y);
      Eigen::VectorXd rv(n);
      for (int a = 0; a < n; ++a) rv(a) = r[a];
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Jm);
      qr.setThreshold(1e-13);
      if (qr.rank() < n) throw Error(Errc::SingularJacobian, "singular Jacobian in Newton step");
      Eigen::VectorXd delta = qr.solve(-rv);
      double lambda = 1;
      std::vector<double> ny(n);
      std::vector<double> nr;
      for (;;) {
        for (int a = 0; a < n; ++a) ny[a] = y[a] + lambda * delta(a);
        nr = residual(ny, target);
        if (inf_norm(nr) < rn || lambda < 1e-10) break;
        lambda /= 2;  // damping on residual increase
      }
      if (!(inf_norm(nr) < rn)) break;
      y = ny;
      r = nr;
      rn = inf_norm(r);
    }
    if (rn < tol) return y;
    return std::nullopt;
  }
};

template <class S>
S dyadic(Rng& rng) {
  return S(static_cast<long long>(rng.integer(-16, 16))) / S(8);
}

template <class S>
std::vector<std::vector<Quat<S>>> symmetric_candidates(const std::vector<Quat<S>>& y) {
  std::vector<std::vector<Quat<S>>> out;
  std::vector<Quat<S>> neg = y;
  for (auto& q : neg) q = -q;
  out.push_back(neg);
  for (std::size_t l = 0; l < y.size(); ++l) {
    auto z = y;
    z[l] = -z[l];
    out.push_back(z);
    z = y;
    z[l] = qconj(z[l]);
    out.push_back(z);
    for (const Quat<S>& u : {Quat<S>::i(), Quat<S>::j(), Quat<S>::k()}) {
      z = y;
      z[l] = u * y[l] * qinv(u);
      out.push_back(z);
    }
  }
  std::vector<Quat<S>> all_conj = y;
  for (auto& q : all_conj) q = qconj(q);
  out.push_back(all_conj);
  return out;
}

}  // namespace

template <class S>
CollisionReport<S> injectivity_probe(const RealPolyMap<S>& map, int trials, std::uint64_t seed) {
  CollisionReport<S> rep;
  const int m = map.m;
  const RealPolyMap<double> fmap = to_float(map);
  Newton newton(fmap);
  auto to_d = [](const std::vector<S>& v) {
    std::vector<double> d;
    for (auto& x : v) d.push_back(Scalar<S>::to_double(x));
    return d;
  };
  for (int t = 0; t < trials; ++t) {
    ++rep.trials;
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    std::vector<Quat<S>> y(m);
    for (auto& q : y) q = t == 0 ? Quat<S>::i() : Quat<S>(dyadic<S>(rng), dyadic<S>(rng), dyadic<S>(rng), dyadic<S>(rng));
    const auto fy = map.eval(quats_to_coords(y));
    const auto fyd = to_d(fy);
    for (auto& z : symmetric_candidates(y)) {
      if (z == y) continue;
      auto fz = map.eval(quats_to_coords(z));
      auto fzd = to_d(fz);
      double diff = 0;
      for (std::size_t i = 0; i < fzd.size(); ++i) diff = std::max(diff, std::abs(fzd[i] - fyd[i]));
      if (diff <= 1e-9) {
        rep.found = true;
        rep.a = y;
        rep.b = z;
        rep.certified = fz == fy;
        return rep;
      }
    }
    // Newton from a random start towards the same image.
    std::vector<double> start(4 * m);
    for (auto& x : start) x = rng.normal();
    try {
      auto sol = newton.solve(start, fyd, 1e-11);
      if (!sol) continue;
      auto yd = to_d(quats_to_coords(y));
      double dist = 0;
      for (std::size_t i = 0; i < yd.size(); ++i) dist = std::max(dist, std::abs(yd[i] - (*sol)[i]));
      if (dist < 1e-4) continue;
      std::vector<S> zs;
      for (double x : *sol) zs.push_back(Scalar<S>::from_double(x));
      rep.found = true;
      rep.a = y;
      rep.b = coords_to_quats(zs);
      rep.certified = map.eval(zs) == fy;
      return rep;
    } catch (const Error&) {
    }
  }
  return rep;
}

template CollisionReport<Rational> injectivity_probe(const RealPolyMap<Rational>&, int, std::uint64_t);
template CollisionReport<double> injectivity_probe(const RealPolyMap<double>&, int, std::uint64_t);

std::optional<std::vector<Quat<double>>> surjectivity_probe(const RealPolyMap<double>& map,
                                                            const std::vector<Quat<double>>& target,
                                                            int starts, std::uint64_t seed) {
  if (static_cast<int>(target.size()) != map.m) throw Error(Errc::ArityMismatch, "target length");
  Newton newton(map);
  const auto tc = quats_to_coords(target);
  double scale = 1;
  for (double x : tc) scale = std::max(scale, std::abs(x));
  for (int s = 0; s < starts; ++s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    std::vector<double> y(tc.size());
    if (s == 0) {
      y = tc;
    } else {
      for (auto& x : y) x = rng.normal() * std::sqrt(scale);
    }
    try {
      auto sol = newton.solve(y, tc);
      if (sol) return coords_to_quats(*sol);
    } catch (const Error& e) {
      if (e.code() != Errc::SingularJacobian) throw;
    }
  }
  return std::nullopt;
}

}  // namespace skew
