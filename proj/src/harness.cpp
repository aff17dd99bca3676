#include "skew/harness.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <optional>

#include "skew/rng.hpp"

namespace skew {

template <class S>
SymMat<S>::SymMat(int n, int nvars) : n_(n), nv_(nvars), e_(static_cast<std::size_t>(n) * n, CPoly<S>(nvars)) {}

template <class S>
SymMat<S> SymMat<S>::generic_upper(int n, int nvars, int first) {
  SymMat m(n, nvars);
  int v = first;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = CPoly<S>::var(nvars, v++);
  return m;
}

template <class S>
SymMat<S> SymMat<S>::identity(int n, int nvars) {
  SymMat m(n, nvars);
  for (int i = 0; i < n; ++i) m(i, i) = CPoly<S>::constant(nvars, S(1));
  return m;
}

template <class S>
SymMat<S>& SymMat<S>::operator+=(const SymMat& b) {
  for (std::size_t t = 0; t < e_.size(); ++t) e_[t] += b.e_[t];
  return *this;
}

template <class S>
SymMat<S> SymMat<S>::mul(const SymMat& b) const {
  SymMat r(n_, nv_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      if ((*this)(i, k).is_zero()) continue;
      for (int j = 0; j < n_; ++j)
        if (!b(k, j).is_zero()) r(i, j) += (*this)(i, k) * b(k, j);
    }
  return r;
}

template <class S>
SymMat<S> SymMat<S>::scaled(const S& c) const {
  SymMat r(n_, nv_);
  for (std::size_t t = 0; t < e_.size(); ++t) r.e_[t] = e_[t].scaled(c);
  return r;
}

template <class S>
bool SymMat<S>::is_zero() const {
  for (auto& p : e_)
    if (!p.is_zero()) return false;
  return true;
}

template <class S>
Mat<S> SymMat<S>::eval(const std::vector<S>& point) const {
  Mat<S> m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j).eval(point);
  return m;
}

template <class S>
SymMat<S> generic_triangular_eval(const NCPoly<S>& p, int n) {
  if (!is_central_coeffs(p)) throw Error(Errc::NonCentralCoefficients, "triangular evaluation");
  const int per = n * (n + 1) / 2;
  const int nvars = p.nvars() * per;
  std::vector<SymMat<S>> X;
  for (int l = 0; l < p.nvars(); ++l) X.push_back(SymMat<S>::generic_upper(n, nvars, l * per));
  SymMat<S> acc(n, nvars);
  for (auto& [w, c] : p.terms()) {
    SymMat<S> m = SymMat<S>::identity(n, nvars);
    for (Token t : w) m = m * X[t];
    acc += m.scaled(c);
  }
  return acc;
}

template <class S>
int ord(const NCPoly<S>& p) {
  if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "ord of the zero polynomial");
  if (!is_central_coeffs(p)) throw Error(Errc::NonCentralCoefficients, "ord");
  // A nonzero identity of T_m has degree >= 2m.
  const int bound = std::max(p.total_degree(), 0) / 2 + 1;
  for (int m = 1; m <= bound; ++m)
    if (!generic_triangular_eval(p, m).is_zero()) return m - 1;
  return bound;
}

Json report_to_json(const SuiteReport& r) {
  return Json{{"suite", r.suite},     {"seed", r.seed},       {"trials", r.trials},
              {"failures", r.failures}, {"verdict", r.verdict}, {"notes", r.notes}};
}

SuiteReport report_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::Format, "suite report must be an object");
  SuiteReport r;
  try {
    r.suite = j.at("suite").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.trials = j.at("trials").get<int>();
    r.failures = j.at("failures");
    r.verdict = j.at("verdict").get<std::string>();
    if (j.contains("notes")) r.notes = j.at("notes");
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Format, std::string("suite report: ") + e.what());
  }
  if (!r.failures.is_array()) throw Error(Errc::Format, "'failures' must be an array");
  return r;
}

namespace {

using QR = QMat<Rational>;

const char* kClaimLevel = "p(tuple) in T_n^(r-1)";
const char* kClaimSimilar = "p(tuple) similar into T_n^(r-1)";
const char* kClaimZero = "p(tuple) = 0";

QR real_upper(Rng& rng, int n) {
  QR A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) A(i, j) = Quat<Rational>(rng.rational(9, 4));
  return A;
}

QR random_qmat(Rng& rng, int n) {
  QR A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = rng.quat<Rational>(9, 4);
  return A;
}

// Entries with j - i <= t vanish.
bool in_level(const QR& M, int t) {
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j)
      if (j - i <= t && !qis_zero(M(i, j))) return false;
  return true;
}

Json failure(const std::vector<QR>& in, const QR& value, const char* claim) {
  return Json{{"inputs", qmats_to_json(in)}, {"value", qmat_to_json(value)}, {"claim", claim}};
}

void merge(SuiteReport& r, std::vector<std::optional<Json>>& per_trial) {
  for (auto& f : per_trial)
    if (f) r.failures.push_back(std::move(*f));
}

CPoly<double> to_double_poly(const CPoly<Rational>& p) {
  CPoly<double> q(p.nvars());
  for (auto& [e, c] : p.terms()) q.add_term(e, c.convert_to<double>());
  return q;
}

// Best-effort Newton search for a triangular tuple hitting each target in T_n^(r-1).
Json surjectivity_probe(const NCPoly<Rational>& p, int n, int r, std::uint64_t seed, int targets) {
  SymMat<Rational> G = generic_triangular_eval(p, n);
  const int nv = G.nvars();
  std::vector<CPoly<double>> eqs;
  for (int i = 0; i < n; ++i)
    for (int j = i + r; j < n; ++j) {
      eqs.push_back(to_double_poly(G(i, j)));
    }
  std::vector<std::vector<CPoly<double>>> jac(eqs.size());
  for (std::size_t e = 0; e < eqs.size(); ++e)
    for (int v = 0; v < nv; ++v) jac[e].push_back(eqs[e].derivative(v));
  int hit = 0;
  for (int t = 0; t < targets; ++t) {
    Rng rng(derive_seed(seed, 100000 + t));
    std::vector<double> target;
    for (std::size_t e = 0; e < eqs.size(); ++e) target.push_back(static_cast<double>(rng.integer(-5, 5)));
    bool ok = eqs.empty();
    for (int start = 0; start < 6 && !ok; ++start) {
      std::vector<double> y(nv);
      for (auto& x : y) x = rng.real(-2, 2);
      for (int it = 0; it < 80 && !ok; ++it) {
        Eigen::VectorXd F(eqs.size());
        Eigen::MatrixXd J(eqs.size(), nv);
        for (std::size_t e = 0; e < eqs.size(); ++e) {
          F(e) = eqs[e].eval(y) - target[e];
          for (int v = 0; v < nv; ++v) J(e, v) = jac[e][v].eval(y);
        }
        if (F.lpNorm<Eigen::Infinity>() < 1e-10) {
          ok = true;
          break;
        }
        Eigen::VectorXd step = J.completeOrthogonalDecomposition().solve(-F);
        if (!step.allFinite()) break;
        for (int v = 0; v < nv; ++v) y[v] += step(v);
      }
    }
    hit += ok;
  }
  return Json{{"targets", targets}, {"hit", hit}, {"method", "Newton, minimum-norm steps, 6 starts"}};
}

std::vector<std::vector<QR>> des_seed_tuples(int arity, int n) {
  auto e = [n](int i, int j) { return QR::unit(n, i, j, Quat<Rational>(Rational(1))); };
  if (arity == 2) return {{e(0, 1), e(1, 0)}};
  if (arity == 4) return {{e(0, 0), e(0, 1), e(1, 0), e(0, 0)}};
  return {};
}

}  // namespace

SuiteReport panja_prasad_suite(const NCPoly<Rational>& p, int n, int trials, std::uint64_t seed, int jobs) {
  if (n < 2) throw Error(Errc::ShapeTooSmall, "panja-prasad suite needs n >= 2");
  const int r = ord(p);
  SuiteReport rep;
  rep.suite = "panja-prasad";
  rep.seed = seed;
  rep.trials = trials;
  rep.notes = Json{{"p", ncpoly_to_json(p)}, {"n", n}, {"ord", r}};
  const int m = p.nvars();
  std::vector<std::optional<Json>> out(trials);
  std::vector<int> nonzero(trials, 0);
  parallel_for(trials, jobs, [&](int t) {
    Rng rng(derive_seed(seed, t));
    std::vector<QR> tuple;
    for (int l = 0; l < m; ++l) tuple.push_back(real_upper(rng, n));
    QR v = nc_eval_mat(p, tuple, n);
    nonzero[t] = !v.is_zero();
    if (r == 0) return;
    if (r >= n) {
      if (!v.is_zero()) out[t] = failure(tuple, v, kClaimZero);
    } else if (!in_level(v, r - 1)) {
      out[t] = failure(tuple, v, kClaimLevel);
    }
  });
  merge(rep, out);
  int nz = 0;
  for (int x : nonzero) nz += x;
  if (r == 0) {
    rep.notes["case"] = "i";
    rep.notes["nonzero_values"] = nz;
    rep.verdict = "informational";
    return rep;
  }
  rep.notes["case"] = r >= n ? "v" : r == 1 ? "ii" : r == n - 1 ? "iv" : "iii";
  if (r < n) rep.notes["surjectivity"] = surjectivity_probe(p, n, r, seed, 5);
  rep.verdict = rep.failures.empty() ? "pass" : "counterexamples";
  return rep;
}

SuiteReport des_suite(const NCPoly<Rational>& p, int n, int trials, std::uint64_t seed, int jobs) {
  if (n < 2) throw Error(Errc::ShapeTooSmall, "des suite needs n >= 2");
  const int r = ord(p);
  const int m = p.nvars();
  auto seeded = des_seed_tuples(m, n);
  const int total = std::max<int>(trials, static_cast<int>(seeded.size()));
  SuiteReport rep;
  rep.suite = "des";
  rep.seed = seed;
  rep.trials = total;
  rep.notes = Json{{"p", ncpoly_to_json(p)}, {"n", n}, {"ord", r}, {"seeded_tuples", seeded.size()}};
  std::vector<std::optional<Json>> out(total);
  std::vector<int> member(total, 0);
  parallel_for(total, jobs, [&](int t) {
    std::vector<QR> tuple;
    if (t < static_cast<int>(seeded.size())) {
      tuple = seeded[t];
    } else {
      Rng rng(derive_seed(seed, t));
      for (int l = 0; l < m; ++l) tuple.push_back(random_qmat(rng, n));
    }
    QR v = nc_eval_mat(p, tuple, n);
    if (r == 0) {
      member[t] = tri_level_membership(v, 0);
      return;
    }
    if (r >= n) {
      if (!v.is_zero()) out[t] = failure(tuple, v, kClaimZero);
    } else if (!tri_level_membership(v, r - 1)) {
      out[t] = failure(tuple, v, kClaimSimilar);
    }
  });
  merge(rep, out);
  if (r == 0) {
    int k = 0;
    for (int x : member) k += x;
    rep.notes["case"] = "informational";
    rep.notes["level0_members"] = k;
    rep.verdict = "informational";
    return rep;
  }
  rep.notes["case"] = r >= n ? "ii" : "i";
  rep.verdict = rep.failures.empty() ? "pass" : "counterexamples";
  return rep;
}

bool recheck_report(const SuiteReport& r) {
  const NCPoly<Rational> p = ncpoly_from_json<Rational>(r.notes.at("p"));
  const int n = r.notes.at("n").get<int>();
  const int ordp = r.notes.at("ord").get<int>();
  if (ord(p) != ordp) return false;
  for (auto& f : r.failures) {
    auto in = qmats_from_json<Rational>(f.at("inputs"));
    QR v = qmat_from_json<Rational>(f.at("value"));
    if (!(nc_eval_mat(p, in, n) == v)) return false;
    const std::string claim = f.at("claim").get<std::string>();
    bool violated;
    if (claim == kClaimZero)
      violated = !v.is_zero();
    else if (claim == kClaimSimilar)
      violated = !tri_level_membership(v, ordp - 1);
    else if (claim == kClaimLevel)
      violated = !in_level(v, ordp - 1);
    else
      return false;
    if (!violated) return false;
  }
  return true;
}

SuiteReport det_examples_suite() {
  SuiteReport rep;
  rep.suite = "det-examples";
  rep.notes["checks"] = Json::array();
  auto Q = [](long long a, long long b = 1) { return Quat<Rational>(make_rational(a, b)); };
  auto record = [&](const std::string& name, bool ok, const std::vector<QR>& in, const QR& value) {
    rep.notes["checks"].push_back(Json{{"name", name}, {"ok", ok}});
    ++rep.trials;
    if (!ok) rep.failures.push_back(Json{{"inputs", qmats_to_json(in)}, {"value", qmat_to_json(value)}, {"claim", name}});
  };
  const UniPoly<Rational> x2p1({Q(1), Q(0), Q(1)});
  {
    QR A(2, 2);
    A(0, 0) = Quat<Rational>::i();
    QR v = uni_eval_mat(x2p1, A);
    QR e22 = QR::unit(2, 1, 1, Q(1));
    record("x^2+1 at i e11 = e22, det 0, nonzero", v == e22 && dieudonne_det(v) == 0 && !v.is_zero(), {A}, v);
  }
  {
    QR A = QR::unit(3, 0, 2, Q(1)) - QR::unit(3, 2, 0, Q(1));
    QR v = uni_eval_mat(x2p1, A);
    record("x^2+1 at e13 - e31 = e22 (n = 3)", v == QR::unit(3, 1, 1, Q(1)), {A}, v);
  }
  {
    const UniPoly<Rational> x2m1({Q(-1), Q(0), Q(1)});
    QR A = QR::diag({Q(1), Q(2), Q(2)});
    QR v = uni_eval_mat(x2m1, A);
    record("x^2-1 at diag(1,2,2) = diag(0,3,3)", v == QR::diag({Q(0), Q(3), Q(3)}), {A}, v);
    Rng rng(7);
    for (int t = 0; t < 5; ++t) {
      const Rational alpha = t % 2 ? Rational(1) : Rational(-1);
      const Rational beta = rng.rational(9, 4);
      const int n = 2 + t % 3;
      std::vector<Quat<Rational>> d(n, Quat<Rational>(beta));
      d[0] = Quat<Rational>(alpha);
      QR B = QR::diag(d);
      QR w = uni_eval_mat(x2m1, B);
      std::vector<Quat<Rational>> expect(n, Quat<Rational>(beta * beta - 1));
      expect[0] = Quat<Rational>();
      record("x^2-1 at diag(alpha, beta, ..., beta)", w == QR::diag(expect), {B}, w);
    }
  }
  {
    // A = P C P^-1 with C the companion matrix of a real quadratic without real roots, so det p(A) = 0.
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
      Rational b = rng.rational(6, 2), c;
      do c = rng.rational(12, 3);
      while (!(b * b < 4 * c));
      std::vector<Quat<Rational>> pc{Quat<Rational>(c), Quat<Rational>(b), Q(1)};
      UniPoly<Rational> p(pc);
      if (t % 2) p = p * UniPoly<Rational>({Q(2), Q(0), Q(1)});
      QR C{{Q(0), Quat<Rational>(-c)}, {Q(1), Quat<Rational>(-b)}};
      QR P;
      do {
        P = QR(2, 2);
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) P(i, j) = Quat<Rational>(Rational(rng.integer(-4, 4)));
      } while (!is_invertible(P));
      QR A = P * C * mat_inverse(P);
      QR v = uni_eval_mat(p, A);
      record("no real root, det p(A) = 0 implies p(A) = 0", dieudonne_det(v) == 0 && v.is_zero(), {A}, v);
    }
  }
  rep.verdict = rep.failures.empty() ? "pass" : "counterexamples";
  return rep;
}

namespace {

UniPoly<double> random_unipoly(Rng& rng, int deg) {
  std::vector<Quat<double>> c;
  for (int t = 0; t <= deg; ++t) c.push_back(rng.quat<double>(9, 4));
  return UniPoly<double>(std::move(c));
}

// Central coefficients, zero constant term, nonzero abelianization.
NCPoly<double> random_surjective_poly(Rng& rng) {
  for (;;) {
    const int m = static_cast<int>(rng.integer(1, 3));
    NCPoly<double> p(m);
    const int terms = static_cast<int>(rng.integer(1, 4));
    for (int t = 0; t < terms; ++t) {
      Word w;
      const int len = static_cast<int>(rng.integer(1, 3));
      for (int k = 0; k < len; ++k) w.push_back(static_cast<int>(rng.integer(0, m - 1)));
      long long c = rng.integer(-3, 3);
      p.add_term(w, static_cast<double>(c == 0 ? 1 : c));
    }
    if (!abelianize(p).is_zero()) return p;
  }
}

// Sum of words times commutators times words: abelianization 0.
NCPoly<double> random_commutator_poly(Rng& rng) {
  const int m = static_cast<int>(rng.integer(2, 3));
  NCPoly<double> p(m);
  const int terms = static_cast<int>(rng.integer(1, 3));
  for (int t = 0; t < terms; ++t) {
    int a = static_cast<int>(rng.integer(0, m - 1)), b = static_cast<int>(rng.integer(0, m - 1));
    if (a == b) b = (a + 1) % m;
    NCPoly<double> left = NCPoly<double>::scalar(m, static_cast<double>(rng.integer(1, 3)));
    if (rng.integer(0, 1)) left = left * NCPoly<double>::var(m, static_cast<int>(rng.integer(0, m - 1)));
    NCPoly<double> right = NCPoly<double>::scalar(m, 1.0);
    if (rng.integer(0, 1)) right = right * NCPoly<double>::var(m, static_cast<int>(rng.integer(0, m - 1)));
    p += left * commutator(NCPoly<double>::var(m, a), NCPoly<double>::var(m, b)) * right;
  }
  if (p.is_zero()) return commutator(NCPoly<double>::var(m, 0), NCPoly<double>::var(m, 1));
  return p;
}

}  // namespace

SuiteReport closure_suites(int trials, std::uint64_t seed, int jobs) {
  SuiteReport rep;
  rep.suite = "closure";
  rep.seed = seed;
  const int gm = trials, oracle = std::max(1, trials / 2), nowit = 10, probes = 5;
  rep.trials = gm + oracle + nowit;
  std::vector<std::optional<Json>> out(gm + oracle + nowit);
  std::vector<int> distinct(probes, 0);
  parallel_for(gm, jobs, [&](int t) {
    Rng rng(derive_seed(seed, t));
    UniPoly<double> f = random_unipoly(rng, static_cast<int>(rng.integer(1, 5)));
    try {
      if (gordon_motzkin_check(f)) return;
      out[t] = Json{{"inputs", {{"f", unipoly_to_json(f)}}},
                    {"value", rootset_to_json(niven_roots(f))},
                    {"claim", "conjugacy classes of roots <= degree"}};
    } catch (const Error& e) {
      out[t] = Json{{"inputs", {{"f", unipoly_to_json(f)}}}, {"value", e.what()}, {"claim", "root solver"}};
    }
  });
  parallel_for(oracle, jobs, [&](int t) {
    Rng rng(derive_seed(seed, 10000 + t));
    NCPoly<double> p = random_surjective_poly(rng);
    Quat<double> target = rng.quat<double>(9, 4);
    Json in{{"p", ncpoly_to_json(p)}, {"target", quat_to_json(target)}};
    try {
      auto pt = image_oracle(p, target);
      const double res = qabs(p.eval(pt) - target);
      if (res < 1e-8) return;
      Json pj = Json::array();
      for (auto& q : pt) pj.push_back(quat_to_json(q));
      out[gm + t] = Json{{"inputs", in}, {"value", {{"point", pj}, {"residual", res}}}, {"claim", "oracle residual < 1e-8"}};
    } catch (const Error& e) {
      out[gm + t] = Json{{"inputs", in}, {"value", e.what()}, {"claim", "oracle finds a preimage"}};
    }
  });
  parallel_for(nowit, jobs, [&](int t) {
    Rng rng(derive_seed(seed, 20000 + t));
    NCPoly<double> p = random_commutator_poly(rng);
    Json in{{"p", ncpoly_to_json(p)}};
    try {
      image_oracle(p, Quat<double>(1.0));
      out[gm + oracle + t] = Json{{"inputs", in}, {"value", "witness returned"}, {"claim", "NoWitness"}};
    } catch (const Error& e) {
      if (e.code() != Errc::NoWitness) out[gm + oracle + t] = Json{{"inputs", in}, {"value", e.what()}, {"claim", "NoWitness"}};
    }
  });
  parallel_for(probes, jobs, [&](int t) {
    Rng rng(derive_seed(seed, 30000 + t));
    distinct[t] = image_infinitude_probe(random_unipoly(rng, static_cast<int>(rng.integer(1, 5))), 50, derive_seed(seed, t)).distinct;
  });
  merge(rep, out);
  rep.notes = Json{{"gordon_motzkin", gm}, {"oracle_round_trips", oracle}, {"no_witness", nowit}, {"infinitude_distinct_of_50", distinct}};
  rep.verdict = rep.failures.empty() ? "pass" : "counterexamples";
  return rep;
}

#define SKEW_INSTANTIATE(S)                                              \
  template class SymMat<S>;                                              \
  template SymMat<S> generic_triangular_eval(const NCPoly<S>&, int);     \
  template int ord(const NCPoly<S>&);

SKEW_INSTANTIATE(Rational)
SKEW_INSTANTIATE(double)

}  // namespace skew
