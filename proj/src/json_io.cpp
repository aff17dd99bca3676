#include "skew/json_io.hpp"

#include <cmath>

namespace skew {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::Format, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object with '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing '") + key + "'");
  return *it;
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) bad(std::string("'") + key + "' must be an array");
  return a;
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) bad(std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace

template <>
Json scalar_to_json<Rational>(const Rational& x) {
  return rational_to_string(x);
}

template <>
Json scalar_to_json<double>(const double& x) {
  if (!std::isfinite(x)) bad("non-finite scalar");
  return x;
}

template <>
Rational scalar_from_json<Rational>(const Json& j) {
  if (j.is_string()) {
    try {
      return rational_from_string(j.get<std::string>());
    } catch (const Error& e) {
      if (e.code() == Errc::DivisionByZero) bad("zero denominator");
      throw;
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) throw Error(Errc::BackendMismatch, "non-integer JSON number under the exact backend");
  bad("expected a scalar");
}

template <>
double scalar_from_json<double>(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) throw Error(Errc::BackendMismatch, "rational string under the float backend");
  bad("expected a scalar");
}

template <class S>
Json quat_to_json(const Quat<S>& q) {
  return Json::array({scalar_to_json<S>(q.a), scalar_to_json<S>(q.b), scalar_to_json<S>(q.c), scalar_to_json<S>(q.d)});
}

template <class S>
Quat<S> quat_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4) bad("quaternion must be [a, b, c, d]");
  return Quat<S>(scalar_from_json<S>(j[0]), scalar_from_json<S>(j[1]), scalar_from_json<S>(j[2]),
                 scalar_from_json<S>(j[3]));
}

template <class S>
Json qmat_to_json(const QMat<S>& A) {
  Json rows = Json::array();
  for (int i = 0; i < A.rows(); ++i) {
    Json r = Json::array();
    for (int j = 0; j < A.cols(); ++j) r.push_back(quat_to_json(A(i, j)));
    rows.push_back(std::move(r));
  }
  return Json{{"n", A.rows()}, {"m", A.cols()}, {"e", std::move(rows)}};
}

template <class S>
QMat<S> qmat_from_json(const Json& j) {
  const int n = int_field(j, "n"), m = int_field(j, "m");
  if (n < 0 || m < 0) bad("negative matrix shape");
  const Json& e = array_field(j, "e");
  if (static_cast<int>(e.size()) != n) bad("row count differs from n");
  QMat<S> A(n, m);
  for (int i = 0; i < n; ++i) {
    if (!e[i].is_array() || static_cast<int>(e[i].size()) != m) bad("row length differs from m");
    for (int k = 0; k < m; ++k) A(i, k) = quat_from_json<S>(e[i][k]);
  }
  return A;
}

template <class S>
Json qmats_to_json(const std::vector<QMat<S>>& v) {
  Json a = Json::array();
  for (auto& M : v) a.push_back(qmat_to_json(M));
  return a;
}

template <class S>
std::vector<QMat<S>> qmats_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array of matrices");
  std::vector<QMat<S>> v;
  for (auto& x : j) v.push_back(qmat_from_json<S>(x));
  return v;
}

template <class S>
Json cpoly_to_json(const CPoly<S>& p) {
  Json terms = Json::array();
  for (auto& [e, c] : p.terms()) terms.push_back(Json{{"e", e}, {"c", scalar_to_json<S>(c)}});
  return Json{{"nvars", p.nvars()}, {"terms", std::move(terms)}};
}

template <class S>
CPoly<S> cpoly_from_json(const Json& j) {
  const int n = int_field(j, "nvars");
  if (n < 0) bad("negative variable count");
  CPoly<S> p(n);
  for (auto& t : array_field(j, "terms")) {
    const Json& e = array_field(t, "e");
    std::vector<int> ex;
    for (auto& x : e) {
      if (!x.is_number_integer() || x.get<int>() < 0) bad("exponents must be nonnegative integers");
      ex.push_back(x.get<int>());
    }
    if (static_cast<int>(ex.size()) != n) bad("exponent vector length differs from nvars");
    p.add_term(ex, scalar_from_json<S>(field(t, "c")));
  }
  return p;
}

template <class S>
Json ncpoly_to_json(const NCPoly<S>& p) {
  Json terms = Json::array();
  for (auto& [w, c] : p.terms()) {
    Json word = Json::array();
    for (Token t : w) {
      if (is_unit(t))
        word.push_back(Json{{"u", t == kUnitI ? "i" : t == kUnitJ ? "j" : "k"}});
      else
        word.push_back(Json{{"x", t + 1}});
    }
    terms.push_back(Json{{"c", scalar_to_json<S>(c)}, {"w", std::move(word)}});
  }
  return Json{{"m", p.nvars()}, {"terms", std::move(terms)}};
}

template <class S>
NCPoly<S> ncpoly_from_json(const Json& j) {
  const int m = int_field(j, "m");
  if (m < 0) bad("negative variable count");
  NCPoly<S> p(m);
  for (auto& t : array_field(j, "terms")) {
    Word w;
    for (auto& tok : array_field(t, "w")) {
      if (!tok.is_object() || tok.size() != 1) bad("word token must be {\"x\": l} or {\"u\": unit}");
      if (tok.contains("x")) {
        const Json& x = tok["x"];
        if (!x.is_number_integer() || x.get<int>() < 1 || x.get<int>() > m) bad("variable index out of 1..m");
        w.push_back(x.get<int>() - 1);
      } else if (tok.contains("u")) {
        const Json& u = tok["u"];
        if (!u.is_string()) bad("unit must be \"i\", \"j\" or \"k\"");
        const std::string s = u.get<std::string>();
        if (s == "i")
          w.push_back(kUnitI);
        else if (s == "j")
          w.push_back(kUnitJ);
        else if (s == "k")
          w.push_back(kUnitK);
        else
          bad("unit must be \"i\", \"j\" or \"k\"");
      } else {
        bad("word token must be {\"x\": l} or {\"u\": unit}");
      }
    }
    p.add_term(w, scalar_from_json<S>(field(t, "c")));
  }
  return p;
}

template <class S>
Json unipoly_to_json(const UniPoly<S>& f) {
  Json c = Json::array();
  for (auto& q : f.coeffs()) c.push_back(quat_to_json(q));
  return Json{{"coeffs", std::move(c)}};
}

template <class S>
UniPoly<S> unipoly_from_json(const Json& j) {
  std::vector<Quat<S>> c;
  for (auto& q : array_field(j, "coeffs")) c.push_back(quat_from_json<S>(q));
  return UniPoly<S>(std::move(c));
}

template <class S>
Json poly_arg_to_json(const PolyArg<S>& p) {
  if (auto* nc = std::get_if<NCPoly<S>>(&p)) return ncpoly_to_json(*nc);
  return unipoly_to_json(std::get<UniPoly<S>>(p));
}

template <class S>
PolyArg<S> poly_arg_from_json(const Json& j) {
  if (j.is_object() && j.contains("terms")) {
    NCPoly<S> p = ncpoly_from_json<S>(j);
    if (!is_central_coeffs(p)) throw Error(Errc::NonCentralCoefficients, "matrix evaluation needs central coefficients");
    return p;
  }
  if (j.is_object() && j.contains("coeffs")) {
    UniPoly<S> f = unipoly_from_json<S>(j);
    for (auto& q : f.coeffs())
      if (!is_central(q)) throw Error(Errc::NonCentralCoefficients, "matrix evaluation needs central coefficients");
    return f;
  }
  bad("expected an NCPoly or UniPoly object");
}

template <class S>
Json realmap_to_json(const RealPolyMap<S>& map) {
  Json c = Json::array();
  for (auto& p : map.components) c.push_back(cpoly_to_json(p));
  return Json{{"m", map.m}, {"components", std::move(c)}};
}

template <class S>
RealPolyMap<S> realmap_from_json(const Json& j) {
  RealPolyMap<S> map;
  map.m = int_field(j, "m");
  for (auto& c : array_field(j, "components")) map.components.push_back(cpoly_from_json<S>(c));
  if (static_cast<int>(map.components.size()) != 4 * map.m) bad("a map on H^m has 4m components");
  for (auto& c : map.components)
    if (c.nvars() != 4 * map.m) bad("components must use 4m variables");
  return map;
}

template <class S>
Json rootset_to_json(const RootSet<S>& rs) {
  Json iso = Json::array(), sph = Json::array(), cen = Json::array();
  for (auto& q : rs.isolated) iso.push_back(quat_to_json(q));
  for (auto& c : rs.spherical) sph.push_back(Json{{"s", scalar_to_json<S>(c.s)}, {"n", scalar_to_json<S>(c.n)}});
  for (auto& r : rs.central) cen.push_back(scalar_to_json<S>(r));
  return Json{{"isolated", std::move(iso)}, {"spherical", std::move(sph)}, {"central", std::move(cen)}, {"approx", rs.approx}};
}

template <class S>
RootSet<S> rootset_from_json(const Json& j) {
  RootSet<S> rs;
  for (auto& q : array_field(j, "isolated")) rs.isolated.push_back(quat_from_json<S>(q));
  for (auto& c : array_field(j, "spherical"))
    rs.spherical.push_back({scalar_from_json<S>(field(c, "s")), scalar_from_json<S>(field(c, "n"))});
  for (auto& r : array_field(j, "central")) rs.central.push_back(scalar_from_json<S>(r));
  const Json& a = field(j, "approx");
  if (!a.is_boolean()) bad("'approx' must be a boolean");
  rs.approx = a.get<bool>();
  return rs;
}

template <class S>
Json jordan_to_json(const JordanData<S>& jd) {
  Json blocks = Json::array();
  for (auto& b : jd.blocks)
    blocks.push_back(Json{{"size", b.size}, {"alpha", Json::array({scalar_to_json<S>(b.alpha.re), scalar_to_json<S>(b.alpha.im)})}});
  return Json{{"P", qmat_to_json(jd.P)}, {"blocks", std::move(blocks)}};
}

template <class S>
JordanData<S> jordan_from_json(const Json& j) {
  JordanData<S> jd;
  jd.P = qmat_from_json<S>(field(j, "P"));
  for (auto& b : array_field(j, "blocks")) {
    const Json& a = array_field(b, "alpha");
    if (a.size() != 2) bad("'alpha' must be [a, b]");
    const int size = int_field(b, "size");
    if (size < 1) bad("block size must be positive");
    jd.blocks.push_back({size, Cplx<S>(scalar_from_json<S>(a[0]), scalar_from_json<S>(a[1]))});
  }
  return jd;
}

template <class S>
Json cert_to_json(const Certificate<S>& c, const PolyArg<S>* p) {
  Json idem = Json::array(), comm = Json::array();
  for (auto& x : c.idem) idem.push_back(Json{{"E", qmat_to_json(x.E)}, {"F", qmat_to_json(x.F)}});
  for (auto& x : c.comm)
    comm.push_back(Json{{"G1", qmat_to_json(x.G1)},
                        {"G2", qmat_to_json(x.G2)},
                        {"w1", qmats_to_json(x.w1)},
                        {"w2", qmats_to_json(x.w2)}});
  Json j{{"kind", cert_kind_name(c.kind)},
         {"backend", Scalar<S>::name()},
         {"target", qmat_to_json(c.target)},
         {"idem", std::move(idem)},
         {"comm", std::move(comm)},
         {"mats", qmats_to_json(c.mats)}};
  if (p) j["p"] = poly_arg_to_json(*p);
  return j;
}

template <class S>
Certificate<S> cert_from_json(const Json& j) {
  Certificate<S> c;
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) bad("'kind' must be a string");
  c.kind = parse_cert_kind(kind.get<std::string>());
  if (backend_of(j) != Scalar<S>::backend) throw Error(Errc::BackendMismatch, "certificate backend");
  c.target = qmat_from_json<S>(field(j, "target"));
  auto opt_array = [&](const char* key) -> Json {
    auto it = j.find(key);
    if (it == j.end()) return Json::array();
    if (!it->is_array()) bad(std::string("'") + key + "' must be an array");
    return *it;
  };
  for (auto& x : opt_array("idem")) c.idem.push_back({qmat_from_json<S>(field(x, "E")), qmat_from_json<S>(field(x, "F"))});
  for (auto& x : opt_array("comm")) {
    CommPair<S> cp{qmat_from_json<S>(field(x, "G1")), qmat_from_json<S>(field(x, "G2")), {}, {}};
    if (x.contains("w1")) cp.w1 = qmats_from_json<S>(x["w1"]);
    if (x.contains("w2")) cp.w2 = qmats_from_json<S>(x["w2"]);
    c.comm.push_back(std::move(cp));
  }
  c.mats = qmats_from_json<S>(opt_array("mats"));
  return c;
}

template <class S>
std::optional<PolyArg<S>> cert_poly_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("p")) return std::nullopt;
  return poly_arg_from_json<S>(j["p"]);
}

Backend backend_of(const Json& j) {
  if (!j.is_object() || !j.contains("backend")) return Backend::Exact;
  const Json& b = j["backend"];
  if (b == "exact") return Backend::Exact;
  if (b == "float") return Backend::Float;
  bad("'backend' must be \"exact\" or \"float\"");
}

#define SKEW_INSTANTIATE(S)                                                 \
  template Json quat_to_json(const Quat<S>&);                               \
  template Quat<S> quat_from_json<S>(const Json&);                          \
  template Json qmat_to_json(const QMat<S>&);                               \
  template QMat<S> qmat_from_json<S>(const Json&);                          \
  template Json qmats_to_json(const std::vector<QMat<S>>&);                 \
  template std::vector<QMat<S>> qmats_from_json<S>(const Json&);            \
  template Json cpoly_to_json(const CPoly<S>&);                             \
  template CPoly<S> cpoly_from_json<S>(const Json&);                        \
  template Json ncpoly_to_json(const NCPoly<S>&);                           \
  template NCPoly<S> ncpoly_from_json<S>(const Json&);                      \
  template Json unipoly_to_json(const UniPoly<S>&);                         \
  template UniPoly<S> unipoly_from_json<S>(const Json&);                    \
  template Json poly_arg_to_json(const PolyArg<S>&);                        \
  template PolyArg<S> poly_arg_from_json<S>(const Json&);                   \
  template Json realmap_to_json(const RealPolyMap<S>&);                     \
  template RealPolyMap<S> realmap_from_json<S>(const Json&);                \
  template Json rootset_to_json(const RootSet<S>&);                         \
  template RootSet<S> rootset_from_json<S>(const Json&);                    \
  template Json jordan_to_json(const JordanData<S>&);                       \
  template JordanData<S> jordan_from_json<S>(const Json&);                  \
  template Json cert_to_json(const Certificate<S>&, const PolyArg<S>*);     \
  template Certificate<S> cert_from_json<S>(const Json&);                   \
  template std::optional<PolyArg<S>> cert_poly_from_json<S>(const Json&);

SKEW_INSTANTIATE(Rational)
SKEW_INSTANTIATE(double)

}  // namespace skew
