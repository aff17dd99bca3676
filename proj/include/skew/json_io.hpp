#pragma once

#include <optional>
#include <vector>

#include "json.hpp"
#include "skew/idemcomm.hpp"
#include "skew/realify.hpp"
#include "skew/uniroots.hpp"

namespace skew {

using Json = nlohmann::json;

// Every *_from_json throws Format on malformed input and BackendMismatch when a scalar belongs to the
// other backend (EXACT scalars are "num/den" strings, FLOAT scalars are JSON numbers).

template <class S>
Json scalar_to_json(const S& x);
template <class S>
S scalar_from_json(const Json& j);
template <>
Json scalar_to_json<Rational>(const Rational& x);
template <>
Json scalar_to_json<double>(const double& x);
template <>
Rational scalar_from_json<Rational>(const Json& j);
template <>
double scalar_from_json<double>(const Json& j);

template <class S>
Json quat_to_json(const Quat<S>& q);
template <class S>
Quat<S> quat_from_json(const Json& j);

template <class S>
Json qmat_to_json(const QMat<S>& A);
template <class S>
QMat<S> qmat_from_json(const Json& j);

template <class S>
Json qmats_to_json(const std::vector<QMat<S>>& v);
template <class S>
std::vector<QMat<S>> qmats_from_json(const Json& j);

template <class S>
Json cpoly_to_json(const CPoly<S>& p);
template <class S>
CPoly<S> cpoly_from_json(const Json& j);

// Variable tokens are written 1-based: {"x": 1} is X_1.
template <class S>
Json ncpoly_to_json(const NCPoly<S>& p);
template <class S>
NCPoly<S> ncpoly_from_json(const Json& j);

template <class S>
Json unipoly_to_json(const UniPoly<S>& f);
template <class S>
UniPoly<S> unipoly_from_json(const Json& j);

// NCPoly when the object has "terms", UniPoly when it has "coeffs".
template <class S>
Json poly_arg_to_json(const PolyArg<S>& p);
template <class S>
PolyArg<S> poly_arg_from_json(const Json& j);

template <class S>
Json realmap_to_json(const RealPolyMap<S>& map);
template <class S>
RealPolyMap<S> realmap_from_json(const Json& j);

template <class S>
Json rootset_to_json(const RootSet<S>& rs);
template <class S>
RootSet<S> rootset_from_json(const Json& j);

template <class S>
Json jordan_to_json(const JordanData<S>& jd);
template <class S>
JordanData<S> jordan_from_json(const Json& j);

// {"kind", "backend", "target", "idem", "comm", "mats"} plus "p" when witnesses refer to a polynomial.
template <class S>
Json cert_to_json(const Certificate<S>& c, const PolyArg<S>* p = nullptr);
// Layout errors surface as MalformedCertificate from verify_certificate, not here.
template <class S>
Certificate<S> cert_from_json(const Json& j);
template <class S>
std::optional<PolyArg<S>> cert_poly_from_json(const Json& j);

// Backend named by a document's "backend" field; Exact when absent.
Backend backend_of(const Json& j);

}  // namespace skew
