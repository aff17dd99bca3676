#include "skew/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "skew/harness.hpp"

namespace skew {

namespace {

struct Options {
  std::string backend = "exact";
  std::uint64_t seed = 0;
  double tol = 1e-8;
  std::string output;
  int jobs = 1;
};

// Outcome of one command: JSON body plus exit status.
struct Outcome {
  Json body;
  int code = 0;
};

bool is_usage_error(Errc c) {
  return c == Errc::Format || c == Errc::BackendMismatch || c == Errc::ArityMismatch || c == Errc::ShapeMismatch;
}

Json read_input(const std::string& src) {
  std::string text;
  if (src.empty() || src == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else if (src.front() == '{' || src.front() == '[') {
    text = src;
  } else {
    std::ifstream f(src);
    if (!f) throw Error(Errc::Format, "cannot read '" + src + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::Format, std::string("invalid JSON: ") + e.what());
  }
}

// {"A": mat, ...} or a bare matrix.
const Json& matrix_arg(const Json& in) {
  if (in.is_object() && in.contains("A")) return in["A"];
  return in;
}

const Json& need(const Json& in, const char* key) {
  if (!in.is_object() || !in.contains(key)) throw Error(Errc::Format, std::string("input needs '") + key + "'");
  return in[key];
}

template <class S>
Json realify_cmd(const Json& in, bool with_jacobian) {
  if (in.is_object() && in.contains("terms")) {
    auto p = ncpoly_from_json<S>(in);
    Json comps = Json::array();
    for (auto& c : realify_poly(p)) comps.push_back(cpoly_to_json(c));
    return Json{{"nvars", 4 * p.nvars()}, {"components", comps}};
  }
  const Json& list = in.is_object() ? need(in, "polys") : in;
  if (!list.is_array()) throw Error(Errc::Format, "realify expects an NCPoly, an array of NCPolys or {\"polys\": [...]}");
  std::vector<NCPoly<S>> f;
  for (auto& p : list) f.push_back(ncpoly_from_json<S>(p));
  auto map = realify_map(f);
  Json out = realmap_to_json(map);
  if (with_jacobian) {
    Json J = Json::array();
    for (auto& row : jacobian(map)) {
      Json r = Json::array();
      for (auto& c : row) r.push_back(cpoly_to_json(c));
      J.push_back(r);
    }
    out["jacobian"] = J;
  }
  return out;
}

template <class S>
double residual(const Quat<S>& q) {
  return qabs(q);
}

template <class S>
Outcome preimage_cmd(const Json& in, const Options& o) {
  auto f = unipoly_from_json<S>(need(in, "f"));
  auto c = quat_from_json<S>(need(in, "c"));
  Quat<S> b = preimage(f, c);
  const double res = residual(f.eval_right(b) - c);
  return {Json{{"b", quat_to_json(b)}, {"residual", res}}, res <= o.tol ? 0 : 1};
}

template <class S>
Outcome oracle_cmd(const Json& in, const Options& o) {
  auto p = ncpoly_from_json<S>(need(in, "p"));
  auto target = quat_from_json<S>(need(in, "target"));
  auto pt = image_oracle(p, target);
  Json pts = Json::array();
  for (auto& q : pt) pts.push_back(quat_to_json(q));
  Quat<S> v = p.eval(pt);
  const double res = residual(v - target);
  return {Json{{"point", pts}, {"value", quat_to_json(v)}, {"residual", res}}, res <= o.tol ? 0 : 1};
}

template <class S>
Certificate<S> diag_envelope(const DiagProductCert<S>& d) {
  Certificate<S> c;
  c.kind = CertKind::DIAG_PRODUCT;
  c.target = d.product;
  c.mats = {d.D1, d.D2, d.W1, d.W2};
  return c;
}

template <class S>
Outcome with_verdict(const Certificate<S>& c, const PolyArg<S>* p = nullptr) {
  Verdict v = verify_certificate(c, p);
  Json j = cert_to_json(c, p);
  if (!v.ok) return {Json{{"certificate", j}, {"verdict", "fail"}, {"violation", v.violation}}, 1};
  return {j, 0};
}

template <class S>
Outcome factor_cmd(const std::string& which, const Json& in, const Options& o) {
  if (which == "diag2") return with_verdict(diag_envelope(two_diagonalizable_product(qmat_from_json<S>(matrix_arg(in)), o.seed)));
  auto A = qmat_from_json<Rational>(need(in, "A"));
  auto p = poly_arg_from_json<S>(need(in, "p"));
  auto r = p_image_matrix_product(A, p, o.seed);
  const int n = A.rows();
  QMat<S> prod = eval_poly_arg(p, r.first, n) * eval_poly_arg(p, r.second, n);
  const double res = QMat<S>(prod - to_backend<S>(A)).max_abs();
  Certificate<Rational> cert = diag_envelope(r.cert);
  const bool ok = verify_certificate(cert).ok && (is_exact_v<S> ? res == 0 : res <= o.tol);
  Json j{{"certificate", cert_to_json(cert)},
         {"p", poly_arg_to_json(p)},
         {"first", qmats_to_json(r.first)},
         {"second", qmats_to_json(r.second)},
         {"residual", res}};
  return {j, ok ? 0 : 1};
}

template <class S>
Outcome decompose_cmd(const std::string& which, const std::string& mode, const Json& in, const Options& o) {
  QMat<S> A = qmat_from_json<S>(matrix_arg(in));
  if (which == "sl-diff") {
    auto d = sl_difference(A);
    Certificate<S> c;
    c.kind = CertKind::SL_DIFF;
    c.target = A;
    c.mats = {d.B, d.C};
    return with_verdict(c);
  }
  if (which == "idem-comm") {
    std::string m = mode;
    if (m == "auto") m = is_nilpotent(A) ? "single" : "sum";
    if (m == "single") {
      Certificate<S> c;
      c.kind = CertKind::IDEM_COMM;
      c.target = A;
      c.idem.push_back(nilpotent_idem_commutator(A));
      return with_verdict(c);
    }
    if (m == "sum" || m == "diff")
      return with_verdict(tracezero_two_idem_commutators(A, m == "sum" ? TwoMode::SUM : TwoMode::DIFF, o.seed));
    if (m == "product") return with_verdict(product_two_idem_commutators(A, o.seed));
    throw Error(Errc::Format, "unknown mode '" + mode + "'");
  }
  std::optional<PolyArg<S>> p;
  if (in.is_object() && in.contains("p")) p = poly_arg_from_json<S>(in["p"]);
  const PolyArg<S>* pp = p ? &*p : nullptr;
  auto r = theoremThe_try(A, pp);
  if (!r.complete)
    return {Json{{"error", errc_name(Errc::DecomposerIncomplete)}, {"missing", r.missing}, {"partial", cert_to_json(r.cert, pp)}}, 1};
  return with_verdict(r.cert, pp);
}

template <class S>
Outcome verify_cmd(const Json& in) {
  auto c = cert_from_json<S>(in);
  auto p = cert_poly_from_json<S>(in);
  Verdict v;
  try {
    v = verify_certificate(c, p ? &*p : nullptr);
  } catch (const Error& e) {
    if (e.code() != Errc::MalformedCertificate) throw;
    v = {false, e.what()};
  }
  if (v.ok) return {Json{{"verdict", "pass"}}, 0};
  return {Json{{"verdict", "fail"}, {"violation", v.violation}}, 1};
}

template <class S>
Outcome dispatch(const std::string& cmd, const std::string& sub, const std::string& mode, bool jacobian,
                 const Json& in, const Options& o) {
  if (cmd == "realify") return {realify_cmd<S>(in, jacobian), 0};
  if (cmd == "roots") return {rootset_to_json(niven_roots(unipoly_from_json<S>(in))), 0};
  if (cmd == "preimage") return preimage_cmd<S>(in, o);
  if (cmd == "image-oracle") return oracle_cmd<S>(in, o);
  if (cmd == "ord") return {Json{{"ord", ord(ncpoly_from_json<S>(in))}}, 0};
  if (cmd == "factor") return factor_cmd<S>(sub, in, o);
  if (cmd == "decompose") return decompose_cmd<S>(sub, mode, in, o);
  if (cmd == "verify") return verify_cmd<S>(in);
  throw Error(Errc::Format, "unknown command");
}

Outcome suite_cmd(const std::string& name, const std::string& poly, int n, int trials, const Options& o) {
  NCPoly<Rational> p = commutator(NCPoly<Rational>::var(2, 0), NCPoly<Rational>::var(2, 1));
  if (!poly.empty()) p = ncpoly_from_json<Rational>(read_input(poly));
  SuiteReport r;
  if (name == "des")
    r = des_suite(p, n, trials, o.seed, o.jobs);
  else if (name == "panja-prasad")
    r = panja_prasad_suite(p, n, trials, o.seed, o.jobs);
  else if (name == "det-examples")
    r = det_examples_suite();
  else if (name == "closure")
    r = closure_suites(trials, o.seed, o.jobs);
  else
    throw Error(Errc::Format, "unknown suite '" + name + "' (des, panja-prasad, det-examples, closure)");
  return {report_to_json(r), report_exit_code(r)};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  if (const char* env = std::getenv("SKEW_SEED")) {
    try {
      o.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "SKEW_SEED must be a nonnegative integer\n";
      return 2;
    }
  }
  CLI::App app{"Exact and numeric algebra over the quaternions with JSON input and output", "skew"};
  app.require_subcommand(0, 1);
  bool schema = false;
  app.add_flag("--schema", schema, "Print the JSON schemas and exit");
  app.add_option("--backend", o.backend, "Scalar backend")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--seed", o.seed, "Seed (default 0, or SKEW_SEED)");
  app.add_option("--tol", o.tol, "Residual tolerance for float checks");
  app.add_option("--output,-o", o.output, "Write JSON here instead of standard output");
  app.add_option("--jobs", o.jobs, "Worker threads for suite trials")->check(CLI::PositiveNumber);

  std::string input, sub, mode = "auto", poly, suite_name;
  bool jacobian = false;
  int n = 2, trials = 100;
  auto leaf = [&](CLI::App* c) {
    c->add_option("input", input, "Input JSON: a file, inline JSON, or standard input when omitted");
    c->fallthrough();
  };
  auto* realify = app.add_subcommand("realify", "Real polynomial map of an NCPoly or a map H^m -> H^m");
  leaf(realify);
  realify->add_flag("--jacobian", jacobian, "Also emit the Jacobian");
  leaf(app.add_subcommand("roots", "Right roots of a UniPoly"));
  leaf(app.add_subcommand("preimage", "b with f(b) = c for {\"f\", \"c\"}"));
  leaf(app.add_subcommand("image-oracle", "Point with p(point) = target for {\"p\", \"target\"}"));
  leaf(app.add_subcommand("ord", "Order of a central NCPoly"));
  auto* factor = app.add_subcommand("factor", "Matrix factorizations");
  factor->require_subcommand(1);
  factor->fallthrough();
  leaf(factor->add_subcommand("diag2", "A as a product of two diagonalizable matrices"));
  leaf(factor->add_subcommand("p-product", "A = p(first) p(second) for {\"A\", \"p\"}"));
  auto* decompose = app.add_subcommand("decompose", "Certified matrix decompositions");
  decompose->require_subcommand(1);
  decompose->fallthrough();
  leaf(decompose->add_subcommand("sl-diff", "A = B - C with B, C in SL_n"));
  auto* idem = decompose->add_subcommand("idem-comm", "Idempotent commutator decompositions");
  leaf(idem);
  idem->add_option("--mode", mode, "auto, single, sum, diff or product")
      ->check(CLI::IsMember({"auto", "single", "sum", "diff", "product"}));
  leaf(decompose->add_subcommand("the", "A = B - C with B, C products of two multiplicative commutators"));
  auto* verify = app.add_subcommand("verify", "Verification");
  verify->require_subcommand(1);
  verify->fallthrough();
  leaf(verify->add_subcommand("cert", "Check a certificate"));
  auto* suite = app.add_subcommand("suite", "Seeded empirical suites");
  suite->add_option("name", suite_name, "des, panja-prasad, det-examples or closure")->required();
  suite->add_option("--n", n, "Matrix size")->check(CLI::PositiveNumber);
  suite->add_option("--trials", trials, "Trial count")->check(CLI::NonNegativeNumber);
  suite->add_option("--poly", poly, "NCPoly JSON (file or inline); default [X1,X2]");
  suite->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }
  if (schema) {
    out << json_schema_text();
    return 0;
  }
  auto subs = app.get_subcommands();
  if (subs.empty()) {
    err << app.help();
    return 2;
  }
  const std::string cmd = subs[0]->get_name();
  if (!subs[0]->get_subcommands().empty()) sub = subs[0]->get_subcommands()[0]->get_name();

  Outcome res;
  try {
    if (cmd == "suite") {
      res = suite_cmd(suite_name, poly, n, trials, o);
    } else {
      Json in = read_input(input);
      Backend b = o.backend == "float" ? Backend::Float : Backend::Exact;
      if (cmd == "verify" && in.is_object() && in.contains("backend")) b = backend_of(in);
      res = b == Backend::Exact ? dispatch<Rational>(cmd, sub, mode, jacobian, in, o)
                                : dispatch<double>(cmd, sub, mode, jacobian, in, o);
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    if (is_usage_error(e.code())) return 2;
    res = {Json{{"error", errc_name(e.code())}, {"message", e.what()}}, 1};
  }
  const std::string text = res.body.dump(2) + "\n";
  if (o.output.empty()) {
    out << text;
  } else {
    std::ofstream f(o.output);
    if (!f) {
      err << "cannot write '" << o.output << "'\n";
      return 2;
    }
    f << text;
  }
  return res.code;
}

}  // namespace skew
