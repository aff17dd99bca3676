#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "skew/cli.hpp"
#include "skew/json_io.hpp"

using namespace skew;

namespace {

struct Result {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kX2p1 = R"({"coeffs":[[1,0,0,0],[0,0,0,0],[1,0,0,0]]})";
const char* kComm = R"({"m":2,"terms":[{"c":1,"w":[{"x":1},{"x":2}]},{"c":-1,"w":[{"x":2},{"x":1}]}]})";
const char* kAnti = R"({"m":2,"terms":[{"c":1,"w":[{"x":1},{"x":2}]},{"c":1,"w":[{"x":2},{"x":1}]}]})";

std::string mat_json(const QMat<Rational>& A) { return qmat_to_json(A).dump(); }

QMat<Rational> sample() {
  QMat<Rational> A(2, 2);
  A(0, 0) = Quat<Rational>(Rational(1), Rational(2), Rational(0), Rational(0));
  A(0, 1) = Quat<Rational>::j();
  A(1, 0) = Quat<Rational>(Rational(0), Rational(0), Rational(0), Rational(3));
  A(1, 1) = Quat<Rational>(Rational(-1), Rational(-2), Rational(0), Rational(0));
  return A;
}

void expect_verifies(const Json& cert) {
  auto r = cli({"verify", "cert", cert.dump()});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(r.json(), Json::parse(R"({"verdict":"pass"})"));
}

}  // namespace

TEST(Cli, RootsOfXSquaredPlusOne) {
  auto r = cli({"roots", kX2p1});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["spherical"], Json::parse(R"([{"s":"0/1","n":"1/1"}])"));
  auto f = cli({"--backend", "float", "roots", kX2p1});
  ASSERT_EQ(f.code, 0) << f.err;
  EXPECT_EQ(f.json()["spherical"].size(), 1u);
}

TEST(Cli, VerifyIdempotentCommutatorCertificate) {
  auto r = cli({"decompose", "idem-comm", mat_json(QMat<Rational>::unit(2, 0, 1, Quat<Rational>(Rational(1))))});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["kind"], "IDEM_COMM");
  expect_verifies(r.json());
}

TEST(Cli, TamperedCertificateFails) {
  auto r = cli({"decompose", "idem-comm", mat_json(QMat<Rational>::unit(2, 0, 1, Quat<Rational>(Rational(1))))});
  Json c = r.json();
  c["target"] = qmat_to_json(QMat<Rational>::unit(2, 1, 0, Quat<Rational>(Rational(1))));
  auto v = cli({"verify", "cert", c.dump()});
  EXPECT_EQ(v.code, 1);
  EXPECT_EQ(v.json()["verdict"], "fail");
  c["idem"] = Json::array();
  v = cli({"verify", "cert", c.dump()});
  EXPECT_EQ(v.code, 1);
  EXPECT_EQ(v.json()["verdict"], "fail");
}

TEST(Cli, DesSuiteReportsSeededCounterexample) {
  auto r = cli({"suite", "des", "--n", "2", "--trials", "100", "--seed", "1"});
  EXPECT_EQ(r.code, 1);
  Json j = r.json();
  EXPECT_EQ(j["verdict"], "counterexamples");
  EXPECT_EQ(j["seed"], 1);
  auto in = qmats_from_json<Rational>(j["failures"][0]["inputs"]);
  EXPECT_EQ(in[0], QMat<Rational>::unit(2, 0, 1, Quat<Rational>(Rational(1))));
  EXPECT_EQ(in[1], QMat<Rational>::unit(2, 1, 0, Quat<Rational>(Rational(1))));
}

TEST(Cli, OtherSuites) {
  EXPECT_EQ(cli({"suite", "det-examples"}).code, 0);
  EXPECT_EQ(cli({"suite", "closure", "--trials", "20", "--jobs", "2"}).code, 0);
  auto pp = cli({"suite", "panja-prasad", "--n", "3", "--trials", "30", "--poly", kComm});
  EXPECT_EQ(pp.code, 0) << pp.out;
  EXPECT_EQ(pp.json()["verdict"], "pass");
}

TEST(Cli, IdenticalInvocationsAreByteIdentical) {
  std::vector<std::string> a{"suite", "des", "--n", "2", "--trials", "20", "--seed", "5"};
  EXPECT_EQ(cli(a).out, cli(a).out);
  std::vector<std::string> b{"decompose", "idem-comm", "--mode", "sum", "--seed", "3", mat_json(sample())};
  EXPECT_EQ(cli(b).out, cli(b).out);
}

TEST(Cli, EveryDecompositionRoundTripsThroughVerify) {
  const QMat<Rational> A = sample();
  for (const char* mode : {"sum", "diff"}) {
    auto r = cli({"decompose", "idem-comm", "--mode", mode, mat_json(A)});
    ASSERT_EQ(r.code, 0) << r.out << r.err;
    expect_verifies(r.json());
  }
  auto prod = cli({"decompose", "idem-comm", "--mode", "product", mat_json(QMat<Rational>::unit(2, 0, 1, Quat<Rational>(Rational(1))))});
  ASSERT_EQ(prod.code, 0) << prod.out;
  expect_verifies(prod.json());
  auto d2 = cli({"factor", "diag2", mat_json(A)});
  ASSERT_EQ(d2.code, 0) << d2.out;
  expect_verifies(d2.json());
  auto sl = cli({"decompose", "sl-diff", mat_json(A)});
  ASSERT_EQ(sl.code, 0) << sl.out;
  expect_verifies(sl.json());
  Json the_in{{"A", qmat_to_json(A)}, {"p", Json::parse(kAnti)}};
  auto th = cli({"decompose", "the", the_in.dump()});
  ASSERT_EQ(th.code, 0) << th.out;
  EXPECT_TRUE(th.json().contains("p"));
  expect_verifies(th.json());
  Json pp_in{{"A", qmat_to_json(A)}, {"p", Json::parse(kAnti)}};
  auto pp = cli({"factor", "p-product", pp_in.dump()});
  ASSERT_EQ(pp.code, 0) << pp.out;
  expect_verifies(pp.json()["certificate"]);
}

TEST(Cli, SmallCommands) {
  auto o = cli({"ord", kComm});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(o.json()["ord"], 1);
  auto pre = cli({"--backend", "float", "preimage", R"({"f":{"coeffs":[[0,0,0,0],[0,0,0,0],[1,0,0,0]]},"c":[0,1,0,0]})"});
  ASSERT_EQ(pre.code, 0) << pre.err;
  EXPECT_LT(pre.json()["residual"].get<double>(), 1e-8);
  auto rf = cli({"realify", R"({"m":1,"terms":[{"c":1,"w":[{"x":1},{"x":1}]}]})"});
  ASSERT_EQ(rf.code, 0);
  EXPECT_EQ(rf.json()["components"].size(), 4u);
  auto map = cli({"realify", "--jacobian", R"([{"m":1,"terms":[{"c":1,"w":[{"x":1},{"x":1}]}]}])"});
  ASSERT_EQ(map.code, 0);
  EXPECT_EQ(map.json()["jacobian"].size(), 4u);
  auto io = cli({"--backend", "float", "image-oracle", Json{{"p", Json::parse(kAnti)}, {"target", {0, 1, 0, 0}}}.dump()});
  ASSERT_EQ(io.code, 0) << io.out;
}

TEST(Cli, MathematicalErrorsExitOne) {
  auto r = cli({"image-oracle", Json{{"p", Json::parse(kComm)}, {"target", {"1/1", "0/1", "0/1", "0/1"}}}.dump()});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.json()["error"], "NoWitness");
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"roots", "{not json"}).code, 2);
  EXPECT_EQ(cli({"--backend", "complex", "roots", kX2p1}).code, 2);
  EXPECT_EQ(cli({"roots", R"({"coeffs":[[0.5,0,0,0]]})"}).code, 2);
  EXPECT_EQ(cli({"suite", "nope"}).code, 2);
  EXPECT_EQ(cli({"roots", "/nonexistent/file.json"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, SchemaIsJson) {
  auto r = cli({"--schema"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.json().contains("$defs"));
}

TEST(Cli, SeedFromEnvironmentAndOutputFile) {
  setenv("SKEW_SEED", "17", 1);
  auto r = cli({"suite", "des", "--trials", "3"});
  unsetenv("SKEW_SEED");
  EXPECT_EQ(r.json()["seed"], 17);
  const std::string path = testing::TempDir() + "skew_cli_out.json";
  auto w = cli({"--output", path, "ord", kComm});
  EXPECT_EQ(w.code, 0);
  EXPECT_TRUE(w.out.empty());
  std::ifstream f(path);
  Json j = Json::parse(f);
  EXPECT_EQ(j["ord"], 1);
  std::remove(path.c_str());
}
