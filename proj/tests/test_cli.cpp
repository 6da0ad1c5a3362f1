#include <cstdlib>
#include <json.hpp>
#include <sstream>

#include "doctest.h"
#include "gammac/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  json doc;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = gammac::cli::run(args, out, err);
  return {code, json::parse(out.str()), err.str()};
}

}  // namespace

TEST_CASE("documented examples") {
  auto e = run({"expand", "--a", "t^2"});
  CHECK(e.code == 0);
  CHECK(e.doc["command"] == "expand");
  CHECK(e.doc["result"]["value"] == "nu^2 - (2*nu+1)*tau + tau^2");
  CHECK(e.doc["verdict"].is_null());

  auto h = run({"hat", "--a", "(t)^1*(t+1)^1"});
  CHECK(h.code == 0);
  CHECK(h.doc["result"]["value"] == "t");

  auto v = run({"verify-solution", "--p", "t^2-2", "--r", "0", "--tol", "1e-8"});
  CHECK(v.code == 0);
  CHECK(v.doc["verdict"] == "pass");
  CHECK(v.doc["result"]["solutions"].size() == 1);
  CHECK(v.doc["result"]["solutions"][0]["points"].size() == 20);
}

TEST_CASE("envelope keys") {
  auto r = run({"gamma", "--re", "5"});
  CHECK(r.code == 0);
  CHECK(r.doc.contains("command"));
  CHECK(r.doc.contains("inputs"));
  CHECK(r.doc.contains("result"));
  CHECK(r.doc.contains("verdict"));
  CHECK(r.doc["result"]["gamma"][0].get<double>() == doctest::Approx(24.0).epsilon(1e-13));
}

TEST_CASE("exit codes on curated pass and fail fixtures") {
  CHECK(run({"verify-solution", "--p", "t^2-w", "--gen", "w", "--points", "5"}).code == 0);
  CHECK(run({"verify-derivative", "--p", "t", "--points", "5"}).code == 0);
  CHECK(run({"casoratian", "--basis", "(t^3-2)^1", "--points", "5"}).code == 0);
  CHECK(run({"crt", "--mod", "(t)^2*(t-1)^1", "--b", "t^3+4"}).code == 0);
  CHECK(run({"fq-torsion", "--q", "3", "--theta", "1", "--a", "t^2+1"}).code == 0);

  // the residual stays tiny, so an absurd tolerance fails the verdict
  auto tight = run({"verify-solution", "--p", "t^2-2", "--tol", "1e-30", "--points", "3"});
  CHECK(tight.code == 1);
  CHECK(tight.doc["verdict"] == "fail");
  // C_p still kills D y, so the control threshold cannot be met
  CHECK(run({"verify-derivative", "--p", "t", "--control", "1e6", "--points", "3"}).code == 1);
  auto fq = run({"fq-torsion", "--q", "2", "--theta", "1", "--a", "t^4+t+1", "--cap", "4"});
  CHECK(fq.code == 1);
  CHECK(fq.doc["result"]["full_torsion"] == false);
}

TEST_CASE("usage and parse errors exit 2") {
  auto bad = run({"expand", "--a", "t +"});
  CHECK(bad.code == 2);
  CHECK(bad.doc["error"]["offset"] == 3);
  CHECK(run({"expand", "--a", "t", "--bogus"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"expand"}).code == 2);
  CHECK(run({"divmod", "--a", "tau", "--b", "nu", "--side", "middle"}).code == 2);
  CHECK(run({"galois-matrix", "--b", "t", "--mod", "t^2"}).code == 2);
  CHECK(run({"gamma", "--re", "-3"}).code == 2);
  CHECK(run({"fq-torsion", "--q", "4", "--theta", "1", "--a", "t"}).code == 2);
  CHECK(run({"verify-solution", "--p", "t^2-2", "--r", "2"}).code == 2);
  CHECK(run({"expand", "--a", "w*t"}).code == 2);  // w is not in the default tower
  CHECK(run({"expand", "--a", "w*t", "--gen", "w:1:"}).code == 2);
}

TEST_CASE("tower flags") {
  auto r = run({"expand", "--a", "t - w", "--gen", "w"});
  CHECK(r.code == 0);
  CHECK(r.doc["result"]["value"] == "nu - w - tau");
  auto v = run({"casoratian", "--x", "1", "--x", "v", "--gen", "v:-1:1/2"});
  CHECK(v.code == 0);
  CHECK(v.doc["result"]["determinant"] == "-2*v");
  auto a = run({"expand", "--a", "alpha*t", "--scalar-field", "alpha^2+alpha+1", "--gen", "u:alpha:1/3"});
  CHECK(a.code == 0);
}

TEST_CASE("GAMMA_CARLITZ_TOL sets the default tolerance") {
  ::setenv("GAMMA_CARLITZ_TOL", "1e-30", 1);
  CHECK(run({"verify-solution", "--p", "t", "--points", "3"}).code == 1);
  CHECK(run({"verify-solution", "--p", "t", "--points", "3", "--tol", "1e-8"}).code == 0);
  ::setenv("GAMMA_CARLITZ_TOL", "soon", 1);
  CHECK(run({"verify-solution", "--p", "t", "--points", "3"}).code == 2);
  ::unsetenv("GAMMA_CARLITZ_TOL");
  CHECK(run({"verify-solution", "--p", "t", "--points", "3"}).code == 0);
}

TEST_CASE("algebraic subcommands") {
  auto d = run({"divmod", "--a", "tau^2 + nu", "--b", "nu - tau"});
  CHECK(d.code == 0);
  CHECK(d.doc["result"].contains("quotient"));
  auto c = run({"companion", "--a", "t^2-2"});
  CHECK(c.doc["result"]["twist_sign"] == 1);
  CHECK(c.doc["result"]["twist_ratio"] == "nu^2 - 2");
  auto i = run({"torsion-inverse", "--b", "t+1", "--mod", "t^2-2"});
  CHECK(i.doc["result"]["inverse"] == "t - 1");
  auto n = run({"torsion-inverse", "--b", "t", "--mod", "t^3"});
  CHECK(n.doc["result"]["inverse"].is_null());
  CHECK(n.doc["result"]["is_generator"] == false);
  auto g = run({"galois-matrix", "--b", "t", "--mod", "t^2-2"});
  CHECK(g.doc["result"]["matrix"] == json::parse(R"([["0","2"],["1","0"]])"));
}

TEST_CASE("acceptance subcommand") {
  auto r = run({"acceptance", "--only", "3"});
  CHECK(r.code == 0);
  CHECK(r.doc["result"]["criteria"].size() == 1);
  CHECK(run({"acceptance", "--only", "11"}).code == 2);
}

TEST_CASE("pretty output is the same document") {
  std::ostringstream a, b, err;
  gammac::cli::run({"expand", "--a", "t^3"}, a, err);
  gammac::cli::run({"--pretty", "expand", "--a", "t^3"}, b, err);
  CHECK(b.str().find('\n') < b.str().size() - 1);
  CHECK(json::parse(a.str()) == json::parse(b.str()));
}
