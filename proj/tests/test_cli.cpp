#include <cstdio>
#include <fstream>
#include <sstream>

#include "app.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

std::string data(const std::string& name) { return std::string(HOCHBV_DATA_DIR) + "/" + name; }

struct Run {
  int code;
  std::string out, err;
  bool has(const std::string& s) const { return out.find(s) != std::string::npos; }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = hochbv::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("describe") {
  auto r = run({"describe", "--input", data("loop_aa.quiver")});
  CHECK(r.code == 0);
  CHECK(r.has("dim 2, basis e, a; associative: pass"));

  auto bad = run({"describe", "--input", data("bad_relation.quiver")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("'z'") != std::string::npos);
  CHECK(bad.err.find(":3:") != std::string::npos);

  auto inf = run({"describe", "--input", data("free_loop.quiver")});
  CHECK(inf.code == 2);
  CHECK(inf.err.find("unbounded") != std::string::npos);

  CHECK(run({"describe", "--input", data("nope.alg")}).code == 2);
  CHECK(run({"describe"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cohomology dimensions") {
  auto dn = json_of(run({"cohomology", "--input", data("dual_numbers.alg"), "--json"}));
  CHECK(dn["cohomology"] == nlohmann::json({2, 1, 1, 1}));

  auto loop = json_of(run({"cohomology", "--input", data("loop_aa.quiver"), "--json", "--homology"}));
  CHECK(loop["cohomology"] == nlohmann::json({2, 1, 1, 1}));
  CHECK(loop["homology"] == nlohmann::json({2, 1, 1, 1}));

  auto q = json_of(run({"cohomology", "--input", data("rationals.alg"), "--coefficients", "dual", "--json"}));
  CHECK(q["cohomology"] == nlohmann::json({1, 0, 0, 0}));

  auto a2 = run({"cohomology", "--input", data("a2.quiver"), "--coefficients", "dual",
                 "--max-degree", "2"});
  CHECK(a2.code == 0);
  CHECK(a2.has("no symmetric Frobenius form"));

  auto f5 = json_of(run({"cohomology", "--input", data("dual_numbers.alg"), "--field", "prime 2",
                         "--json", "--max-degree", "2"}));
  CHECK(f5["field"] == "F_2");
  CHECK(f5["cohomology"] == nlohmann::json({2, 2, 2}));

  auto tw = run({"cohomology", "--input", data("a2.quiver"), "--coefficients", "twisted"});
  CHECK(tw.code == 2);
  auto cap = run({"cohomology", "--input", data("quantum_exterior_q2.alg"), "--cap", "10"});
  CHECK(cap.code == 2);
}

TEST_CASE("verify exit codes") {
  auto loop = run({"verify", "--input", data("loop_aa.quiver"), "--psi", "monomial",
                   "--suite", "structural"});
  CHECK(loop.code == 1);
  CHECK(loop.has("FAIL  structural map: balanced"));
  CHECK(loop.has("f=e^∨; a=a; g=a^∨; psi(f.a, g)=0; psi(f, a.g)=e^∨"));

  auto a2 = run({"verify", "--input", data("a2.quiver"), "--psi", "monomial", "--suite", "structural"});
  CHECK(a2.code == 1);
  CHECK(a2.has("downstream identities skipped"));

  auto dn = run({"verify", "--input", data("dual_numbers.alg"), "--psi", "symmetric"});
  CHECK(dn.code == 0);
  CHECK(dn.has("status: pass"));

  auto custom = run({"verify", "--input", data("dual_numbers.alg"), "--psi", "custom", "--psi-file",
                     data("dual_numbers_symmetric.psi"), "--bracket-sign", "both"});
  CHECK(custom.code == 0);

  // no unital structural map exists on A* for this algebra, see the notes
  auto qe = run({"verify", "--input", data("quantum_exterior_q2.alg"), "--psi", "frobenius"});
  CHECK(qe.code == 1);
  CHECK(qe.has("FAIL  structural map: unital"));
}

TEST_CASE("conflicting flags") {
  CHECK(run({"verify", "--input", data("a2.quiver"), "--psi", "symmetric"}).code == 2);
  CHECK(run({"verify", "--input", data("dual_numbers.alg"), "--psi", "monomial"}).code == 2);
  CHECK(run({"verify", "--input", data("dual_numbers.alg"), "--psi", "custom"}).code == 2);
  CHECK(run({"verify", "--input", data("dual_numbers.alg"), "--suite", "structural"}).code == 2);
  CHECK(run({"verify", "--input", data("dual_numbers.alg"), "--bracket-sign", "odd"}).code == 2);
  CHECK(run({"verify", "--input", data("a2.quiver"), "--suite", "frobenius"}).code == 2);
  CHECK(run({"verify", "--input", data("dual_numbers.alg"), "--suite", "pairing,whatever"}).code == 2);
}

TEST_CASE("reports are deterministic and written to --out") {
  std::string path = "cli_test_report.json";
  std::vector<std::string> args{"verify", "--input", data("dual_numbers.alg"), "--psi", "symmetric",
                                "--out", path, "--json"};
  auto first = run(args);
  auto second = run(args);
  CHECK(first.out == second.out);
  std::ifstream f(path);
  std::stringstream file;
  file << f.rdbuf();
  CHECK(file.str() == first.out);
  auto doc = json_of(first);
  CHECK(doc["command"] == "verify");
  CHECK(doc["status"] == "pass");
  CHECK(doc["reports"].size() >= 3);
  std::remove(path.c_str());
}
