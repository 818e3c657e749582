#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cli_runner.hpp"
#include "qstencil/json_io.hpp"

using qstencil::Json;

TEST_CASE("stencil subcommand") {
  const auto r = run_cli("stencil --kind forward -n 3 -q 2");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["nodes"] == Json::array({"0", "1", "2", "4"}));
  CHECK(j["coeffs"] == Json::array({"-3/4", "2", "-3/2", "1/4"}));
  CHECK(qstencil::dump(j) == r.out);

  const Json s = Json::parse(run_cli("stencil --kind symmetric -n 4 -q 2").out);
  CHECK(s["coeffs"] == Json::array({"1", "-4", "6", "-4", "1"}));

  const auto c = run_cli("stencil --kind custom -n 1 --nodes 0,1");
  REQUIRE(c.code == 0);
  CHECK(Json::parse(c.out)["coeffs"] == Json::array({"-1", "1"}));
}

TEST_CASE("stencil usage errors exit 2") {
  CHECK(run_cli("stencil --kind forward -n 3 -q 1").code == 2);
  CHECK(run_cli("stencil --kind forward -n 3 -q -1").code == 2);
  CHECK(run_cli("stencil --kind forward -n 3 -q 0").code == 2);
  CHECK(run_cli("stencil --kind forward -n 3 -q 0.5").code == 2);
  CHECK(run_cli("stencil --kind custom -n 2 --nodes 0,1,1").code == 2);
  CHECK(run_cli("stencil --kind custom -n 2 --nodes 0,1").code == 2);
  CHECK(run_cli("stencil --kind bogus -n 2").code == 2);
  CHECK(run_cli("stencil --output csv --kind forward -n 2 -q 2").code == 2);
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("--help").code == 0);
}

TEST_CASE("verify subcommand") {
  const auto r = run_cli("verify --max-n 8 --q-list 2,3,1/2,-2");
  CHECK(r.code == 0);
  CHECK(r.out.find("closed-form-vs-solver") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(run_cli("verify --max-n 1").code == 0);
  const auto bad = run_cli("verify --max-n 4 --inject-fault");
  CHECK(bad.code == 1);
  CHECK(bad.out.find("closed-form-vs-solver: ") != std::string::npos);
  CHECK(bad.out.find("FAIL (first failure: forward n=1") != std::string::npos);
  CHECK(run_cli("verify --max-n 13").code == 2);
  CHECK(run_cli("verify --max-n 0").code == 2);
  CHECK(run_cli("verify --q-list 2,1").code == 2);
  CHECK(run_cli("verify --q-list 2,x").code == 2);
}

TEST_CASE("verify is deterministic per seed") {
  const auto a = run_cli("verify --max-n 5 --seed 9 --output json");
  const auto b = run_cli("verify --max-n 5 --seed 9 --output json");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(Json::parse(a.out).size() == 10);
}

TEST_CASE("derive subcommand") {
  const auto sine = run_cli("derive --kind forward -n 3 -q 2 --function sin --at 0");
  CHECK(sine.code == 0);
  CHECK(sine.out.rfind("h,quotient,delta\n", 0) == 0);
  CHECK(sine.out.find("# verdict: converged value=-0.99999") != std::string::npos);

  const auto g = run_cli("derive --kind forward -n 3 -q 2 --function signpow3 --at 0");
  CHECK(g.code == 3);
  CHECK(g.out.find("# verdict: oscillating") != std::string::npos);
  CHECK(g.out.find("# two-sided: positive=6 negative=-6") != std::string::npos);

  const auto sym = run_cli("derive --kind symmetric -n 3 -q 3 --function signpow3 --at 0");
  CHECK(sym.code == 0);
  CHECK(sym.out.find("# verdict: converged value=0 ") != std::string::npos);

  const auto js = run_cli("derive --kind forward -n 3 -q 2 --function sin --output json");
  REQUIRE(js.code == 0);
  CHECK(Json::parse(js.out)["verdict"]["kind"] == "converged");
}

TEST_CASE("derive usage errors") {
  CHECK(run_cli("derive --kind forward -n 3 -q 2 --function tan").code == 2);
  CHECK(run_cli("derive --kind forward -n 3 -q 2 --function sin --h0 0").code == 2);
  CHECK(run_cli("derive --kind forward -n 3 -q 2 --function sin --ratio 1.5").code == 2);
  CHECK(run_cli("derive --kind forward -n 3 -q 2 --function sin --steps 40 --ratio 0.1").code == 2);
  CHECK(run_cli("derive --kind forward -n 3 -q 2 --function sin --at 0.5").code == 2);
  CHECK(run_cli("derive --kind forward -n 3 -q 2").code == 2);
}

TEST_CASE("counterexample subcommand") {
  const auto a = run_cli("counterexample --case thm32a");
  REQUIRE(a.code == 0);
  const Json j = Json::parse(a.out);
  CHECK(j["phi_endpoints"] == Json::array({"-54096", "489804"}));
  CHECK(j["checks"]["nth_unbounded"] == true);
  CHECK(qstencil::dump(qstencil::to_json(qstencil::report_from_json(j))) == a.out);

  const auto p = run_cli("counterexample --case prop25");
  REQUIRE(p.code == 0);
  CHECK(Json::parse(p.out)["exponent"] == 2.0);

  const auto s = run_cli("counterexample --case search-n9");
  REQUIRE(s.code == 0);
  const Json sj = Json::parse(s.out);
  CHECK(sj["characters"].size() == 8);
  CHECK(sj["sign_changes"] == 0);

  for (const char* id : {"thm32-n5", "thm32-n6", "thm32-n7", "thm32-n8"}) {
    CAPTURE(id);
    CHECK(run_cli(std::string("counterexample --case ") + id).code == 0);
  }
  CHECK(run_cli("counterexample --case prop25 --seed 3").out == run_cli("counterexample --case prop25 --seed 3").out);
}

TEST_CASE("custom counterexamples") {
  const auto ok = run_cli(
      "counterexample --custom --kind custom -n 2 --nodes 1,2,3 --coeffs 1,-2,1 --generators 2,3 --character 1,1 "
      "--interval 1,3 --lower-order 1");
  CHECK(ok.code == 0);
  CHECK(Json::parse(ok.out)["exponent"] == 2.0);
  // no sign change on the interval
  CHECK(run_cli("counterexample --custom --kind custom -n 2 --nodes 1,2,3 --coeffs 1,-2,1 --generators 2,3 "
                "--character 0,0 --interval 1,3")
            .code == 1);
  CHECK(run_cli("counterexample --case nope").code == 2);
  CHECK(run_cli("counterexample").code == 2);
  CHECK(run_cli("counterexample --case prop25 --custom").code == 2);
  CHECK(run_cli("counterexample --custom --kind riemann -n 2 --generators 4 --character 1 --interval 1,3").code == 2);
}
