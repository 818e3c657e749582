#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qstencil/json_io.hpp"

using namespace qstencil;

TEST_CASE("stencil JSON layout") {
  const std::string text = dump(to_json(gaussian_forward(3, Rational(2))));
  CHECK(text == R"({
  "order": 3,
  "kind": "gaussian_forward",
  "q": "2",
  "nodes": [
    "0",
    "1",
    "2",
    "4"
  ],
  "coeffs": [
    "-3/4",
    "2",
    "-3/2",
    "1/4"
  ]
}
)");
  CHECK(to_json(riemann_classic(2))["q"].is_null());
}

TEST_CASE("stencil round-trip") {
  for (const Stencil& s : {gaussian_symmetric(5, Rational(-7, 4)), riemann_symmetric(3), mz_stencil(4),
                           vandermonde_solve({Rational(1, 3), Rational(-2), Rational(5)}, 2)}) {
    const std::string once = dump(to_json(s));
    const Stencil back = stencil_from_json(Json::parse(once));
    CHECK(back == s);
    CHECK(dump(to_json(back)) == once);
  }
}

TEST_CASE("report round-trips byte for byte") {
  for (const auto& id : named_case_ids()) {
    CAPTURE(id);
    const auto c = named_case(id);
    std::string once;
    if (c.is_search) {
      once = dump(to_json(run_search(c)));
      CHECK(dump(to_json(search_report_from_json(Json::parse(once)))) == once);
    } else {
      once = dump(to_json(run_case(c)));
      CHECK(dump(to_json(report_from_json(Json::parse(once)))) == once);
    }
  }
}

TEST_CASE("report fields") {
  const Json j = to_json(run_case(named_case("thm32a")));
  CHECK(j["phi_endpoints"][0] == "-54096");
  CHECK(j["phi_endpoints"][1] == "489804");
  CHECK(j["exponent_interval"] == Json::array({6, 7}));
  CHECK(j["generators"] == Json::array({2, 3, 5, 7}));
  CHECK(j["character"] == Json::array({0, 1, 1, 0}));
  CHECK(j["checks"]["difference_vanishes"] == true);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"stencil", "generators", "character", "exponent_interval", "exponent",
                                         "phi_terms", "phi_endpoints", "checks"});
}

TEST_CASE("malformed stencil JSON is rejected") {
  CHECK_THROWS(stencil_from_json(Json::parse(R"({"order":1,"kind":"custom","q":null,"nodes":["0","0"],"coeffs":["1","-1"]})")));
  CHECK_THROWS(stencil_from_json(Json::parse(R"({"order":1,"kind":"nope","q":null,"nodes":["0","1"],"coeffs":["-1","1"]})")));
  CHECK_THROWS(stencil_from_json(Json::parse(R"({"order":1})")));
}
