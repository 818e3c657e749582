#include "qstencil/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace qstencil {

namespace {

Json rationals(const std::vector<Rational>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(x.str());
  return a;
}

std::vector<Rational> rationals_from(const Json& a) {
  std::vector<Rational> out;
  for (const auto& x : a) out.push_back(Rational::parse(x.get<std::string>()));
  return out;
}

}  // namespace

Json to_json(const Stencil& s) {
  Json j;
  j["order"] = s.order();
  j["kind"] = std::string(to_string(s.kind()));
  j["q"] = s.q() ? Json(s.q()->str()) : Json(nullptr);
  j["nodes"] = rationals(s.nodes());
  j["coeffs"] = rationals(s.coeffs());
  return j;
}

Stencil stencil_from_json(const Json& j) {
  std::optional<Rational> q;
  if (!j.at("q").is_null()) q = Rational::parse(j.at("q").get<std::string>());
  return Stencil(j.at("order").get<int>(), rationals_from(j.at("nodes")), rationals_from(j.at("coeffs")),
                 stencil_kind_from_string(j.at("kind").get<std::string>()), q);
}

Json to_json(const ExponentialSum& phi) {
  Json a = Json::array();
  for (const auto& t : phi.terms()) a.push_back(Json{{"coeff", t.coeff.str()}, {"base", t.base.str()}});
  return a;
}

ExponentialSum exponential_sum_from_json(const Json& j) {
  std::vector<ExponentialSum::Term> terms;
  for (const auto& t : j) {
    terms.push_back({Rational::parse(t.at("coeff").get<std::string>()), Rational::parse(t.at("base").get<std::string>())});
  }
  return ExponentialSum(std::move(terms));
}

Json to_json(const CounterexampleReport& r) {
  Json j;
  j["stencil"] = to_json(r.stencil);
  j["generators"] = r.generators;
  j["character"] = r.character;
  j["exponent_interval"] = {r.lo, r.hi};
  j["exponent"] = r.exponent;
  j["phi_terms"] = to_json(r.phi);
  j["phi_endpoints"] = {r.phi_lo.str(), r.phi_hi.str()};
  j["checks"] = Json{{"difference_vanishes", r.checks.difference_vanishes},
                     {"lower_peano_bound", r.checks.lower_peano_bound},
                     {"nth_unbounded", r.checks.nth_unbounded}};
  return j;
}

CounterexampleReport report_from_json(const Json& j) {
  CounterexampleReport r{stencil_from_json(j.at("stencil")), j.at("generators").get<std::vector<long>>(),
                         j.at("character").get<std::vector<int>>(), j.at("exponent_interval").at(0).get<unsigned>(),
                         j.at("exponent_interval").at(1).get<unsigned>(), j.at("exponent").get<double>(),
                         exponential_sum_from_json(j.at("phi_terms")),
                         Rational::parse(j.at("phi_endpoints").at(0).get<std::string>()),
                         Rational::parse(j.at("phi_endpoints").at(1).get<std::string>()), {}};
  const Json& c = j.at("checks");
  r.checks.difference_vanishes = c.at("difference_vanishes").get<bool>();
  r.checks.lower_peano_bound = c.at("lower_peano_bound").get<bool>();
  r.checks.nth_unbounded = c.at("nth_unbounded").get<bool>();
  return r;
}

Json to_json(const SearchReport& r) {
  Json j;
  j["stencil"] = to_json(r.stencil);
  j["generators"] = r.generators;
  j["exponent_interval"] = {r.lo, r.hi};
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json x;
    x["character"] = row.character;
    x["phi_terms"] = to_json(row.phi);
    x["phi_endpoints"] = {row.phi_lo.str(), row.phi_hi.str()};
    x["sign_change"] = row.sign_change;
    rows.push_back(std::move(x));
  }
  j["characters"] = std::move(rows);
  j["sign_changes"] = r.sign_changes();
  return j;
}

SearchReport search_report_from_json(const Json& j) {
  SearchReport r{stencil_from_json(j.at("stencil")), j.at("generators").get<std::vector<long>>(),
                 j.at("exponent_interval").at(0).get<unsigned>(), j.at("exponent_interval").at(1).get<unsigned>(), {}};
  for (const auto& x : j.at("characters")) {
    r.rows.push_back({x.at("character").get<std::vector<int>>(), exponential_sum_from_json(x.at("phi_terms")),
                      Rational::parse(x.at("phi_endpoints").at(0).get<std::string>()),
                      Rational::parse(x.at("phi_endpoints").at(1).get<std::string>()),
                      x.at("sign_change").get<bool>()});
  }
  return r;
}

Json to_json(const ConvergenceTable& t) {
  Json j;
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    rows.push_back(Json{{"h", row.h},
                        {"quotient", row.quotient},
                        {"delta", std::isnan(row.delta) ? Json(nullptr) : Json(row.delta)}});
  }
  j["rows"] = std::move(rows);
  Json v;
  switch (t.verdict.kind) {
    case ConvergenceVerdict::Kind::converged:
      v["kind"] = "converged";
      v["value"] = t.verdict.value;
      v["est_error"] = t.verdict.est_error;
      break;
    case ConvergenceVerdict::Kind::diverged: v["kind"] = "diverged"; break;
    case ConvergenceVerdict::Kind::oscillating: v["kind"] = "oscillating"; break;
  }
  j["verdict"] = std::move(v);
  j["limit_positive"] = t.limit_positive ? Json(*t.limit_positive) : Json(nullptr);
  j["limit_negative"] = t.limit_negative ? Json(*t.limit_negative) : Json(nullptr);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qstencil
