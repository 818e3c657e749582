#pragma once

#include <string>

#include <json.hpp>

#include "qstencil/counterexample.hpp"
#include "qstencil/evaluator.hpp"
#include "qstencil/stencil.hpp"

namespace qstencil {

using Json = nlohmann::ordered_json;

Json to_json(const Stencil& s);
Stencil stencil_from_json(const Json& j);

Json to_json(const ExponentialSum& phi);  // phi_terms array
ExponentialSum exponential_sum_from_json(const Json& j);

Json to_json(const CounterexampleReport& r);
CounterexampleReport report_from_json(const Json& j);

Json to_json(const SearchReport& r);
SearchReport search_report_from_json(const Json& j);

Json to_json(const ConvergenceTable& t);

/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

}  // namespace qstencil
