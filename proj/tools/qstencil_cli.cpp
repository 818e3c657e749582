#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qstencil/counterexample.hpp"
#include "qstencil/errors.hpp"
#include "qstencil/evaluator.hpp"
#include "qstencil/json_io.hpp"
#include "qstencil/stencil.hpp"
#include "qstencil/verify.hpp"

using namespace qstencil;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNonexistence = 3;

// Bad flag values detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

Rational parse_rational_flag(const std::string& flag, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(flag + ": expected a rational p or p/r, got '" + text + "'");
  }
}

std::vector<Rational> parse_rational_list(const std::string& flag, const std::string& text) {
  std::vector<Rational> out;
  for (const auto& item : split(text)) out.push_back(parse_rational_flag(flag, item));
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

struct StencilArgs {
  std::string kind = "forward";
  int n = 1;
  std::optional<std::string> q;
  std::optional<std::string> nodes;
  std::optional<std::string> coeffs;
};

void add_stencil_flags(CLI::App* cmd, StencilArgs& a) {
  cmd->add_option("--kind", a.kind, "forward|shifted|symmetric|mz|riemann|riemann-symmetric|custom")
      ->capture_default_str();
  cmd->add_option("-n", a.n, "Order")->capture_default_str();
  cmd->add_option("-q", a.q, "Ratio q as p or p/r (Gaussian kinds)");
  cmd->add_option("--nodes", a.nodes, "Comma-separated rational nodes (custom)");
}

Rational required_q(const StencilArgs& a) {
  if (!a.q) throw UsageError("--kind " + a.kind + " needs -q");
  const Rational q = parse_rational_flag("-q", *a.q);
  if (q.is_zero() || q.abs() == Rational(1)) throw UsageError("-q must not be 0, 1 or -1");
  return q;
}

Stencil build_stencil(const StencilArgs& a) {
  if (a.n < 1) throw UsageError("-n must be at least 1");
  const std::string& k = a.kind;
  if (k == "forward" || k == "shifted" || k == "symmetric") {
    return gaussian(gaussian_family_from_string(k), a.n, required_q(a));
  }
  if (k == "mz") return mz_stencil(a.n);
  if (k == "riemann") return riemann_classic(a.n);
  if (k == "riemann-symmetric") return riemann_symmetric(a.n);
  if (k == "custom") {
    if (!a.nodes) throw UsageError("--kind custom needs --nodes");
    auto nodes = parse_rational_list("--nodes", *a.nodes);
    if (a.coeffs) return Stencil(a.n, std::move(nodes), parse_rational_list("--coeffs", *a.coeffs));
    if (nodes.size() != static_cast<std::size_t>(a.n) + 1) {
      throw UsageError("--nodes: order " + std::to_string(a.n) + " needs " + std::to_string(a.n + 1) + " nodes, got " +
                       std::to_string(nodes.size()));
    }
    return vandermonde_solve(std::move(nodes), a.n);
  }
  throw UsageError("unknown --kind '" + k + "'");
}

std::string stencil_text(const Stencil& s) {
  std::ostringstream os;
  os << to_string(s.kind()) << " order " << s.order();
  if (s.q()) os << " q=" << *s.q();
  os << "\n";
  for (std::size_t i = 0; i < s.size(); ++i) os << "  " << s.nodes()[i] << "\t" << s.coeffs()[i] << "\n";
  return os.str();
}

void require_output(const std::string& output, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (output == a) return;
  }
  throw UsageError("--output " + output + " is not available for this subcommand");
}

// --- subcommands ---------------------------------------------------------------

int cmd_stencil(const StencilArgs& a, const std::string& output) {
  require_output(output, {"json", "text"});
  const Stencil s = build_stencil(a);
  std::cout << (output == "json" ? dump(to_json(s)) : stencil_text(s));
  return kExitOk;
}

int cmd_verify(int max_n, const std::string& q_list, std::uint64_t seed, bool inject_fault, const std::string& output) {
  require_output(output, {"text", "json"});
  VerifyOptions o;
  o.max_n = max_n;
  o.q_list = parse_rational_list("--q-list", q_list);
  o.seed = seed;
  o.inject_fault = inject_fault;
  VerifyReport report;
  try {
    report = run_verify(o);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (output == "json") {
    Json j = Json::array();
    for (const auto& s : report.suites) {
      j.push_back(Json{{"suite", s.name}, {"cases", s.cases}, {"failures", s.failures}, {"passed", s.passed()},
                       {"first_failure", s.first_failure}});
    }
    std::cout << dump(j);
  } else {
    std::cout << report.text();
  }
  for (const auto& s : report.suites) {
    if (!s.passed()) std::cerr << "suite " << s.name << " failed: " << s.first_failure << "\n";
  }
  return report.passed() ? kExitOk : kExitFailure;
}

struct DeriveArgs {
  std::string function;
  std::string at = "0";
  double h0 = 0.1;
  double ratio = 0.5;
  int steps = 20;
  bool one_sided = false;
};

int cmd_derive(const StencilArgs& sa, const DeriveArgs& d, std::optional<double> tol, const std::string& output) {
  require_output(output, {"csv", "json", "text"});
  const Stencil s = build_stencil(sa);
  FunctionHandle f = FunctionHandle::builtin(FunctionHandle::Builtin::sin);
  try {
    f = FunctionHandle::parse(d.function);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--function: ") + e.what());
  }
  const Rational x = parse_rational_flag("--at", d.at);
  EstimateOptions opts;
  opts.two_sided = !d.one_sided;
  if (tol) {
    if (!(*tol > 0)) throw UsageError("--tol must be positive");
    opts.tolerance = *tol;
  }
  ConvergenceTable table;
  try {
    table = estimate_derivative(s, f, x.to_double(), d.h0, d.ratio, d.steps, opts);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::cout << (output == "json" ? dump(to_json(table)) : to_csv(table));
  return table.verdict.kind == ConvergenceVerdict::Kind::converged ? kExitOk : kExitNonexistence;
}

struct CustomCaseArgs {
  bool custom = false;
  std::string generators;
  std::string character;
  std::string interval;
  int lower_order = -1;
};

std::vector<long> parse_long_list(const std::string& flag, const std::string& text) {
  std::vector<long> out;
  for (const auto& item : split(text)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(flag + ": expected integers, got '" + text + "'");
    }
  }
  return out;
}

CounterexampleCase custom_case(const StencilArgs& sa, const CustomCaseArgs& c) {
  if (c.generators.empty() || c.interval.empty()) throw UsageError("--custom needs --generators and --interval");
  const auto interval = parse_long_list("--interval", c.interval);
  if (interval.size() != 2 || interval[0] < 0 || interval[0] >= interval[1]) {
    throw UsageError("--interval: expected lo,hi with 0 <= lo < hi");
  }
  CounterexampleCase out{"custom", build_stencil(sa), MultiplicativeGroup(parse_long_list("--generators", c.generators)),
                         {}, static_cast<unsigned>(interval[0]), static_cast<unsigned>(interval[1]),
                         c.lower_order >= 0 ? c.lower_order : sa.n - 1, std::nullopt};
  if (c.character.empty()) {
    out.is_search = true;
  } else {
    for (long b : parse_long_list("--character", c.character)) {
      if (b != 0 && b != 1) throw UsageError("--character: bits must be 0 or 1");
      out.character.push_back(static_cast<int>(b));
    }
    if (out.character.size() != out.group.rank()) throw UsageError("--character needs one bit per generator");
  }
  return out;
}

std::string report_text(const CounterexampleReport& r) {
  std::ostringstream os;
  os << "phi(s) = " << r.phi.str() << "\n"
     << "phi(" << r.lo << ") = " << r.phi_lo << ", phi(" << r.hi << ") = " << r.phi_hi << "\n"
     << "exponent = " << r.exponent << "\n"
     << "difference_vanishes: " << r.checks.difference_vanishes << "\n"
     << "lower_peano_bound: " << r.checks.lower_peano_bound << "\n"
     << "nth_unbounded: " << r.checks.nth_unbounded << "\n";
  return os.str();
}

std::string search_text(const SearchReport& r) {
  std::ostringstream os;
  for (const auto& row : r.rows) {
    os << "character";
    for (int b : row.character) os << " " << b;
    os << ": phi(" << r.lo << ") = " << row.phi_lo << ", phi(" << r.hi << ") = " << row.phi_hi
       << (row.sign_change ? "  sign change" : "") << "\n";
  }
  os << r.rows.size() << " characters, " << r.sign_changes() << " sign changes\n";
  return os.str();
}

int cmd_counterexample(const std::optional<std::string>& case_id, const StencilArgs& sa, const CustomCaseArgs& custom,
                       std::optional<double> tol, std::uint64_t seed, const std::string& output) {
  require_output(output, {"json", "text"});
  if (case_id.has_value() == custom.custom) throw UsageError("give exactly one of --case or --custom");
  CounterexampleCase c = [&] {
    if (!case_id) return custom_case(sa, custom);
    try {
      return named_case(*case_id);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();

  if (c.is_search) {
    const SearchReport r = run_search(c);
    std::cout << (output == "json" ? dump(to_json(r)) : search_text(r));
    return r.sign_changes() == 0 ? kExitOk : kExitFailure;
  }
  RunOptions o;
  o.seed = seed;
  if (tol) {
    if (!(*tol > 0)) throw UsageError("--tol must be positive");
    o.tol = *tol;
  }
  std::optional<CounterexampleReport> report;
  try {
    report = run_case(c, o);
  } catch (const PreconditionError& e) {
    std::cerr << e.what() << "\n";
    return kExitFailure;
  }
  const CounterexampleReport& r = *report;
  std::cout << (output == "json" ? dump(to_json(r)) : report_text(r));
  for (const auto& f : r.checks.failures) std::cerr << f << "\n";
  return r.passed() ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian Riemann difference stencils: construction, checks, derivative tables, counterexamples"};
  app.require_subcommand(1);

  std::optional<std::string> output;
  std::uint64_t seed = 20220926;
  std::optional<double> tol;
  const auto add_shared = [&](CLI::App* cmd) {
    cmd->add_option("--output", output, "json|csv|text")->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--seed", seed, "Seed for randomized checks")->capture_default_str();
    cmd->add_option("--tol", tol, "Tolerance (derive: convergence; counterexample: bisection width)");
  };

  StencilArgs sa;

  auto* stencil = app.add_subcommand("stencil", "Emit a stencil");
  add_shared(stencil);
  add_stencil_flags(stencil, sa);

  auto* verify = app.add_subcommand("verify", "Run the identity and stencil suites");
  add_shared(verify);
  int max_n = 8;
  std::string q_list = "2,3,1/2,-2";
  bool inject_fault = false;
  verify->add_option("--max-n", max_n, "Largest order (<= 12)")->capture_default_str();
  verify->add_option("--q-list", q_list, "Comma-separated q values")->capture_default_str();
  verify->add_flag("--inject-fault", inject_fault)->group("");

  auto* derive = app.add_subcommand("derive", "Difference quotient table as h shrinks");
  add_shared(derive);
  add_stencil_flags(derive, sa);
  DeriveArgs d;
  derive->add_option("--function", d.function, "sin|cos|exp|abs|signpow<n>")->required();
  derive->add_option("--at", d.at, "Point x (p or p/r)")->capture_default_str();
  derive->add_option("--h0", d.h0, "First step")->capture_default_str();
  derive->add_option("--ratio", d.ratio, "Step ratio in (0,1)")->capture_default_str();
  derive->add_option("--steps", d.steps, "Number of steps")->capture_default_str();
  derive->add_flag("--one-sided", d.one_sided, "Keep h positive");

  auto* counter = app.add_subcommand("counterexample", "Reproduce a named counterexample or run a custom one");
  add_shared(counter);
  std::optional<std::string> case_id;
  CustomCaseArgs custom;
  counter->add_option("--case", case_id, "prop25|thm32a|thm32-n5|thm32-n6|thm32-n7|thm32-n8|search-n9");
  counter->add_flag("--custom", custom.custom, "Use --kind/-n/-q/--nodes/--coeffs and the group flags");
  add_stencil_flags(counter, sa);
  counter->add_option("--coeffs", sa.coeffs, "Comma-separated coefficients (custom stencil)");
  counter->add_option("--generators", custom.generators, "Comma-separated primes");
  counter->add_option("--character", custom.character, "Comma-separated bits; omit to search all characters");
  counter->add_option("--interval", custom.interval, "lo,hi (integers)");
  counter->add_option("--lower-order", custom.lower_order, "Order of the Peano bound (default n-1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (stencil->parsed()) return cmd_stencil(sa, output.value_or("json"));
    if (verify->parsed()) return cmd_verify(max_n, q_list, seed, inject_fault, output.value_or("text"));
    if (derive->parsed()) return cmd_derive(sa, d, tol, output.value_or("csv"));
    if (counter->parsed()) return cmd_counterexample(case_id, sa, custom, tol, seed, output.value_or("json"));
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
