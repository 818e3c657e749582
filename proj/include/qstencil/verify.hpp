#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qstencil/identities.hpp"
#include "qstencil/rational.hpp"

namespace qstencil {

struct VerifyOptions {
  int max_n = 8;  // at most 12
  std::vector<Rational> q_list{Rational(2), Rational(3), Rational(1, 2), Rational(-2)};
  int samples = 20;
  std::uint64_t seed = 20220926;
  /// Perturbs one closed-form coefficient before comparison (self-test of the harness).
  bool inject_fault = false;
};

struct VerifyReport {
  std::vector<SuiteResult> suites;

  bool passed() const;
  /// One line per suite: name, cases, failures, PASS/FAIL, first failure.
  std::string text() const;
};

// Stencil-level suites over families x 1..max_n x q_list.
SuiteResult check_closed_form_vs_solver(int max_n, const std::vector<Rational>& q_list, bool inject_fault = false);
SuiteResult check_recursion(int max_n, const std::vector<Rational>& q_list);
SuiteResult check_vandermonde(int max_n, const std::vector<Rational>& q_list);
SuiteResult check_scaling(int max_n, const std::vector<Rational>& q_list);
SuiteResult check_mz_nodes(int max_n);

/// Every suite; std::invalid_argument for max_n outside 1..12 or a degenerate q.
VerifyReport run_verify(const VerifyOptions& options);

}  // namespace qstencil
