#include "qstencil/verify.hpp"

#include <sstream>
#include <stdexcept>

#include "qstencil/stencil.hpp"

namespace qstencil {

namespace {

constexpr GaussianFamily kFamilies[] = {GaussianFamily::forward, GaussianFamily::shifted, GaussianFamily::symmetric};

std::string label(GaussianFamily family, int n, const Rational& q) {
  return std::string(to_string(family)) + " n=" + std::to_string(n) + " q=" + q.str();
}

Stencil closed_form(GaussianFamily family, int n, const Rational& q) {
  switch (family) {
    case GaussianFamily::forward: return gaussian_forward(n, q);
    case GaussianFamily::shifted: return gaussian_shifted(n, q);
    case GaussianFamily::symmetric: return gaussian_symmetric_closed_form(n, q);
  }
  throw std::logic_error("unreachable");
}

SuiteResult named(const char* name) {
  SuiteResult r;
  r.name = name;
  return r;
}

}  // namespace

bool VerifyReport::passed() const {
  for (const auto& s : suites) {
    if (!s.passed()) return false;
  }
  return true;
}

std::string VerifyReport::text() const {
  std::ostringstream os;
  for (const auto& s : suites) {
    os << s.name << ": " << s.cases << " cases, " << s.failures << " failures, " << (s.passed() ? "PASS" : "FAIL");
    if (!s.passed()) os << " (first failure: " << s.first_failure << ")";
    os << "\n";
  }
  os << (passed() ? "all suites passed" : "FAILED") << "\n";
  return os.str();
}

SuiteResult check_closed_form_vs_solver(int max_n, const std::vector<Rational>& q_list, bool inject_fault) {
  SuiteResult r = named("closed-form-vs-solver");
  bool injected = false;
  for (auto family : kFamilies) {
    for (int n = 1; n <= max_n; ++n) {
      for (const auto& q : q_list) {
        Stencil closed = closed_form(family, n, q);
        if (inject_fault && !injected) {
          auto coeffs = closed.coeffs();
          coeffs.front() += Rational(1, 7);
          closed = Stencil(closed.order(), closed.nodes(), coeffs, closed.kind(), closed.q());
          injected = true;
        }
        const Stencil solved = vandermonde_solve(closed.nodes(), n);
        r.record(closed.same_data(solved), label(family, n, q));
      }
    }
  }
  return r;
}

SuiteResult check_recursion(int max_n, const std::vector<Rational>& q_list) {
  SuiteResult r = named("recursion");
  for (auto family : kFamilies) {
    for (int n = 1; n <= max_n; ++n) {
      for (const auto& q : q_list) {
        r.record(recursive_build(family, n, q).same_data(closed_form(family, n, q)), label(family, n, q));
      }
    }
  }
  return r;
}

SuiteResult check_vandermonde(int max_n, const std::vector<Rational>& q_list) {
  SuiteResult r = named("vandermonde");
  for (auto family : kFamilies) {
    for (int n = 1; n <= max_n; ++n) {
      for (const auto& q : q_list) r.record(satisfies_vandermonde(closed_form(family, n, q)), label(family, n, q));
    }
  }
  for (int n = 1; n <= max_n; ++n) {
    r.record(satisfies_vandermonde(riemann_classic(n)), "riemann n=" + std::to_string(n));
    r.record(satisfies_vandermonde(riemann_symmetric(n)), "riemann-symmetric n=" + std::to_string(n));
  }
  return r;
}

SuiteResult check_scaling(int max_n, const std::vector<Rational>& q_list) {
  SuiteResult r = named("scaling");
  for (int n = 1; n <= max_n; ++n) {
    for (const auto& q : q_list) {
      const Stencil forward = gaussian_forward(n, q);
      r.record(scale(gaussian_forward(n, q.reciprocal()), q.pow(n - 1)).same_data(forward),
               label(GaussianFamily::forward, n, q));
      const Stencil symmetric = gaussian_symmetric_closed_form(n, q);
      const Stencil inverse = gaussian_symmetric_closed_form(n, q.reciprocal());
      const auto factor = matching_scale_factor(inverse, symmetric);
      r.record(factor && scale(inverse, *factor).same_data(symmetric), label(GaussianFamily::symmetric, n, q));
    }
  }
  return r;
}

SuiteResult check_mz_nodes(int max_n) {
  SuiteResult r = named("mz-nodes");
  for (int n = 1; n <= max_n; ++n) {
    std::vector<Rational> expected{Rational(0)};
    for (int i = 0; i < n; ++i) expected.push_back(Rational(2).pow(i));
    const Stencil mz = mz_stencil(n);
    const bool ok = mz.nodes() == expected && mz.same_data(recursive_build(GaussianFamily::forward, n, Rational(2)));
    r.record(ok, "n=" + std::to_string(n));
  }
  return r;
}

VerifyReport run_verify(const VerifyOptions& o) {
  if (o.max_n < 1 || o.max_n > 12) throw std::invalid_argument("max-n must lie in 1..12");
  for (const auto& q : o.q_list) {
    if (q.is_zero() || q.abs() == Rational(1)) throw std::invalid_argument("q must not be 0, 1 or -1 (got " + q.str() + ")");
  }
  VerifyReport report;
  report.suites.push_back(check_pascal(o.max_n));
  report.suites.push_back(check_qbinomial_structure(o.max_n));
  report.suites.push_back(check_qbinomial_formula(o.max_n, o.samples, o.seed));
  report.suites.push_back(check_forward_specialisations(o.max_n, o.samples, o.seed + 1));
  report.suites.push_back(check_symmetric_specialisations(o.max_n, o.samples, o.seed + 2));
  report.suites.push_back(check_closed_form_vs_solver(o.max_n, o.q_list, o.inject_fault));
  report.suites.push_back(check_recursion(o.max_n, o.q_list));
  report.suites.push_back(check_vandermonde(o.max_n, o.q_list));
  report.suites.push_back(check_scaling(o.max_n, o.q_list));
  report.suites.push_back(check_mz_nodes(o.max_n));
  return report;
}

}  // namespace qstencil
