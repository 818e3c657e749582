#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "qstencil/rational.hpp"

namespace qstencil {

/// Outcome of one identity suite: how many exact checks ran, how many failed,
/// and a description of the first failure.
struct SuiteResult {
  std::string name;
  long cases = 0;
  long failures = 0;
  std::string first_failure;

  bool passed() const { return failures == 0; }
  void record(bool ok, const std::string& what);
};

/// Uniform random rationals p/r with 1 <= |p|, r <= bound (seeded, reproducible).
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed, long bound = 50) : rng_(seed), bound_(bound) {}

  Rational any();
  /// Excludes 0, 1 and -1, the degenerate values of q.
  Rational generic_q();

 private:
  std::mt19937_64 rng_;
  long bound_;
};

// Both sides of the Gaussian binomial formula at a point.
Rational qbinomial_product_side(int n, const Rational& a, const Rational& b, const Rational& q);
Rational qbinomial_sum_side(int n, const Rational& a, const Rational& b, const Rational& q);

// (a - q)(a - q^2)...(a - q^(n-1)) and its expansion.
Rational forward_product_side(int n, const Rational& a, const Rational& q);
Rational forward_sum_side(int n, const Rational& a, const Rational& q);

// Squared-base specialisations used by the symmetric family:
// (a - q^2)(a - q^4)...(a - q^(2(m-1))) and (a - q)(a - q^3)...(a - q^(2m-3)).
Rational even_product_side(int m, const Rational& a, const Rational& q);
Rational even_sum_side(int m, const Rational& a, const Rational& q);
Rational odd_product_side(int m, const Rational& a, const Rational& q);
Rational odd_sum_side(int m, const Rational& a, const Rational& q);

/// q-Pascal identity for every 2 <= n <= max_n, 1 <= k <= n-1.
SuiteResult check_pascal(int max_n);

/// Palindromy [n k] == [n n-k] and the classical limit at q = 1, n <= max_n.
SuiteResult check_qbinomial_structure(int max_n);

/// Gaussian binomial formula, product vs expansion, at `samples` random
/// (a, b, q) for every 1 <= n <= max_n.
SuiteResult check_qbinomial_formula(int max_n, int samples, std::uint64_t seed);

/// Forward specialisation at random a, and at a = 1, a = q^j (1 <= j < n),
/// a = q^n, for 1 <= n <= max_n at `samples` random q.
SuiteResult check_forward_specialisations(int max_n, int samples, std::uint64_t seed);

/// Even and odd squared-base specialisations for 1 <= m <= max_m.
SuiteResult check_symmetric_specialisations(int max_m, int samples, std::uint64_t seed);

}  // namespace qstencil
