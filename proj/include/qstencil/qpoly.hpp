#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "qstencil/rational.hpp"

namespace qstencil {

/// Polynomial in the indeterminate q with integer coefficients.
///
/// Canonical form: no trailing zero coefficient; the zero polynomial has no
/// coefficients at all. Index i holds the coefficient of q^i.
class QPolynomial {
 public:
  QPolynomial() = default;
  explicit QPolynomial(std::vector<mpz_class> coefficients);

  static QPolynomial constant(const mpz_class& c);
  /// c * q^degree
  static QPolynomial monomial(const mpz_class& c, unsigned degree);

  const std::vector<mpz_class>& coefficients() const { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  mpz_class coefficient(unsigned power) const;

  Rational evaluate(const Rational& q) const;

  /// p(q^k); used for the q -> q^2 specialisations.
  QPolynomial substitute_power(unsigned k) const;

  /// Quotient of an exact division. Throws std::domain_error when the divisor
  /// is zero or the division leaves a remainder / non-integer coefficient.
  QPolynomial divide_exact(const QPolynomial& divisor) const;

  QPolynomial operator-() const;
  QPolynomial& operator+=(const QPolynomial& rhs);
  QPolynomial& operator-=(const QPolynomial& rhs);
  QPolynomial& operator*=(const QPolynomial& rhs);

  friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }
  friend QPolynomial operator-(QPolynomial a, const QPolynomial& b) { return a -= b; }
  friend QPolynomial operator*(QPolynomial a, const QPolynomial& b) { return a *= b; }
  friend bool operator==(const QPolynomial& a, const QPolynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Human-readable form, e.g. "1 + q + 2q^2".
  std::string str() const;

 private:
  void trim();

  std::vector<mpz_class> coeffs_;
};

// --- q-analogue combinatorics -------------------------------------------

/// [n]_q = 1 + q + ... + q^(n-1). Requires n >= 1.
QPolynomial q_integer(int n);

/// [n]_q! = [1]_q [2]_q ... [n]_q, with [0]_q! = 1. Requires n >= 0.
QPolynomial q_factorial(int n);

/// Gaussian binomial coefficient, computed by the Pascal recursion with a
/// process-wide memo table. Zero for k < 0 or k > n. Requires n >= 0.
QPolynomial q_binomial(int n, int k);

/// Same coefficient via [n]_q! / ([n-k]_q! [k]_q!), by exact polynomial
/// division. Independent of q_binomial.
QPolynomial q_binomial_by_factorials(int n, int k);

/// One term (-1)^k q^C(k,2) [n k]_q a^(n-k) b^k of the Gaussian binomial
/// formula for (a - b)(a - bq)...(a - bq^(n-1)).
struct QBinomialTerm {
  QPolynomial coefficient;
  int power_of_a = 0;
  int power_of_b = 0;
};

/// The n+1 terms of the q-binomial expansion, k = 0..n. Requires n >= 1.
std::vector<QBinomialTerm> qbinomial_expand(int n);

/// Checks [n-1 k]_q == [n-2 k]_q + q^(n-1-k) [n-2 k-1]_q as polynomials,
/// with every side computed from factorial quotients.
/// Requires n >= 2 and 1 <= k <= n-1.
bool pascal_check(int n, int k);

}  // namespace qstencil
