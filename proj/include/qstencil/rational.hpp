#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <iosfwd>
#include <string>
#include <string_view>

namespace qstencil {

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Thin value wrapper over GMP's mpq_class. Division by zero throws
/// std::domain_error instead of aborting.
class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I value) : value_(mpz_class(static_cast<long>(value))) {}  // NOLINT(implicit)

  Rational(const mpz_class& value) : value_(value) {}  // NOLINT(implicit)
  Rational(const mpz_class& num, const mpz_class& den);

  /// Parses "p", "-p", "p/r" (r != 0). Surrounding whitespace is not accepted.
  static Rational parse(std::string_view text);

  /// Exact value of a finite double (every finite double is a dyadic rational).
  static Rational from_double(double value);

  const mpz_class& num() const { return value_.get_num(); }
  const mpz_class& den() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  double to_double() const { return value_.get_d(); }
  std::string str() const;

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  Rational abs() const;
  Rational reciprocal() const;
  /// Integer power; negative exponents require a nonzero base.
  Rational pow(long exponent) const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  explicit Rational(mpq_class value) : value_(std::move(value)) {}

  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// n! as an exact integer.
mpz_class factorial(unsigned n);

/// Binomial coefficient C(n, k); zero outside 0 <= k <= n.
mpz_class binomial(long n, long k);

}  // namespace qstencil
