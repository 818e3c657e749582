#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "qstencil/rational.hpp"

using qstencil::Rational;

TEST_CASE("parse and print in lowest terms") {
  CHECK(Rational::parse("6/4").str() == "3/2");
  CHECK(Rational::parse("-6/4").str() == "-3/2");
  CHECK(Rational::parse("4/2").str() == "2");
  CHECK(Rational::parse("0/5").str() == "0");
  CHECK(Rational::parse("-7").str() == "-7");
  CHECK(Rational(3, -6).str() == "-1/2");
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/-2"), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("arithmetic matches hand computation") {
  const Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);
  CHECK_THROWS_AS(Rational(0).reciprocal(), std::domain_error);
}

TEST_CASE("powers including negative exponents") {
  CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
  CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
  CHECK(Rational(-2).pow(0) == Rational(1));
  CHECK(Rational(-2).pow(5) == Rational(-32));
  CHECK_THROWS_AS(Rational(0).pow(-1), std::domain_error);
}

TEST_CASE("ordering and sign") {
  CHECK(Rational(-1, 2) < Rational(1, 3));
  CHECK(Rational(7, 3) > Rational(2));
  CHECK(Rational(-5, 7).sign() == -1);
  CHECK(Rational(-5, 7).abs() == Rational(5, 7));
  CHECK(Rational(0).is_zero());
  CHECK(Rational(4, 2).is_integer());
}

TEST_CASE("doubles convert exactly") {
  CHECK(Rational::from_double(0.5) == Rational(1, 2));
  CHECK(Rational::from_double(-0.375) == Rational(-3, 8));
  const Rational tenth = Rational::from_double(0.1);
  CHECK(tenth != Rational(1, 10));
  CHECK(tenth.to_double() == 0.1);
  CHECK_THROWS_AS(Rational::from_double(1.0 / 0.0), std::invalid_argument);
}

TEST_CASE("factorial and binomial") {
  CHECK(qstencil::factorial(0) == 1);
  CHECK(qstencil::factorial(10) == 3628800);
  CHECK(qstencil::binomial(10, 3) == 120);
  CHECK(qstencil::binomial(5, 0) == 1);
  CHECK(qstencil::binomial(5, 6) == 0);
  CHECK(qstencil::binomial(5, -1) == 0);
}
