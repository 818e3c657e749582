#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "qstencil/evaluator.hpp"
#include "qstencil/identities.hpp"
#include "qstencil/stencil.hpp"

using namespace qstencil;

namespace {

// d^n/dx^n of sum c_i x^i at x.
Rational nth_derivative(const std::vector<Rational>& c, int n, const Rational& x) {
  Rational out;
  for (int i = n; i < static_cast<int>(c.size()); ++i) {
    out += c[i] * Rational(factorial(i)) / Rational(factorial(i - n)) * x.pow(i - n);
  }
  return out;
}

std::vector<Stencil> stencils_of_order(int n) {
  return {gaussian_forward(n, Rational(2)),  gaussian_shifted(n, Rational(-3, 2)),
          gaussian_symmetric(n, Rational(3)), riemann_classic(n),
          riemann_symmetric(n),              vandermonde_solve([n] {
            std::vector<Rational> nodes;
            for (int k = 0; k <= n; ++k) nodes.push_back(Rational(k * k + 1, k + 2));
            return nodes;
          }(), n)};
}

}  // namespace

TEST_CASE("polynomials of degree <= n are differentiated exactly") {
  RationalSampler sample(7);
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 8; ++n) {
    for (const Stencil& s : stencils_of_order(n)) {
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<Rational> c;
        const int degree = static_cast<int>(rng() % (n + 1));
        for (int i = 0; i <= degree; ++i) c.push_back(sample.any());
        const FunctionHandle f = FunctionHandle::polynomial(c);
        const Rational x = sample.any(), h = sample.any();
        CHECK(difference_quotient_exact(s, f, x, h) == nth_derivative(c, n, x));
      }
    }
  }
}

TEST_CASE("degree n + 1 leaves a nonzero remainder for generic h") {
  std::vector<Rational> c(5);
  c[4] = Rational(1);
  const Stencil s = gaussian_forward(3, Rational(2));
  const Rational q0 = difference_quotient_exact(s, FunctionHandle::polynomial(c), Rational(0), Rational(1, 10));
  CHECK(q0 != Rational(0));
}

TEST_CASE("signpow: forward quotient flips with h, symmetric of opposite parity vanishes") {
  const FunctionHandle g = FunctionHandle::signpow(3);
  CHECK(g.evaluate_exact(Rational(-2)) == Rational(8));
  CHECK(g.evaluate_exact(Rational(2)) == Rational(8));
  const Stencil f = gaussian_forward(3, Rational(2));
  CHECK(difference_quotient_exact(f, g, Rational(0), Rational(1, 7)) == Rational(6));
  CHECK(difference_quotient_exact(f, g, Rational(0), Rational(-1, 7)) == Rational(-6));
  for (int n = 3; n <= 6; ++n) {
    const FunctionHandle gn = FunctionHandle::signpow(n);
    for (const Rational& q : {Rational(2), Rational(3)}) {
      const Stencil sym = gaussian_symmetric(n, q);
      for (const Rational& h : {Rational(1), Rational(-1, 3), Rational(5, 7)}) {
        CHECK(apply_difference_exact(sym, gn, Rational(0), h).is_zero());
      }
    }
  }
}

TEST_CASE("recursion quotient equals stencil quotient") {
  const FunctionHandle f = FunctionHandle::polynomial({Rational(1), Rational(-2), Rational(0), Rational(3, 2),
                                                       Rational(0), Rational(0), Rational(1, 9)});
  for (auto family : {GaussianFamily::forward, GaussianFamily::shifted, GaussianFamily::symmetric}) {
    for (int n = 1; n <= 7; ++n) {
      const Rational q(5, 3), x(2, 7), h(-3, 4);
      CHECK(recursive_quotient_exact(family, n, q, f, x, h) ==
            difference_quotient_exact(gaussian(family, n, q), f, x, h));
    }
  }
  const FunctionHandle sine = FunctionHandle::parse("sin");
  CHECK(recursive_quotient(GaussianFamily::symmetric, 4, Rational(2), sine, 0.3, 0.01) ==
        doctest::Approx(difference_quotient(gaussian_symmetric(4, Rational(2)), sine, 0.3, 0.01)).epsilon(1e-9));
}

TEST_CASE("builtins are evaluated accurately") {
  CHECK(FunctionHandle::parse("sin").evaluate(Rational(1, 2)) == doctest::Approx(std::sin(0.5)));
  CHECK(FunctionHandle::parse("cos").evaluate(Rational(1, 2)) == doctest::Approx(std::cos(0.5)));
  CHECK(FunctionHandle::parse("exp").evaluate(Rational(1, 2)) == doctest::Approx(std::exp(0.5)));
  CHECK(FunctionHandle::parse("abs").evaluate_exact(Rational(-3, 2)) == Rational(3, 2));
  CHECK(FunctionHandle::parse("signpow4").name() == "signpow4");
  CHECK_THROWS_AS(FunctionHandle::parse("tan"), std::invalid_argument);
  CHECK_THROWS_AS(FunctionHandle::parse("signpow"), std::invalid_argument);
  CHECK_FALSE(FunctionHandle::parse("sin").is_exact());
  CHECK(FunctionHandle::parse("abs").is_exact());
}

TEST_CASE("step guards") {
  const Stencil s = gaussian_forward(3, Rational(2));
  const FunctionHandle sine = FunctionHandle::parse("sin");
  CHECK_THROWS_AS(apply_difference(s, sine, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(difference_quotient(s, sine, 0.0, 1e-9), std::invalid_argument);
  CHECK_NOTHROW(difference_quotient(s, FunctionHandle::signpow(3), 0.0, 1e-9));
  CHECK_NOTHROW(difference_quotient(riemann_classic(2), sine, 0.0, 1e-9));
  CHECK_THROWS_AS(estimate_derivative(s, sine, 0.0, 0.1, 1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(estimate_derivative(s, sine, 0.0, 0.0, 0.5, 10), std::invalid_argument);
  CHECK_THROWS_AS(estimate_derivative(s, sine, 0.0, 0.1, 0.5, 1), std::invalid_argument);
}

TEST_CASE("convergence tables") {
  const Stencil s = gaussian_forward(3, Rational(2));
  const auto sine = estimate_derivative(s, FunctionHandle::parse("sin"), 0.0, 0.1, 0.5, 20);
  REQUIRE(sine.rows.size() == 20);
  CHECK(std::isnan(sine.rows[0].delta));
  CHECK(sine.rows[1].h < 0);
  CHECK(sine.verdict.kind == ConvergenceVerdict::Kind::converged);
  CHECK(std::abs(sine.verdict.value + 1) < 1e-6);

  const auto exp3 = estimate_derivative(gaussian_symmetric(3, Rational(3)), FunctionHandle::parse("exp"), 0.5, 0.1,
                                        0.5, 20);
  CHECK(exp3.verdict.kind == ConvergenceVerdict::Kind::converged);
  CHECK(std::abs(exp3.verdict.value - std::exp(0.5)) < 1e-6);
  // first-order remainder: still moving by ~1e-5 after 20 halvings
  const auto slow = estimate_derivative(gaussian_shifted(3, Rational(3)), FunctionHandle::parse("exp"), 0.5, 0.1, 0.5,
                                        20);
  CHECK(slow.verdict.kind != ConvergenceVerdict::Kind::converged);
  CHECK(std::abs(slow.rows.back().quotient - std::exp(0.5)) < 1e-4);

  const auto g = estimate_derivative(s, FunctionHandle::signpow(3), 0.0, 0.1, 0.5, 20);
  CHECK(g.verdict.kind == ConvergenceVerdict::Kind::oscillating);
  REQUIRE(g.limit_positive.has_value());
  REQUIRE(g.limit_negative.has_value());
  CHECK(std::abs(*g.limit_positive - 6) < 1e-6);
  CHECK(std::abs(*g.limit_negative + 6) < 1e-6);

  EstimateOptions one_sided;
  one_sided.two_sided = false;
  const auto g1 = estimate_derivative(s, FunctionHandle::signpow(3), 0.0, 0.1, 0.5, 20, one_sided);
  CHECK(g1.verdict.kind == ConvergenceVerdict::Kind::converged);

  const auto blowup = estimate_derivative(riemann_symmetric(2), FunctionHandle::parse("abs"), 0.0, 0.1, 0.1, 20);
  CHECK(blowup.verdict.kind == ConvergenceVerdict::Kind::diverged);
}

TEST_CASE("CSV layout") {
  const auto t = estimate_derivative(riemann_classic(1), FunctionHandle::polynomial({Rational(0), Rational(2)}), 1.0,
                                     0.5, 0.5, 6);
  const std::string csv = to_csv(t);
  CHECK(csv.rfind("h,quotient,delta\n0.5,2,\n", 0) == 0);
  CHECK(csv.find("# verdict: converged value=2 est_error=0") != std::string::npos);
  CHECK(csv.back() == '\n');
  CHECK(verdict_string({ConvergenceVerdict::Kind::oscillating}) == "oscillating");
}

TEST_CASE("Peano bound surrogate") {
  std::vector<Rational> hs;
  for (int j = 1; j <= 20; ++j) {
    hs.push_back(Rational(2).pow(-j));
    hs.push_back(-Rational(3).pow(-j));
  }
  CHECK(peano_bound_check(FunctionHandle::signpow(4), Rational(0), 3, 0.5, hs));
  CHECK_FALSE(peano_bound_check(FunctionHandle::signpow(4), Rational(0), 4, 0.5, hs));
}
