#include "qstencil/identities.hpp"

#include <sstream>

#include "qstencil/qpoly.hpp"

namespace qstencil {

void SuiteResult::record(bool ok, const std::string& what) {
  ++cases;
  if (!ok) {
    if (failures == 0) first_failure = what;
    ++failures;
  }
}

Rational RationalSampler::any() {
  std::uniform_int_distribution<long> num(-bound_, bound_);
  std::uniform_int_distribution<long> den(1, bound_);
  long p = 0;
  while (p == 0) p = num(rng_);
  return Rational(mpz_class(p), mpz_class(den(rng_)));
}

Rational RationalSampler::generic_q() {
  for (;;) {
    Rational q = any();
    if (q != Rational(1) && q != Rational(-1)) return q;
  }
}

namespace {

Rational sign_power(int k) { return (k % 2 == 0) ? Rational(1) : Rational(-1); }

std::string describe(const std::string& eq, int n, const Rational& q, const Rational& a) {
  std::ostringstream os;
  os << eq << " n=" << n << " q=" << q << " a=" << a;
  return os.str();
}

}  // namespace

Rational qbinomial_product_side(int n, const Rational& a, const Rational& b, const Rational& q) {
  Rational out(1);
  for (int i = 0; i < n; ++i) out *= a - b * q.pow(i);
  return out;
}

Rational qbinomial_sum_side(int n, const Rational& a, const Rational& b, const Rational& q) {
  Rational out;
  for (const auto& term : qbinomial_expand(n)) {
    out += term.coefficient.evaluate(q) * a.pow(term.power_of_a) * b.pow(term.power_of_b);
  }
  return out;
}

Rational forward_product_side(int n, const Rational& a, const Rational& q) {
  Rational out(1);
  for (int i = 1; i <= n - 1; ++i) out *= a - q.pow(i);
  return out;
}

Rational forward_sum_side(int n, const Rational& a, const Rational& q) {
  Rational out;
  for (int k = 0; k <= n - 1; ++k) {
    out += sign_power(k) * q.pow(k * (k + 1) / 2) * q_binomial(n - 1, k).evaluate(q) * a.pow(n - 1 - k);
  }
  return out;
}

Rational even_product_side(int m, const Rational& a, const Rational& q) {
  Rational out(1);
  for (int i = 1; i <= m - 1; ++i) out *= a - q.pow(2 * i);
  return out;
}

Rational even_sum_side(int m, const Rational& a, const Rational& q) {
  const Rational q2 = q * q;
  Rational out;
  for (int k = 0; k <= m - 1; ++k) {
    out += sign_power(k) * q.pow(k * (k + 1)) * q_binomial(m - 1, k).evaluate(q2) * a.pow(m - 1 - k);
  }
  return out;
}

Rational odd_product_side(int m, const Rational& a, const Rational& q) {
  Rational out(1);
  for (int i = 1; i <= m - 1; ++i) out *= a - q.pow(2 * i - 1);
  return out;
}

Rational odd_sum_side(int m, const Rational& a, const Rational& q) {
  const Rational q2 = q * q;
  Rational out;
  for (int k = 0; k <= m - 1; ++k) {
    out += sign_power(k) * q.pow(k * k) * q_binomial(m - 1, k).evaluate(q2) * a.pow(m - 1 - k);
  }
  return out;
}

SuiteResult check_pascal(int max_n) {
  SuiteResult r;
  r.name = "q-pascal";
  for (int n = 2; n <= max_n; ++n) {
    for (int k = 1; k <= n - 1; ++k) {
      r.record(pascal_check(n, k), "pascal n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  }
  return r;
}

SuiteResult check_qbinomial_structure(int max_n) {
  SuiteResult r;
  r.name = "q-binomial structure";
  for (int n = 0; n <= max_n; ++n) {
    for (int k = 0; k <= n; ++k) {
      const std::string tag = "n=" + std::to_string(n) + " k=" + std::to_string(k);
      const QPolynomial p = q_binomial(n, k);
      r.record(p == q_binomial(n, n - k), "palindromy " + tag);
      r.record(p.evaluate(1) == Rational(binomial(n, k)), "classical limit " + tag);
      r.record(p == q_binomial_by_factorials(n, k), "factorial quotient " + tag);
    }
  }
  return r;
}

SuiteResult check_qbinomial_formula(int max_n, int samples, std::uint64_t seed) {
  SuiteResult r;
  r.name = "q-binomial formula";
  RationalSampler rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Rational a = rng.any(), b = rng.any(), q = rng.any();
    for (int n = 1; n <= max_n; ++n) {
      r.record(qbinomial_product_side(n, a, b, q) == qbinomial_sum_side(n, a, b, q),
               describe("q-binomial formula", n, q, a) + " b=" + b.str());
    }
  }
  return r;
}

SuiteResult check_forward_specialisations(int max_n, int samples, std::uint64_t seed) {
  SuiteResult r;
  r.name = "forward specialisations";
  RationalSampler rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Rational q = rng.generic_q();
    const Rational a = rng.any();
    for (int n = 1; n <= max_n; ++n) {
      r.record(forward_product_side(n, a, q) == forward_sum_side(n, a, q), describe("b=q expansion", n, q, a));

      Rational prod_one(1);
      for (int i = 1; i <= n - 1; ++i) prod_one *= Rational(1) - q.pow(i);
      r.record(forward_sum_side(n, 1, q) - prod_one == 0, describe("a=1 specialisation", n, q, 1));

      for (int j = 1; j <= n - 1; ++j) {
        r.record(forward_sum_side(n, q.pow(j), q) == 0, describe("a=q^j specialisation", n, q, q.pow(j)));
      }

      Rational prod_n(1);
      for (int i = 1; i <= n - 1; ++i) prod_n *= q.pow(n) - q.pow(i);
      r.record(forward_sum_side(n, q.pow(n), q) == prod_n, describe("a=q^n specialisation", n, q, q.pow(n)));
    }
  }
  return r;
}

SuiteResult check_symmetric_specialisations(int max_m, int samples, std::uint64_t seed) {
  SuiteResult r;
  r.name = "symmetric specialisations";
  RationalSampler rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Rational q = rng.generic_q();
    const Rational a = rng.any();
    for (int m = 1; m <= max_m; ++m) {
      r.record(even_product_side(m, a, q) == even_sum_side(m, a, q), describe("even expansion", m, q, a));
      r.record(odd_product_side(m, a, q) == odd_sum_side(m, a, q), describe("odd expansion", m, q, a));

      for (int j = 1; j <= m - 1; ++j) {
        r.record(even_sum_side(m, q.pow(2 * j), q) == 0, describe("even a=q^2j", m, q, q.pow(2 * j)));
        r.record(odd_sum_side(m, q.pow(2 * j - 1), q) == 0, describe("odd a=q^(2j-1)", m, q, q.pow(2 * j - 1)));
      }

      Rational even_one(1), odd_one(1);
      for (int i = 1; i <= m - 1; ++i) {
        even_one *= Rational(1) - q.pow(2 * i);
        odd_one *= Rational(1) - q.pow(2 * i - 1);
      }
      r.record(even_sum_side(m, 1, q) == even_one, describe("even a=1", m, q, 1));
      r.record(odd_sum_side(m, 1, q) == odd_one, describe("odd a=1", m, q, 1));

      // a = q^n with n = 2m (even order) and n = 2m - 1 (odd order)
      const int even_n = 2 * m, odd_n = 2 * m - 1;
      Rational even_top(1), odd_top(1);
      for (int i = 1; i <= m - 1; ++i) {
        even_top *= q.pow(even_n) - q.pow(2 * i);
        odd_top *= q.pow(odd_n) - q.pow(2 * i - 1);
      }
      r.record(even_sum_side(m, q.pow(even_n), q) == even_top, describe("even a=q^n", m, q, q.pow(even_n)));
      r.record(odd_sum_side(m, q.pow(odd_n), q) == odd_top, describe("odd a=q^n", m, q, q.pow(odd_n)));
    }
  }
  return r;
}

}  // namespace qstencil
