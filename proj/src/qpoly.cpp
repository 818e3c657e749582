#include "qstencil/qpoly.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace qstencil {

QPolynomial::QPolynomial(std::vector<mpz_class> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

QPolynomial QPolynomial::constant(const mpz_class& c) { return QPolynomial({c}); }

QPolynomial QPolynomial::monomial(const mpz_class& c, unsigned degree) {
  std::vector<mpz_class> v(degree + 1, 0);
  v[degree] = c;
  return QPolynomial(std::move(v));
}

void QPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class QPolynomial::coefficient(unsigned power) const {
  return power < coeffs_.size() ? coeffs_[power] : mpz_class(0);
}

Rational QPolynomial::evaluate(const Rational& q) const {
  // Horner
  Rational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q + Rational(*it);
  return acc;
}

QPolynomial QPolynomial::substitute_power(unsigned k) const {
  if (k == 0) throw std::invalid_argument("substitute_power: k must be positive");
  if (is_zero()) return {};
  std::vector<mpz_class> v(static_cast<std::size_t>(degree()) * k + 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i * k] = coeffs_[i];
  return QPolynomial(std::move(v));
}

QPolynomial QPolynomial::divide_exact(const QPolynomial& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  if (is_zero()) return {};
  if (degree() < divisor.degree()) throw std::domain_error("inexact polynomial division");
  std::vector<mpz_class> rem = coeffs_;
  const auto dn = static_cast<std::size_t>(divisor.degree());
  const mpz_class& lead = divisor.coeffs_.back();
  std::vector<mpz_class> quot(rem.size() - dn, 0);
  for (std::size_t i = quot.size(); i-- > 0;) {
    const mpz_class& top = rem[i + dn];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) {
      throw std::domain_error("inexact polynomial division (non-integer quotient)");
    }
    mpz_class factor = top / lead;
    for (std::size_t j = 0; j <= dn; ++j) rem[i + j] -= factor * divisor.coeffs_[j];
    quot[i] = std::move(factor);
  }
  for (const auto& r : rem) {
    if (r != 0) throw std::domain_error("inexact polynomial division (nonzero remainder)");
  }
  return QPolynomial(std::move(quot));
}

QPolynomial QPolynomial::operator-() const {
  QPolynomial out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

QPolynomial& QPolynomial::operator+=(const QPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

QPolynomial& QPolynomial::operator-=(const QPolynomial& rhs) { return *this += -rhs; }

QPolynomial& QPolynomial::operator*=(const QPolynomial& rhs) {
  if (is_zero() || rhs.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<mpz_class> out(coeffs_.size() + rhs.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

std::string QPolynomial::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const mpz_class& c = coeffs_[i];
    if (c == 0) continue;
    const mpz_class mag = ::abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i >= 1) os << "q";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

// --- q-analogues ------------------------------------------------------------

QPolynomial q_integer(int n) {
  if (n < 1) throw std::invalid_argument("q_integer: n must be >= 1");
  return QPolynomial(std::vector<mpz_class>(static_cast<std::size_t>(n), 1));
}

QPolynomial q_factorial(int n) {
  if (n < 0) throw std::invalid_argument("q_factorial: n must be >= 0");
  QPolynomial out = QPolynomial::constant(1);
  for (int i = 1; i <= n; ++i) out *= q_integer(i);
  return out;
}

namespace {

std::mutex g_binomial_mutex;
std::map<std::pair<int, int>, QPolynomial> g_binomial_memo;

// [N k] = [N-1 k] + q^(N-k) [N-1 k-1]
QPolynomial q_binomial_locked(int n, int k) {
  if (k < 0 || k > n) return {};
  if (k == 0 || k == n) return QPolynomial::constant(1);
  const auto key = std::make_pair(n, k);
  if (auto it = g_binomial_memo.find(key); it != g_binomial_memo.end()) return it->second;
  QPolynomial value = q_binomial_locked(n - 1, k) +
                      QPolynomial::monomial(1, static_cast<unsigned>(n - k)) * q_binomial_locked(n - 1, k - 1);
  g_binomial_memo.emplace(key, value);
  return value;
}

}  // namespace

QPolynomial q_binomial(int n, int k) {
  if (n < 0) throw std::invalid_argument("q_binomial: n must be >= 0");
  std::lock_guard lock(g_binomial_mutex);
  return q_binomial_locked(n, k);
}

QPolynomial q_binomial_by_factorials(int n, int k) {
  if (n < 0) throw std::invalid_argument("q_binomial_by_factorials: n must be >= 0");
  if (k < 0 || k > n) return {};
  return q_factorial(n).divide_exact(q_factorial(n - k) * q_factorial(k));
}

std::vector<QBinomialTerm> qbinomial_expand(int n) {
  if (n < 1) throw std::invalid_argument("qbinomial_expand: n must be >= 1");
  std::vector<QBinomialTerm> terms;
  terms.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const mpz_class sign = (k % 2 == 0) ? 1 : -1;
    QPolynomial coeff = QPolynomial::monomial(sign, static_cast<unsigned>(k * (k - 1) / 2)) * q_binomial(n, k);
    terms.push_back({std::move(coeff), n - k, k});
  }
  return terms;
}

bool pascal_check(int n, int k) {
  if (n < 2 || k < 1 || k > n - 1) {
    throw std::invalid_argument("pascal_check: requires n >= 2 and 1 <= k <= n-1");
  }
  const QPolynomial lhs = q_binomial_by_factorials(n - 1, k);
  const QPolynomial rhs = q_binomial_by_factorials(n - 2, k) +
                          QPolynomial::monomial(1, static_cast<unsigned>(n - 1 - k)) *
                              q_binomial_by_factorials(n - 2, k - 1);
  return lhs == rhs;
}

}  // namespace qstencil
