#include "qstencil/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qstencil/errors.hpp"

namespace qstencil {

// --- ExponentialSum ----------------------------------------------------------

ExponentialSum::ExponentialSum(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.coeff.is_zero()) throw std::invalid_argument("exponential sum coefficient must be nonzero");
    if (t.base.sign() <= 0) throw std::invalid_argument("exponential sum base must be positive");
  }
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.base > b.base; });
  for (std::size_t i = 1; i < terms_.size(); ++i) {
    if (terms_[i].base == terms_[i - 1].base) throw std::invalid_argument("exponential sum bases must be distinct");
  }
}

double ExponentialSum::eval(double s) const {
  long double sum = 0;
  for (const auto& t : terms_) {
    sum += static_cast<long double>(t.coeff.to_double()) *
           std::pow(static_cast<long double>(t.base.to_double()), static_cast<long double>(s));
  }
  return static_cast<double>(sum);
}

Rational ExponentialSum::eval_exact(unsigned s) const {
  Rational sum;
  for (const auto& t : terms_) sum += t.coeff * t.base.pow(s);
  return sum;
}

std::optional<Rational> ExponentialSum::ratio_to(const ExponentialSum& other) const {
  if (terms_.size() != other.terms_.size() || terms_.empty()) return std::nullopt;
  const Rational c = terms_[0].coeff / other.terms_[0].coeff;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].base != other.terms_[i].base || terms_[i].coeff != c * other.terms_[i].coeff) return std::nullopt;
  }
  return c;
}

std::string ExponentialSum::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    const Rational mag = t.coeff.abs();
    if (i == 0) {
      if (t.coeff.sign() < 0) os << "-";
    } else {
      os << (t.coeff.sign() < 0 ? " - " : " + ");
    }
    if (t.base == Rational(1)) {
      os << mag;
      continue;
    }
    if (mag != Rational(1)) os << mag << "*";
    if (t.base.is_integer()) {
      os << t.base << "^s";
    } else {
      os << "(" << t.base << ")^s";
    }
  }
  return os.str();
}

Rational eval_exact(const ExponentialSum& phi, unsigned s) { return phi.eval_exact(s); }

ExponentialSum phi_from_stencil(const Stencil& s, const GroupFunction& f) {
  std::vector<ExponentialSum::Term> terms;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const Rational& a = s.nodes()[k];
    if (a.sign() <= 0) continue;
    const auto e = membership(f.group(), a);
    if (!e) continue;
    terms.push_back({s.coeffs()[k] * Rational(f.character_sign(*e)), a});
  }
  return ExponentialSum(std::move(terms));
}

// --- Root finding ------------------------------------------------------------

namespace {

int sign_at(const ExponentialSum& phi, double s) {
  if (s >= 0 && s <= 1e4 && std::floor(s) == s) return phi.eval_exact(static_cast<unsigned>(s)).sign();
  const double v = phi.eval(s);
  return (v > 0) - (v < 0);
}

}  // namespace

double find_exponent(const ExponentialSum& phi, double lo, double hi, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("find_exponent: tol must be positive");
  if (!(lo < hi)) throw std::invalid_argument("find_exponent: need lo < hi");
  const int sign_lo = sign_at(phi, lo);
  const int sign_hi = sign_at(phi, hi);
  if (sign_lo * sign_hi >= 0) {
    std::ostringstream os;
    os << "find_exponent: phi has no sign change on [" << lo << ", " << hi << "]";
    throw PreconditionError(os.str());
  }
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    const int sign_mid = sign_at(phi, mid);
    if (sign_mid == 0) return mid;
    (sign_mid == sign_lo ? lo : hi) = mid;
  }
  return lo + (hi - lo) / 2;
}

// --- Verification ------------------------------------------------------------

namespace {

// Smallest prime >= 11 outside the generator set.
long outside_prime(const MultiplicativeGroup& group) {
  for (long p = 11;; p += 2) {
    if (mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 25) != 0 && !group.contains_prime(p)) return p;
  }
}

bool in_group(const MultiplicativeGroup& group, const Rational& x) {
  return x.sign() > 0 && membership(group, x).has_value();
}

}  // namespace

std::vector<Rational> default_h_samples(const MultiplicativeGroup& group, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> exponent(-6, 6);
  const Rational outsider(outside_prime(group));
  std::vector<Rational> out;
  out.reserve(2 * static_cast<std::size_t>(count));
  const auto random_member = [&] {
    GroupElement e{std::vector<long>(group.rank())};
    for (auto& x : e.exponents) x = exponent(rng);
    return e.value(group);
  };
  for (int i = 0; i < count; ++i) out.push_back(random_member());
  for (int i = 0; i < count; ++i) {
    Rational h = random_member();
    switch (i % 4) {
      case 0: h *= outsider; break;
      case 1: h /= outsider; break;
      case 2: h = -(h * outsider); break;
      default: h = -h; break;
    }
    out.push_back(std::move(h));
  }
  return out;
}

CounterexampleChecks verify_counterexample(const Stencil& s, const GroupFunction& f, int lower_order,
                                           std::span<const Rational> h_samples) {
  CounterexampleChecks out;
  const FunctionHandle handle = FunctionHandle::group(f);
  const MultiplicativeGroup& group = f.group();
  const double exponent = f.exponent();

  // (a) vanishing difference
  out.difference_vanishes = true;
  for (const Rational& h : h_samples) {
    if (h.is_zero()) continue;
    bool touches_group = false;
    double scale_sum = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      const Rational point = s.nodes()[k] * h;
      if (in_group(group, point)) {
        touches_group = true;
        scale_sum += std::abs(s.coeffs()[k].to_double() * f.evaluate(point));
      }
    }
    bool ok;
    if (!touches_group) {
      ok = apply_difference(s, handle, Rational(0), h) == 0.0;
    } else if (f.has_integer_exponent()) {
      ok = apply_difference_exact(s, handle, Rational(0), h).is_zero();
    } else {
      ok = std::abs(apply_difference(s, handle, Rational(0), h)) <= kVanishTolerance * scale_sum;
    }
    if (!ok) {
      out.difference_vanishes = false;
      out.failures.push_back("difference does not vanish at h=" + h.str());
      break;
    }
  }

  // (b) lower-order Peano bound on |h| <= 1
  std::vector<Rational> small;
  for (const Rational& h : h_samples) {
    if (!h.is_zero() && h.abs() <= Rational(1)) small.push_back(h);
  }
  for (long g : group.generators()) {
    for (int j = 1; j <= 30; ++j) small.push_back(Rational(g).pow(-j));
  }
  const double eps = (exponent - lower_order) / 2;
  out.lower_peano_bound = eps > 0 && peano_bound_check(handle, Rational(0), lower_order, eps, small);
  if (!out.lower_peano_bound) {
    out.failures.push_back("f(h) is not o(h^" + std::to_string(lower_order) + ") on the samples");
  }

  // (c) the order-n quotient f(h)/h^n has no limit
  const long g1 = group.generators().front();
  const Rational outsider(outside_prime(group));
  const int n = s.order();
  double largest = 0;
  bool bounded_away = true;
  for (int j = 1; j <= 60; ++j) {
    const Rational h = Rational(g1).pow(-j);
    const long double hn = std::pow(static_cast<long double>(g1), -static_cast<long double>(j) * n);
    const double ratio = static_cast<double>(f.evaluate(h) / hn);
    largest = std::max(largest, std::abs(ratio));
    if (j > 50) {
      const bool off_group_zero = f.evaluate(h * outsider) == 0.0;
      bounded_away = bounded_away && std::abs(ratio) >= 1e-6 && off_group_zero;
    }
  }
  out.nth_unbounded = largest > kUnboundedThreshold || bounded_away;
  if (!out.nth_unbounded) {
    out.failures.push_back("f(h)/h^" + std::to_string(n) + " shows no divergence along h = " + std::to_string(g1) +
                           "^-j");
  }
  return out;
}

// --- Character search --------------------------------------------------------

std::vector<CharacterSearchRow> character_search(const Stencil& s, const std::vector<long>& generators, unsigned lo,
                                                 unsigned hi) {
  if (lo >= hi) throw std::invalid_argument("character_search: need lo < hi");
  const MultiplicativeGroup group(generators);
  const std::size_t k = group.rank();
  std::vector<CharacterSearchRow> rows;
  rows.reserve(std::size_t{1} << k);
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<int> bits(k);
    for (std::size_t i = 0; i < k; ++i) bits[i] = static_cast<int>((mask >> i) & 1U);
    const GroupFunction f(group, bits, 1.0);
    ExponentialSum phi = phi_from_stencil(s, f);
    Rational at_lo = phi.eval_exact(lo), at_hi = phi.eval_exact(hi);
    const bool change = at_lo.sign() * at_hi.sign() < 0;
    rows.push_back({std::move(bits), std::move(phi), std::move(at_lo), std::move(at_hi), change});
  }
  return rows;
}

// --- Named cases -------------------------------------------------------------

namespace {

ExponentialSum sum_of(std::initializer_list<std::pair<long, long>> coeff_base) {
  std::vector<ExponentialSum::Term> terms;
  for (const auto& [c, b] : coeff_base) terms.push_back({Rational(c), Rational(b)});
  return ExponentialSum(std::move(terms));
}

}  // namespace

std::vector<std::string> named_case_ids() {
  return {"prop25", "thm32a", "thm32-n5", "thm32-n6", "thm32-n7", "thm32-n8", "search-n9"};
}

CounterexampleCase named_case(std::string_view id) {
  if (id == "prop25") {
    Stencil s(2, {1, 2, 3}, {1, -2, 1});
    return {"prop25", s, MultiplicativeGroup({2, 3}), {1, 1}, 1, 3, 1, sum_of({{-1, 3}, {2, 2}, {1, 1}})};
  }
  if (id == "thm32a") {
    return {"thm32a",        riemann_classic(7), MultiplicativeGroup({2, 3, 5, 7}), {0, 1, 1, 0}, 6, 7, 6,
            sum_of({{1, 7}, {7, 6}, {-21, 5}, {-35, 4}, {-35, 3}, {-21, 2}, {7, 1}})};
  }
  if (id == "thm32-n5") {
    return {"thm32-n5", integer_node_form(riemann_symmetric(5)), MultiplicativeGroup({3, 5}), {1, 1}, 3, 4, 3,
            sum_of({{1, 5}, {-5, 3}, {-10, 1}})};
  }
  if (id == "thm32-n6") {
    return {"thm32-n6", riemann_symmetric(6), MultiplicativeGroup({2, 3}), {1, 1}, 4, 5, 4,
            sum_of({{1, 3}, {-6, 2}, {-15, 1}})};
  }
  if (id == "thm32-n7") {
    return {"thm32-n7", integer_node_form(riemann_symmetric(7)), MultiplicativeGroup({3, 5, 7}), {0, 1, 1}, 5, 7, 5,
            sum_of({{1, 7}, {-7, 5}, {-21, 3}, {35, 1}})};
  }
  if (id == "thm32-n8") {
    return {"thm32-n8", riemann_symmetric(8), MultiplicativeGroup({2, 3}), {1, 0}, 7, 8, 6,
            sum_of({{1, 4}, {-8, 3}, {-28, 2}, {-56, 1}})};
  }
  if (id == "search-n9") {
    CounterexampleCase c{"search-n9", integer_node_form(riemann_symmetric(9)), MultiplicativeGroup({3, 5, 7}), {}, 7, 9, 7, std::nullopt};
    c.is_search = true;
    return c;
  }
  throw std::invalid_argument("unknown counterexample case '" + std::string(id) + "'");
}

CounterexampleReport run_case(const CounterexampleCase& c, const RunOptions& options) {
  if (c.is_search) throw std::invalid_argument("case '" + c.id + "' is a character search; use run_search");
  const GroupFunction shape(c.group, c.character, 1.0);
  ExponentialSum phi = phi_from_stencil(c.stencil, shape);
  Rational at_lo = phi.eval_exact(c.lo), at_hi = phi.eval_exact(c.hi);
  const double root = find_exponent(phi, c.lo, c.hi, options.tol);
  const GroupFunction f = shape.with_exponent(root);
  const auto samples = default_h_samples(c.group, options.sample_count, options.seed);
  CounterexampleChecks checks = verify_counterexample(c.stencil, f, c.lower_order, samples);
  return {c.stencil, c.group.generators(), c.character, c.lo, c.hi, root, std::move(phi), std::move(at_lo),
          std::move(at_hi), std::move(checks)};
}

std::size_t SearchReport::sign_changes() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.sign_change; }));
}

SearchReport run_search(const CounterexampleCase& c) {
  return {c.stencil, c.group.generators(), c.lo, c.hi, character_search(c.stencil, c.group.generators(), c.lo, c.hi)};
}

}  // namespace qstencil
