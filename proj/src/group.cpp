#include "qstencil/group.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qstencil {

MultiplicativeGroup::MultiplicativeGroup(std::vector<long> generators) : generators_(std::move(generators)) {
  if (generators_.empty()) throw std::invalid_argument("group needs at least one generator");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const long g = generators_[i];
    if (g < 2 || mpz_probab_prime_p(mpz_class(g).get_mpz_t(), 25) == 0) {
      throw std::invalid_argument("group generator " + std::to_string(g) + " is not a prime");
    }
    if (std::find(generators_.begin(), generators_.begin() + static_cast<long>(i), g) !=
        generators_.begin() + static_cast<long>(i)) {
      throw std::invalid_argument("repeated group generator " + std::to_string(g));
    }
  }
}

bool MultiplicativeGroup::contains_prime(long p) const {
  return std::find(generators_.begin(), generators_.end(), p) != generators_.end();
}

Rational GroupElement::value(const MultiplicativeGroup& group) const {
  if (exponents.size() != group.rank()) throw std::invalid_argument("exponent vector does not match group rank");
  Rational out(1);
  for (std::size_t i = 0; i < exponents.size(); ++i) out *= Rational(group.generators()[i]).pow(exponents[i]);
  return out;
}

namespace {

// Strips every generator from `v`, accumulating multiplicities with `sign`.
void strip(mpz_class& v, const std::vector<long>& gens, std::vector<long>& exps, long sign) {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const mpz_class g = gens[i];
    while (mpz_divisible_p(v.get_mpz_t(), g.get_mpz_t()) != 0) {
      v /= g;
      exps[i] += sign;
    }
  }
}

}  // namespace

std::optional<GroupElement> membership(const MultiplicativeGroup& group, const Rational& x) {
  if (x.sign() <= 0) throw std::invalid_argument("membership: x must be positive, got " + x.str());
  std::vector<long> exps(group.rank(), 0);
  mpz_class num = x.num(), den = x.den();
  strip(num, group.generators(), exps, +1);
  strip(den, group.generators(), exps, -1);
  if (num != 1 || den != 1) return std::nullopt;
  return GroupElement{std::move(exps)};
}

GroupFunction::GroupFunction(MultiplicativeGroup group, std::vector<int> character, double exponent)
    : group_(std::move(group)), character_(std::move(character)), exponent_(exponent) {
  if (character_.size() != group_.rank()) throw std::invalid_argument("character needs one bit per generator");
  for (int bit : character_) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("character bits must be 0 or 1");
  }
  if (!(exponent_ > 0) || !std::isfinite(exponent_)) throw std::invalid_argument("group function exponent must be positive");
}

int GroupFunction::character_sign(const GroupElement& e) const {
  long parity = 0;
  for (std::size_t i = 0; i < character_.size(); ++i) parity += character_[i] * e.exponents[i];
  return (parity % 2 == 0) ? 1 : -1;
}

bool GroupFunction::has_integer_exponent() const { return std::floor(exponent_) == exponent_ && exponent_ < 1e6; }

double GroupFunction::evaluate(const Rational& x) const {
  if (x.sign() <= 0) return 0.0;
  const auto e = membership(group_, x);
  if (!e) return 0.0;
  return character_sign(*e) * static_cast<double>(std::pow(static_cast<long double>(x.to_double()),
                                                           static_cast<long double>(exponent_)));
}

double GroupFunction::evaluate(double x) const {
  if (!std::isfinite(x)) return 0.0;
  return evaluate(Rational::from_double(x));
}

std::optional<Rational> GroupFunction::evaluate_exact(const Rational& x) const {
  if (!has_integer_exponent()) return std::nullopt;
  if (x.sign() <= 0) return Rational();
  const auto e = membership(group_, x);
  if (!e) return Rational();
  return Rational(character_sign(*e)) * x.pow(static_cast<long>(exponent_));
}

}  // namespace qstencil
