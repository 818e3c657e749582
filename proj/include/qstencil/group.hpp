#pragma once

#include <optional>
#include <vector>

#include "qstencil/rational.hpp"

namespace qstencil {

/// Subgroup of the positive rationals generated by distinct primes.
class MultiplicativeGroup {
 public:
  /// Throws std::invalid_argument unless the generators are distinct primes.
  explicit MultiplicativeGroup(std::vector<long> generators);

  const std::vector<long>& generators() const { return generators_; }
  std::size_t rank() const { return generators_.size(); }
  bool contains_prime(long p) const;

  friend bool operator==(const MultiplicativeGroup&, const MultiplicativeGroup&) = default;

 private:
  std::vector<long> generators_;
};

/// Exponent vector aligned with a group's generators.
struct GroupElement {
  std::vector<long> exponents;

  Rational value(const MultiplicativeGroup& group) const;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// Exponent vector of x if it factors completely over the generators.
/// Throws std::invalid_argument for x <= 0.
std::optional<GroupElement> membership(const MultiplicativeGroup& group, const Rational& x);

/// f(x) = (-1)^(c . e) x^s for x = prod g_i^(e_i) in G, and 0 off G
/// (in particular f vanishes on x <= 0).
class GroupFunction {
 public:
  /// `character` holds one bit per generator; exponent must be positive.
  GroupFunction(MultiplicativeGroup group, std::vector<int> character, double exponent);

  const MultiplicativeGroup& group() const { return group_; }
  const std::vector<int>& character() const { return character_; }
  double exponent() const { return exponent_; }
  GroupFunction with_exponent(double exponent) const { return {group_, character_, exponent}; }

  /// +1 or -1.
  int character_sign(const GroupElement& e) const;

  double evaluate(const Rational& x) const;
  /// The double is read as the exact dyadic rational it stores.
  double evaluate(double x) const;

  /// Exact value when the exponent is a nonnegative integer; nullopt otherwise.
  std::optional<Rational> evaluate_exact(const Rational& x) const;
  bool has_integer_exponent() const;

 private:
  MultiplicativeGroup group_;
  std::vector<int> character_;
  double exponent_;
};

}  // namespace qstencil
