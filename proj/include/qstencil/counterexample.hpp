#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qstencil/evaluator.hpp"
#include "qstencil/group.hpp"
#include "qstencil/rational.hpp"
#include "qstencil/stencil.hpp"

namespace qstencil {

/// phi(s) = sum_i c_i b_i^s with nonzero coefficients and distinct positive bases.
class ExponentialSum {
 public:
  struct Term {
    Rational coeff;
    Rational base;
    friend bool operator==(const Term&, const Term&) = default;
  };

  ExponentialSum() = default;
  explicit ExponentialSum(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }

  double eval(double s) const;
  /// Exact value at a nonnegative integer exponent.
  Rational eval_exact(unsigned s) const;

  /// Nonzero c with *this == c * other term by term.
  std::optional<Rational> ratio_to(const ExponentialSum& other) const;

  std::string str() const;

  friend bool operator==(const ExponentialSum&, const ExponentialSum&) = default;

 private:
  std::vector<Term> terms_;  // sorted by descending base
};

Rational eval_exact(const ExponentialSum& phi, unsigned s);

/// phi with Delta(0, h; f) = chi(h) phi(s) h^s for every h in G, h > 0.
/// One term per positive node lying in G; other nodes contribute nothing
/// because f vanishes there.
ExponentialSum phi_from_stencil(const Stencil& s, const GroupFunction& f);

/// Plain sign bisection on [lo, hi] until the bracket is at most tol wide
/// (at most 200 halvings). Integer endpoints have their signs evaluated
/// exactly. PreconditionError without a strict sign change.
double find_exponent(const ExponentialSum& phi, double lo, double hi, double tol);

struct CounterexampleChecks {
  bool difference_vanishes = false;
  bool lower_peano_bound = false;
  bool nth_unbounded = false;
  std::vector<std::string> failures;

  bool all_passed() const { return difference_vanishes && lower_peano_bound && nth_unbounded; }
};

/// Relative tolerance for the vanishing-difference check.
inline constexpr double kVanishTolerance = 1e-9;
/// |f(h) / h^n| above this along h = g_1^-j is read as unbounded.
inline constexpr double kUnboundedThreshold = 1e6;

/// Step samples: random members of G (both signs) and non-members built by a
/// prime outside the generator set. Deterministic in `seed`.
std::vector<Rational> default_h_samples(const MultiplicativeGroup& group, int count, std::uint64_t seed);

/// (a) the difference at 0 vanishes on every sampled h (exactly when every
///     node multiple lies off G or the exponent is an integer, otherwise
///     relative to sum_k |A_k f(a_k h)|);
/// (b) |f(h)| <= |h|^(lower_order + eps) with eps = (s - lower_order) / 2 on
///     the samples with |h| <= 1;
/// (c) f(h)/h^n does not converge along h = g_1^-j, j <= 60: it exceeds
///     1e6 in magnitude, or it stays bounded away from 0 on G while f
///     vanishes on the off-group points 11 g_1^-j.
CounterexampleChecks verify_counterexample(const Stencil& s, const GroupFunction& f, int lower_order,
                                           std::span<const Rational> h_samples);

struct CharacterSearchRow {
  std::vector<int> character;
  ExponentialSum phi;
  Rational phi_lo;
  Rational phi_hi;
  bool sign_change = false;
};

/// All 2^k characters, in index order (bit i of the index is the bit of
/// generator i), with exact phi at the integer endpoints.
std::vector<CharacterSearchRow> character_search(const Stencil& s, const std::vector<long>& generators, unsigned lo,
                                                 unsigned hi);

// --- Named reproductions --------------------------------------------------

struct CounterexampleCase {
  std::string id;
  Stencil stencil;
  MultiplicativeGroup group;
  std::vector<int> character;  // empty for searches
  unsigned lo = 0;
  unsigned hi = 0;
  int lower_order = 0;
  /// The exponential sum as written out by hand for this case, up to a
  /// nonzero factor; empty for searches.
  std::optional<ExponentialSum> reference_phi;
  bool is_search = false;
};

/// prop25, thm32a, thm32-n5, thm32-n6, thm32-n7, thm32-n8, search-n9.
std::vector<std::string> named_case_ids();
CounterexampleCase named_case(std::string_view id);

struct CounterexampleReport {
  Stencil stencil;
  std::vector<long> generators;
  std::vector<int> character;
  unsigned lo = 0;
  unsigned hi = 0;
  double exponent = 0;
  ExponentialSum phi;
  Rational phi_lo;
  Rational phi_hi;
  CounterexampleChecks checks;

  bool passed() const { return checks.all_passed(); }
};

struct RunOptions {
  double tol = 1e-12;
  int sample_count = 100;
  std::uint64_t seed = 20220926;
};

/// Endpoint evaluation, bisection, and verify_counterexample for a
/// non-search case. PreconditionError when phi has no sign change.
CounterexampleReport run_case(const CounterexampleCase& c, const RunOptions& options = {});

struct SearchReport {
  Stencil stencil;
  std::vector<long> generators;
  unsigned lo = 0;
  unsigned hi = 0;
  std::vector<CharacterSearchRow> rows;

  std::size_t sign_changes() const;
};

SearchReport run_search(const CounterexampleCase& c);

}  // namespace qstencil
