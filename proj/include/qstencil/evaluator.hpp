#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qstencil/group.hpp"
#include "qstencil/rational.hpp"
#include "qstencil/stencil.hpp"

namespace qstencil {

/// The f in sum_k A_k f(x + a_k h).
///
/// abs, signpow(n) (x^n sgn x) and rational polynomials are rational-valued on
/// rationals and are always evaluated exactly. sin/cos/exp are evaluated in
/// 50-digit binary floating point so that high-order quotients are not
/// swamped by cancellation; results are returned as double.
class FunctionHandle {
 public:
  enum class Builtin { sin, cos, exp, abs, signpow };

  static FunctionHandle builtin(Builtin kind);
  static FunctionHandle signpow(int n);
  /// coeffs[i] multiplies x^i.
  static FunctionHandle polynomial(std::vector<Rational> coeffs);
  static FunctionHandle group(GroupFunction f);
  /// "sin", "cos", "exp", "abs", "signpow<n>".
  static FunctionHandle parse(std::string_view name);

  std::string name() const;

  /// True when evaluate_exact succeeds for every rational input.
  bool is_exact() const;
  std::optional<Rational> evaluate_exact(const Rational& x) const;
  double evaluate(const Rational& x) const;
  double evaluate(double x) const { return evaluate(Rational::from_double(x)); }

  // Internals shared with the evaluator translation unit.
  struct BuiltinFn {
    Builtin kind;
    int power = 0;
  };
  struct Polynomial {
    std::vector<Rational> coeffs;
  };
  using Variant = std::variant<BuiltinFn, Polynomial, std::shared_ptr<const GroupFunction>>;
  const Variant& variant() const { return impl_; }

 private:
  explicit FunctionHandle(Variant v) : impl_(std::move(v)) {}
  Variant impl_;
};

/// sum_k A_k f(x + a_k h). Exact internally whenever f is exact.
/// Throws std::invalid_argument for h = 0.
double apply_difference(const Stencil& s, const FunctionHandle& f, const Rational& x, const Rational& h);
double apply_difference(const Stencil& s, const FunctionHandle& f, double x, double h);
/// Exact value; std::invalid_argument if f is not exact.
Rational apply_difference_exact(const Stencil& s, const FunctionHandle& f, const Rational& x, const Rational& h);

/// apply_difference / h^n.
double difference_quotient(const Stencil& s, const FunctionHandle& f, const Rational& x, const Rational& h);
double difference_quotient(const Stencil& s, const FunctionHandle& f, double x, double h);
Rational difference_quotient_exact(const Stencil& s, const FunctionHandle& f, const Rational& x, const Rational& h);

/// The Gaussian difference quotient evaluated through the family's quotient
/// recursion instead of the stencil. Exact when f is exact.
double recursive_quotient(GaussianFamily family, int n, const Rational& q, const FunctionHandle& f,
                          const Rational& x, const Rational& h);
double recursive_quotient(GaussianFamily family, int n, const Rational& q, const FunctionHandle& f, double x,
                          double h);
Rational recursive_quotient_exact(GaussianFamily family, int n, const Rational& q, const FunctionHandle& f,
                                  const Rational& x, const Rational& h);

/// Smallest |h| accepted by the floating path for stencils of order >= 3.
inline constexpr double kMinFloatStep = 1e-8;

struct ConvergenceRow {
  double h;
  double quotient;
  double delta;  // |quotient - previous quotient|; NaN on the first row
};

struct ConvergenceVerdict {
  enum class Kind { converged, diverged, oscillating };
  Kind kind;
  double value = 0;      // converged only
  double est_error = 0;  // converged only
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  ConvergenceVerdict verdict;
  // Last quotient seen on each side of 0 (two-sided tables only).
  std::optional<double> limit_positive;
  std::optional<double> limit_negative;
};

struct EstimateOptions {
  bool two_sided = true;           // alternate the sign of h
  double tolerance = 1e-8;         // final delta must be below tolerance * max(1, |value|)
  double shrink_factor = 1.5;      // each of the last three deltas shrinks at least this much
  double divergence_bound = 1e12;  // |quotient| above this is divergence
};

/// Quotient table at h_i = h0 ratio^i (sign alternating when two-sided).
/// Requires h0 != 0, 0 < ratio < 1, 2 <= steps <= 60 (std::invalid_argument).
ConvergenceTable estimate_derivative(const Stencil& s, const FunctionHandle& f, double x, double h0, double ratio,
                                     int steps, const EstimateOptions& options = {});

/// "h,quotient,delta" rows followed by "# verdict: ..." on the last line.
std::string to_csv(const ConvergenceTable& table);
std::string verdict_string(const ConvergenceVerdict& v);

/// |f(x + h)| <= |h|^(m + epsilon_exponent) for every sampled h: a finite
/// witness that f(x + h) = o(h^m) for functions with no lower-order part.
bool peano_bound_check(const FunctionHandle& f, const Rational& x, int m, double epsilon_exponent,
                       std::span<const Rational> h_set);

}  // namespace qstencil
