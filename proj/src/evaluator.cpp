#include "qstencil/evaluator.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qstencil {

namespace {

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

HighPrecision to_hp(const Rational& r) {
  if (r.is_integer()) return HighPrecision(r.num().get_str());
  return HighPrecision(r.num().get_str()) / HighPrecision(r.den().get_str());
}

HighPrecision evaluate_hp(FunctionHandle::Builtin kind, const HighPrecision& x) {
  switch (kind) {
    case FunctionHandle::Builtin::sin: return boost::multiprecision::sin(x);
    case FunctionHandle::Builtin::cos: return boost::multiprecision::cos(x);
    case FunctionHandle::Builtin::exp: return boost::multiprecision::exp(x);
    default: break;
  }
  throw std::logic_error("builtin has an exact evaluation path");
}

void require_step(const Rational& h) {
  if (h.is_zero()) throw std::invalid_argument("step h must be nonzero");
}

void require_float_step(const Stencil& s, const FunctionHandle& f, const Rational& h) {
  if (s.order() >= 3 && !f.is_exact() && std::abs(h.to_double()) < kMinFloatStep) {
    throw std::invalid_argument("|h| below 1e-8 is rejected for floating quotients of order >= 3");
  }
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

// --- FunctionHandle --------------------------------------------------------

FunctionHandle FunctionHandle::builtin(Builtin kind) {
  if (kind == Builtin::signpow) throw std::invalid_argument("signpow needs a power; use FunctionHandle::signpow");
  return FunctionHandle(BuiltinFn{kind, 0});
}

FunctionHandle FunctionHandle::signpow(int n) {
  if (n < 0) throw std::invalid_argument("signpow power must be nonnegative");
  return FunctionHandle(BuiltinFn{Builtin::signpow, n});
}

FunctionHandle FunctionHandle::polynomial(std::vector<Rational> coeffs) {
  return FunctionHandle(Polynomial{std::move(coeffs)});
}

FunctionHandle FunctionHandle::group(GroupFunction f) {
  return FunctionHandle(std::make_shared<const GroupFunction>(std::move(f)));
}

FunctionHandle FunctionHandle::parse(std::string_view name) {
  if (name == "sin") return builtin(Builtin::sin);
  if (name == "cos") return builtin(Builtin::cos);
  if (name == "exp") return builtin(Builtin::exp);
  if (name == "abs") return builtin(Builtin::abs);
  constexpr std::string_view prefix = "signpow";
  if (name.substr(0, prefix.size()) == prefix && name.size() > prefix.size()) {
    int n = 0;
    const auto digits = name.substr(prefix.size());
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) return signpow(n);
  }
  throw std::invalid_argument("unknown function '" + std::string(name) + "' (sin, cos, exp, abs, signpow<n>)");
}

std::string FunctionHandle::name() const {
  return std::visit(Overloaded{
                        [](const BuiltinFn& b) -> std::string {
                          switch (b.kind) {
                            case Builtin::sin: return "sin";
                            case Builtin::cos: return "cos";
                            case Builtin::exp: return "exp";
                            case Builtin::abs: return "abs";
                            case Builtin::signpow: return "signpow" + std::to_string(b.power);
                          }
                          return "?";
                        },
                        [](const Polynomial&) -> std::string { return "polynomial"; },
                        [](const std::shared_ptr<const GroupFunction>&) -> std::string { return "group"; },
                    },
                    impl_);
}

bool FunctionHandle::is_exact() const {
  return std::visit(Overloaded{
                        [](const BuiltinFn& b) { return b.kind == Builtin::abs || b.kind == Builtin::signpow; },
                        [](const Polynomial&) { return true; },
                        [](const std::shared_ptr<const GroupFunction>& g) { return g->has_integer_exponent(); },
                    },
                    impl_);
}

std::optional<Rational> FunctionHandle::evaluate_exact(const Rational& x) const {
  return std::visit(Overloaded{
                        [&](const BuiltinFn& b) -> std::optional<Rational> {
                          if (b.kind == Builtin::abs) return x.abs();
                          if (b.kind == Builtin::signpow) return Rational(x.sign()) * x.pow(b.power);
                          return std::nullopt;
                        },
                        [&](const Polynomial& p) -> std::optional<Rational> {
                          Rational acc;
                          for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * x + *it;
                          return acc;
                        },
                        [&](const std::shared_ptr<const GroupFunction>& g) { return g->evaluate_exact(x); },
                    },
                    impl_);
}

double FunctionHandle::evaluate(const Rational& x) const {
  if (auto exact = evaluate_exact(x)) return exact->to_double();
  if (const auto* g = std::get_if<std::shared_ptr<const GroupFunction>>(&impl_)) return (*g)->evaluate(x);
  const auto& b = std::get<BuiltinFn>(impl_);
  return static_cast<double>(evaluate_hp(b.kind, to_hp(x)));
}

// --- Differences -------------------------------------------------------------

Rational apply_difference_exact(const Stencil& s, const FunctionHandle& f, const Rational& x, const Rational& h) {
  require_step(h);
  Rational sum;
  for (std::size_t k = 0; k < s.size(); ++k) {
    auto v = f.evaluate_exact(x + s.nodes()[k] * h);
    if (!v) throw std::invalid_argument("function '" + f.name() + "' has no exact evaluation");
    sum += s.coeffs()[k] * *v;
  }
  return sum;
}

namespace {

HighPrecision apply_difference_hp(const Stencil& s, FunctionHandle::Builtin kind, const Rational& x, const Rational& h) {
  HighPrecision sum = 0;
  for (std::size_t k = 0; k < s.size(); ++k) sum += to_hp(s.coeffs()[k]) * evaluate_hp(kind, to_hp(x + s.nodes()[k] * h));
  return sum;
}

double apply_difference_group(const Stencil& s, const GroupFunction& g, const Rational& x, const Rational& h) {
  long double sum = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    sum += static_cast<long double>(s.coeffs()[k].to_double()) * g.evaluate(x + s.nodes()[k] * h);
  }
  return static_cast<double>(sum);
}

}  // namespace

double apply_difference(const Stencil& s, const FunctionHandle& f, const Rational& x, const Rational& h) {
  require_step(h);
  if (f.is_exact()) return apply_difference_exact(s, f, x, h).to_double();
  if (const auto* g = std::get_if<std::shared_ptr<const GroupFunction>>(&f.variant())) {
    return apply_difference_group(s, **g, x, h);
  }
  const auto& b = std::get<FunctionHandle::BuiltinFn>(f.variant());
  return static_cast<double>(apply_difference_hp(s, b.kind, x, h));
}

double apply_difference(const Stencil& s, const FunctionHandle& f, double x, double h) {
  return apply_difference(s, f, Rational::from_double(x), Rational::from_double(h));
}

Rational difference_quotient_exact(const Stencil& s, const FunctionHandle& f, const Rational& x, const Rational& h) {
  return apply_difference_exact(s, f, x, h) / h.pow(s.order());
}

double difference_quotient(const Stencil& s, const FunctionHandle& f, const Rational& x, const Rational& h) {
  require_step(h);
  if (f.is_exact()) return difference_quotient_exact(s, f, x, h).to_double();
  require_float_step(s, f, h);
  if (const auto* g = std::get_if<std::shared_ptr<const GroupFunction>>(&f.variant())) {
    return apply_difference_group(s, **g, x, h) / h.pow(s.order()).to_double();
  }
  const auto& b = std::get<FunctionHandle::BuiltinFn>(f.variant());
  return static_cast<double>(apply_difference_hp(s, b.kind, x, h) / to_hp(h.pow(s.order())));
}

double difference_quotient(const Stencil& s, const FunctionHandle& f, double x, double h) {
  return difference_quotient(s, f, Rational::from_double(x), Rational::from_double(h));
}

// --- Quotient recursions -----------------------------------------------------

namespace {

template <class T, class Eval, class Conv>
T recursive_impl(GaussianFamily family, int n, const Rational& q, const Eval& f, const Conv& conv, const Rational& x,
                 const Rational& h) {
  const auto step = [&](int lower, const Rational& divisor) {
    const T outer = recursive_impl<T>(family, lower, q, f, conv, x, q * h);
    const T inner = recursive_impl<T>(family, lower, q, f, conv, x, h);
    return (outer - inner) / conv(divisor);
  };
  switch (family) {
    case GaussianFamily::forward:
      if (n == 1) return (f(x + h) - f(x)) / conv(h);
      return conv(Rational(n)) * step(n - 1, (q.pow(n - 1) - 1) * h);
    case GaussianFamily::shifted:
      if (n == 1) return (f(x + q * h) - f(x + h)) / conv((q - 1) * h);
      return conv(Rational(n)) * step(n - 1, (q.pow(n) - 1) * h);
    case GaussianFamily::symmetric:
      if (n == 1) return (f(x + h) - f(x - h)) / conv(2 * h);
      if (n == 2) return (f(x + h) - conv(Rational(2)) * f(x) + f(x - h)) / conv(h * h);
      return conv(Rational(n * (n - 1))) * step(n - 2, (q.pow(n - 2 + n % 2) - 1) * h * h);
  }
  throw std::invalid_argument("unknown Gaussian family");
}

void require_recursion_args(int n, const Rational& q, const Rational& h) {
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  if (q.is_zero() || q == Rational(1) || q == Rational(-1)) throw std::invalid_argument("q must not be 0, 1 or -1");
  require_step(h);
}

}  // namespace

Rational recursive_quotient_exact(GaussianFamily family, int n, const Rational& q, const FunctionHandle& f,
                                  const Rational& x, const Rational& h) {
  require_recursion_args(n, q, h);
  if (!f.is_exact()) throw std::invalid_argument("function '" + f.name() + "' has no exact evaluation");
  const auto eval = [&](const Rational& t) { return *f.evaluate_exact(t); };
  const auto conv = [](const Rational& r) { return r; };
  return recursive_impl<Rational>(family, n, q, eval, conv, x, h);
}

double recursive_quotient(GaussianFamily family, int n, const Rational& q, const FunctionHandle& f,
                          const Rational& x, const Rational& h) {
  require_recursion_args(n, q, h);
  if (f.is_exact()) return recursive_quotient_exact(family, n, q, f, x, h).to_double();
  if (const auto* g = std::get_if<std::shared_ptr<const GroupFunction>>(&f.variant())) {
    const auto eval = [&](const Rational& t) { return static_cast<long double>((*g)->evaluate(t)); };
    const auto conv = [](const Rational& r) { return static_cast<long double>(r.to_double()); };
    return static_cast<double>(recursive_impl<long double>(family, n, q, eval, conv, x, h));
  }
  const auto kind = std::get<FunctionHandle::BuiltinFn>(f.variant()).kind;
  const auto eval = [&](const Rational& t) { return evaluate_hp(kind, to_hp(t)); };
  const auto conv = [](const Rational& r) { return to_hp(r); };
  return static_cast<double>(recursive_impl<HighPrecision>(family, n, q, eval, conv, x, h));
}

double recursive_quotient(GaussianFamily family, int n, const Rational& q, const FunctionHandle& f, double x,
                          double h) {
  return recursive_quotient(family, n, q, f, Rational::from_double(x), Rational::from_double(h));
}

// --- Convergence tables ------------------------------------------------------

namespace {

ConvergenceVerdict classify(const std::vector<ConvergenceRow>& rows, const EstimateOptions& opt) {
  const double last = rows.back().quotient;
  if (!std::isfinite(last) || std::abs(last) > opt.divergence_bound) return {ConvergenceVerdict::Kind::diverged};

  const std::size_t n = rows.size();
  const double final_delta = rows.back().delta;
  bool shrinking = n >= 5;  // three shrink ratios need four deltas
  for (std::size_t i = n >= 3 ? n - 3 : 1; shrinking && i < n; ++i) {
    const double prev = rows[i - 1].delta, cur = rows[i].delta;
    if (std::isnan(prev)) {
      shrinking = false;
    } else if (!(cur == 0.0 || cur * opt.shrink_factor <= prev)) {
      shrinking = false;
    }
  }
  const bool all_flat = std::all_of(rows.begin() + 1, rows.end(), [](const ConvergenceRow& r) { return r.delta == 0.0; });
  if ((shrinking || all_flat) && final_delta < opt.tolerance * std::max(1.0, std::abs(last))) {
    return {ConvergenceVerdict::Kind::converged, last, final_delta};
  }
  return {ConvergenceVerdict::Kind::oscillating};
}

}  // namespace

ConvergenceTable estimate_derivative(const Stencil& s, const FunctionHandle& f, double x, double h0, double ratio,
                                     int steps, const EstimateOptions& options) {
  if (!(h0 != 0.0) || !std::isfinite(h0)) throw std::invalid_argument("h0 must be a nonzero finite number");
  if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("ratio must lie in (0, 1)");
  if (steps < 2 || steps > 60) throw std::invalid_argument("steps must lie in [2, 60]");
  const double smallest = std::abs(h0) * std::pow(ratio, steps - 1);
  if (s.order() >= 3 && !f.is_exact() && smallest < kMinFloatStep) {
    throw std::invalid_argument("table reaches |h| < 1e-8, rejected for floating quotients of order >= 3");
  }

  const Rational xr = Rational::from_double(x);
  ConvergenceTable table;
  table.rows.reserve(static_cast<std::size_t>(steps));
  double magnitude = std::abs(h0);
  for (int i = 0; i < steps; ++i, magnitude *= ratio) {
    const double sign = (options.two_sided && i % 2 == 1) ? -1.0 : 1.0;
    const double h = std::copysign(magnitude, h0) * sign;
    const double quotient = difference_quotient(s, f, xr, Rational::from_double(h));
    const double delta = table.rows.empty() ? std::numeric_limits<double>::quiet_NaN()
                                            : std::abs(quotient - table.rows.back().quotient);
    table.rows.push_back({h, quotient, delta});
    if (options.two_sided) (h > 0 ? table.limit_positive : table.limit_negative) = quotient;
  }
  table.verdict = classify(table.rows, options);
  return table;
}

std::string verdict_string(const ConvergenceVerdict& v) {
  switch (v.kind) {
    case ConvergenceVerdict::Kind::converged:
      return "converged value=" + format_double(v.value) + " est_error=" + format_double(v.est_error);
    case ConvergenceVerdict::Kind::diverged: return "diverged";
    case ConvergenceVerdict::Kind::oscillating: return "oscillating";
  }
  return "oscillating";
}

std::string to_csv(const ConvergenceTable& table) {
  std::ostringstream os;
  os << "h,quotient,delta\n";
  for (const auto& r : table.rows) {
    os << format_double(r.h) << ',' << format_double(r.quotient) << ',';
    if (!std::isnan(r.delta)) os << format_double(r.delta);
    os << '\n';
  }
  if (table.limit_positive && table.limit_negative) {
    os << "# two-sided: positive=" << format_double(*table.limit_positive)
       << " negative=" << format_double(*table.limit_negative) << '\n';
  }
  os << "# verdict: " << verdict_string(table.verdict) << '\n';
  return os.str();
}

bool peano_bound_check(const FunctionHandle& f, const Rational& x, int m, double epsilon_exponent,
                       std::span<const Rational> h_set) {
  for (const Rational& h : h_set) {
    if (h.is_zero()) continue;
    const double value = std::abs(f.evaluate(x + h));
    const double bound = std::pow(std::abs(h.to_double()), m + epsilon_exponent);
    if (!(value <= bound)) return false;
  }
  return true;
}

}  // namespace qstencil
