#include "qstencil/stencil.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "qstencil/errors.hpp"
#include "qstencil/qpoly.hpp"

namespace qstencil {

namespace {

constexpr std::pair<StencilKind, std::string_view> kKindNames[] = {
    {StencilKind::riemann, "riemann"},
    {StencilKind::riemann_symmetric, "riemann_symmetric"},
    {StencilKind::gaussian_forward, "gaussian_forward"},
    {StencilKind::gaussian_shifted, "gaussian_shifted"},
    {StencilKind::gaussian_symmetric, "gaussian_symmetric"},
    {StencilKind::mz, "mz"},
    {StencilKind::custom, "custom"},
};

Rational sign_power(long k) { return (k % 2 == 0) ? Rational(1) : Rational(-1); }

void require_order(int n) {
  if (n < 1) throw std::invalid_argument("stencil order must be >= 1, got " + std::to_string(n));
}

void require_generic_q(const Rational& q) {
  if (q.is_zero() || q == Rational(1) || q == Rational(-1)) {
    throw std::invalid_argument("q must not be 0, 1 or -1 (nodes collide), got " + q.str());
  }
}

Stencil from_map(int n, const DifferenceMap& m, const Rational& scale_by, StencilKind kind, std::optional<Rational> q) {
  std::vector<Rational> nodes, coeffs;
  nodes.reserve(m.size());
  coeffs.reserve(m.size());
  for (const auto& [node, coeff] : m) {
    nodes.push_back(node);
    coeffs.push_back(coeff * scale_by);
  }
  return Stencil(n, std::move(nodes), std::move(coeffs), kind, std::move(q));
}

// h -> qh applied to a difference: node a moves to q a.
DifferenceMap dilate(const DifferenceMap& m, const Rational& q) {
  DifferenceMap out;
  for (const auto& [node, coeff] : m) out.emplace(node * q, coeff);
  return out;
}

// a - factor * b, dropping cancelled nodes.
DifferenceMap combine(DifferenceMap a, const DifferenceMap& b, const Rational& factor) {
  for (const auto& [node, coeff] : b) {
    auto [it, inserted] = a.try_emplace(node, Rational());
    it->second -= factor * coeff;
    if (it->second.is_zero()) a.erase(it);
  }
  return a;
}

}  // namespace

std::string_view to_string(StencilKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "custom";
}

StencilKind stencil_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw std::invalid_argument("unknown stencil kind '" + std::string(name) + "'");
}

std::string_view to_string(GaussianFamily family) {
  switch (family) {
    case GaussianFamily::forward: return "forward";
    case GaussianFamily::shifted: return "shifted";
    case GaussianFamily::symmetric: return "symmetric";
  }
  return "forward";
}

GaussianFamily gaussian_family_from_string(std::string_view name) {
  if (name == "forward") return GaussianFamily::forward;
  if (name == "shifted") return GaussianFamily::shifted;
  if (name == "symmetric") return GaussianFamily::symmetric;
  throw std::invalid_argument("unknown Gaussian family '" + std::string(name) + "'");
}

// --- Stencil -------------------------------------------------------------

Stencil::Stencil(int order, std::vector<Rational> nodes, std::vector<Rational> coeffs, StencilKind kind,
                 std::optional<Rational> q)
    : order_(order), kind_(kind), q_(std::move(q)) {
  require_order(order);
  if (nodes.size() != coeffs.size()) throw std::invalid_argument("stencil nodes and coefficients differ in length");
  if (nodes.empty()) throw std::invalid_argument("stencil needs at least one node");

  std::vector<std::size_t> idx(nodes.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return nodes[a] < nodes[b]; });
  nodes_.reserve(idx.size());
  coeffs_.reserve(idx.size());
  for (std::size_t i : idx) {
    if (!nodes_.empty() && nodes_.back() == nodes[i]) {
      throw std::invalid_argument("duplicate stencil node " + nodes[i].str());
    }
    if (coeffs[i].is_zero()) throw std::invalid_argument("zero coefficient at node " + nodes[i].str());
    nodes_.push_back(std::move(nodes[i]));
    coeffs_.push_back(std::move(coeffs[i]));
  }
}

std::optional<Rational> Stencil::coefficient_at(const Rational& node) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), node);
  if (it == nodes_.end() || *it != node) return std::nullopt;
  return coeffs_[static_cast<std::size_t>(it - nodes_.begin())];
}

// --- Normalizers ---------------------------------------------------------

GaussianNormalizer forward_normalizer(int n, const Rational& q) {
  require_order(n);
  require_generic_q(q);
  const Rational top = q.pow(n);
  Rational den(1);
  for (int i = 1; i <= n - 1; ++i) den *= top - q.pow(i);
  return {GaussianNormalizer::Family::forward, Rational(factorial(n)) / den};
}

GaussianNormalizer shifted_normalizer(int n, const Rational& q) {
  require_order(n);
  require_generic_q(q);
  const Rational top = q.pow(n);
  Rational den(1);
  for (int i = 0; i <= n - 1; ++i) den *= top - q.pow(i);
  return {GaussianNormalizer::Family::shifted, Rational(factorial(n)) / den};
}

GaussianNormalizer symmetric_normalizer(int n, const Rational& q) {
  require_order(n);
  require_generic_q(q);
  const Rational top = q.pow(n);
  Rational den(2);
  // even: q^2, q^4, ..., q^(n-2); odd: q, q^3, ..., q^(n-2)
  for (int i = (n % 2 == 0) ? 2 : 1; i <= n - 2; i += 2) den *= top - q.pow(i);
  const auto family =
      (n % 2 == 0) ? GaussianNormalizer::Family::symmetric_even : GaussianNormalizer::Family::symmetric_odd;
  return {family, Rational(factorial(n)) / den};
}

// --- Vandermonde solve ---------------------------------------------------

Stencil vandermonde_solve(std::vector<Rational> nodes, int n) {
  require_order(n);
  {
    std::vector<Rational> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("vandermonde_solve: duplicate nodes");
    }
  }
  if (nodes.size() != static_cast<std::size_t>(n) + 1) {
    throw UnsupportedError("vandermonde_solve: only no-excess stencils (n+1 nodes) are constructed; got " +
                           std::to_string(nodes.size()) + " nodes for order " + std::to_string(n));
  }

  const std::size_t dim = nodes.size();
  // Augmented system: row j is [a_0^j ... a_n^j | delta_{j,n} n!].
  std::vector<std::vector<Rational>> m(dim, std::vector<Rational>(dim + 1));
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t k = 0; k < dim; ++k) m[j][k] = nodes[k].pow(static_cast<long>(j));
    m[j][dim] = (j == dim - 1) ? Rational(factorial(static_cast<unsigned>(n))) : Rational();
  }

  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t pivot = col;
    while (pivot < dim && m[pivot][col].is_zero()) ++pivot;
    if (pivot == dim) throw std::logic_error("vandermonde_solve: singular system for distinct nodes");
    std::swap(m[col], m[pivot]);
    const Rational inv = m[col][col].reciprocal();
    for (std::size_t c = col; c <= dim; ++c) m[col][c] *= inv;
    for (std::size_t r = 0; r < dim; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c <= dim; ++c) m[r][c] -= f * m[col][c];
    }
  }

  std::vector<Rational> coeffs(dim);
  for (std::size_t k = 0; k < dim; ++k) coeffs[k] = m[k][dim];
  return Stencil(n, std::move(nodes), std::move(coeffs), StencilKind::custom);
}

// --- Closed forms --------------------------------------------------------

Stencil gaussian_forward(int n, const Rational& q) {
  const Rational lambda = forward_normalizer(n, q).value;
  DifferenceMap m;
  for (int k = 0; k <= n - 1; ++k) {
    m[q.pow(n - 1 - k)] = sign_power(k) * q.pow(k * (k + 1) / 2) * q_binomial(n - 1, k).evaluate(q);
  }
  Rational at_zero(1);
  for (int i = 1; i <= n - 1; ++i) at_zero *= Rational(1) - q.pow(i);
  m[Rational(0)] = -at_zero;
  return from_map(n, m, lambda, StencilKind::gaussian_forward, q);
}

Stencil gaussian_shifted(int n, const Rational& q) {
  const Rational lambda = shifted_normalizer(n, q).value;
  DifferenceMap m;
  for (int k = 0; k <= n; ++k) {
    m[q.pow(n - k)] = sign_power(k) * q.pow(k * (k - 1) / 2) * q_binomial(n, k).evaluate(q);
  }
  return from_map(n, m, lambda, StencilKind::gaussian_shifted, q);
}

Stencil gaussian_symmetric_closed_form(int n, const Rational& q) {
  const Rational lambda = symmetric_normalizer(n, q).value;
  const int m = (n + 1) / 2;
  const Rational q2 = q * q;
  DifferenceMap d;
  if (n % 2 == 0) {
    for (int k = 0; k <= m - 1; ++k) {
      const Rational c = sign_power(k) * q.pow(k * (k + 1)) * q_binomial(m - 1, k).evaluate(q2);
      d[q.pow(m - 1 - k)] = c;
      d[-q.pow(m - 1 - k)] = c;
    }
    Rational at_zero(2);
    for (int i = 1; i <= m - 1; ++i) at_zero *= Rational(1) - q.pow(2 * i);
    d[Rational(0)] = -at_zero;
  } else {
    for (int k = 0; k <= m - 1; ++k) {
      const Rational c = sign_power(k) * q.pow(k * k) * q_binomial(m - 1, k).evaluate(q2);
      d[q.pow(m - 1 - k)] = c;
      d[-q.pow(m - 1 - k)] = -c;
    }
  }
  return from_map(n, d, lambda, StencilKind::gaussian_symmetric, q);
}

Stencil gaussian_symmetric(int n, const Rational& q) {
  Stencil closed = gaussian_symmetric_closed_form(n, q);
  const Stencil solved = vandermonde_solve(closed.nodes(), n);
  if (!closed.same_data(solved)) {
    throw std::logic_error("symmetric Gaussian closed form disagrees with the Vandermonde solution at n=" +
                           std::to_string(n) + " q=" + q.str());
  }
  return closed;
}

Stencil gaussian(GaussianFamily family, int n, const Rational& q) {
  switch (family) {
    case GaussianFamily::forward: return gaussian_forward(n, q);
    case GaussianFamily::shifted: return gaussian_shifted(n, q);
    case GaussianFamily::symmetric: return gaussian_symmetric(n, q);
  }
  throw std::invalid_argument("unknown Gaussian family");
}

Stencil mz_stencil(int n) {
  const Stencil s = gaussian_forward(n, 2);
  return Stencil(n, s.nodes(), s.coeffs(), StencilKind::mz, Rational(2));
}

Stencil riemann_classic(int n) {
  require_order(n);
  std::vector<Rational> nodes, coeffs;
  for (int k = 0; k <= n; ++k) {
    nodes.emplace_back(n - k);
    coeffs.push_back(sign_power(k) * Rational(binomial(n, k)));
  }
  return Stencil(n, std::move(nodes), std::move(coeffs), StencilKind::riemann);
}

Stencil riemann_symmetric(int n) {
  require_order(n);
  std::vector<Rational> nodes, coeffs;
  for (int k = 0; k <= n; ++k) {
    nodes.push_back(Rational(n - 2 * k) / Rational(2));
    coeffs.push_back(sign_power(k) * Rational(binomial(n, k)));
  }
  return Stencil(n, std::move(nodes), std::move(coeffs), StencilKind::riemann_symmetric);
}

// --- Recursions ----------------------------------------------------------

DifferenceMap recursive_unnormalized(GaussianFamily family, int n, const Rational& q) {
  require_order(n);
  require_generic_q(q);
  switch (family) {
    case GaussianFamily::forward: {
      DifferenceMap d{{Rational(1), Rational(1)}, {Rational(0), Rational(-1)}};
      for (int k = 2; k <= n; ++k) d = combine(dilate(d, q), d, q.pow(k - 1));
      return d;
    }
    case GaussianFamily::shifted: {
      DifferenceMap d{{q, Rational(1)}, {Rational(1), Rational(-1)}};
      for (int k = 2; k <= n; ++k) d = combine(dilate(d, q), d, q.pow(k - 1));
      return d;
    }
    case GaussianFamily::symmetric: {
      // Two interleaved chains: odd orders from the first difference, even
      // orders from the second, each step k -> k+2 using q^k.
      DifferenceMap d = (n % 2 == 1)
                            ? DifferenceMap{{Rational(1), Rational(1)}, {Rational(-1), Rational(-1)}}
                            : DifferenceMap{{Rational(1), Rational(1)}, {Rational(0), Rational(-2)}, {Rational(-1), Rational(1)}};
      for (int k = (n % 2 == 1) ? 3 : 4; k <= n; k += 2) d = combine(dilate(d, q), d, q.pow(k - 2));
      return d;
    }
  }
  throw std::invalid_argument("unknown Gaussian family");
}

Stencil recursive_build(GaussianFamily family, int n, const Rational& q) {
  const DifferenceMap d = recursive_unnormalized(family, n, q);
  switch (family) {
    case GaussianFamily::forward:
      return from_map(n, d, forward_normalizer(n, q).value, StencilKind::gaussian_forward, q);
    case GaussianFamily::shifted:
      return from_map(n, d, shifted_normalizer(n, q).value, StencilKind::gaussian_shifted, q);
    case GaussianFamily::symmetric:
      return from_map(n, d, symmetric_normalizer(n, q).value, StencilKind::gaussian_symmetric, q);
  }
  throw std::invalid_argument("unknown Gaussian family");
}

// --- Scaling -------------------------------------------------------------

Stencil scale(const Stencil& s, const Rational& r) {
  if (r.is_zero()) throw std::invalid_argument("scale factor must be nonzero");
  const Rational coeff_factor = r.pow(-s.order());
  std::vector<Rational> nodes, coeffs;
  nodes.reserve(s.size());
  coeffs.reserve(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    nodes.push_back(r * s.nodes()[k]);
    coeffs.push_back(coeff_factor * s.coeffs()[k]);
  }
  return Stencil(s.order(), std::move(nodes), std::move(coeffs), StencilKind::custom);
}

std::optional<Rational> matching_scale_factor(const Stencil& from, const Stencil& to) {
  if (from.size() != to.size()) return std::nullopt;
  const auto pivot = std::find_if(from.nodes().begin(), from.nodes().end(), [](const Rational& a) { return !a.is_zero(); });
  if (pivot == from.nodes().end()) return std::nullopt;
  for (const Rational& target : to.nodes()) {
    if (target.is_zero()) continue;
    const Rational r = target / *pivot;
    std::vector<Rational> moved;
    moved.reserve(from.size());
    for (const Rational& a : from.nodes()) moved.push_back(r * a);
    std::sort(moved.begin(), moved.end());
    if (moved == to.nodes()) return r;
  }
  return std::nullopt;
}

Stencil integer_node_form(const Stencil& s) {
  mpz_class l = 1;
  for (const Rational& a : s.nodes()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.den().get_mpz_t());
  if (l == 1) return s;
  return scale(s, Rational(l));
}

// --- Validation ----------------------------------------------------------

std::vector<VandermondeResidual> verify_vandermonde(const Stencil& s) {
  std::vector<VandermondeResidual> out;
  out.reserve(static_cast<std::size_t>(s.order()) + 1);
  for (int j = 0; j <= s.order(); ++j) {
    Rational sum;
    for (std::size_t k = 0; k < s.size(); ++k) sum += s.coeffs()[k] * s.nodes()[k].pow(j);
    if (j == s.order()) sum -= Rational(factorial(static_cast<unsigned>(j)));
    out.push_back({j, std::move(sum)});
  }
  return out;
}

bool satisfies_vandermonde(const Stencil& s) {
  const auto residuals = verify_vandermonde(s);
  return std::all_of(residuals.begin(), residuals.end(), [](const auto& r) { return r.residual.is_zero(); });
}

bool is_symmetric(const Stencil& s) {
  const Rational parity = sign_power(s.order());
  for (std::size_t k = 0; k < s.size(); ++k) {
    const auto mirror = s.coefficient_at(-s.nodes()[k]);
    if (!mirror || *mirror != parity * s.coeffs()[k]) return false;
  }
  return true;
}

}  // namespace qstencil
