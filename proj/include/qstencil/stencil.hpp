#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qstencil/rational.hpp"

namespace qstencil {

enum class StencilKind { riemann, riemann_symmetric, gaussian_forward, gaussian_shifted, gaussian_symmetric, mz, custom };

std::string_view to_string(StencilKind kind);
StencilKind stencil_kind_from_string(std::string_view name);

enum class GaussianFamily { forward, shifted, symmetric };

std::string_view to_string(GaussianFamily family);
GaussianFamily gaussian_family_from_string(std::string_view name);

/// Data of a generalized Riemann difference: sum_k A_k f(x + a_k h).
///
/// Nodes are kept in ascending order. Construction enforces the structural
/// invariants (equal lengths, distinct nodes, nonzero coefficients); the
/// Vandermonde relations are checked separately by verify_vandermonde, so
/// invalid or excess stencils can still be represented and inspected.
class Stencil {
 public:
  Stencil(int order, std::vector<Rational> nodes, std::vector<Rational> coeffs,
          StencilKind kind = StencilKind::custom, std::optional<Rational> q = std::nullopt);

  int order() const { return order_; }
  StencilKind kind() const { return kind_; }
  const std::optional<Rational>& q() const { return q_; }
  const std::vector<Rational>& nodes() const { return nodes_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  std::size_t size() const { return nodes_.size(); }

  /// Coefficient at `node`, or nullopt if `node` is not a base point.
  std::optional<Rational> coefficient_at(const Rational& node) const;

  /// Same nodes and coefficients (kind and q are labels and do not count).
  bool same_data(const Stencil& other) const { return nodes_ == other.nodes_ && coeffs_ == other.coeffs_; }

  friend bool operator==(const Stencil&, const Stencil&) = default;

 private:
  int order_;
  std::vector<Rational> nodes_;
  std::vector<Rational> coeffs_;
  StencilKind kind_;
  std::optional<Rational> q_;
};

/// Normalizer turning an unnormalized q-binomial difference into an order-n one.
struct GaussianNormalizer {
  enum class Family { forward, shifted, symmetric_even, symmetric_odd };
  Family family;
  Rational value;
};

GaussianNormalizer forward_normalizer(int n, const Rational& q);
GaussianNormalizer shifted_normalizer(int n, const Rational& q);
GaussianNormalizer symmetric_normalizer(int n, const Rational& q);

/// Unique no-excess stencil on the given nodes, by exact Gaussian elimination
/// of sum_k A_k a_k^j = delta_{j,n} n!, j = 0..n.
/// Throws std::invalid_argument on duplicate nodes or n < 1, UnsupportedError
/// when nodes.size() != n + 1.
Stencil vandermonde_solve(std::vector<Rational> nodes, int n);

// Closed forms. Gaussian families require q not in {0, 1, -1}
// (std::invalid_argument otherwise) and n >= 1.
Stencil gaussian_forward(int n, const Rational& q);
Stencil gaussian_shifted(int n, const Rational& q);
/// Symmetric closed form, cross-checked against vandermonde_solve on its own
/// node set (std::logic_error on disagreement).
Stencil gaussian_symmetric(int n, const Rational& q);
/// The symmetric closed form without the solver cross-check.
Stencil gaussian_symmetric_closed_form(int n, const Rational& q);
Stencil gaussian(GaussianFamily family, int n, const Rational& q);
/// Forward Gaussian stencil at q = 2, labelled as the MZ difference.
Stencil mz_stencil(int n);

Stencil riemann_classic(int n);
Stencil riemann_symmetric(int n);

/// Node -> coefficient map of an unnormalized difference.
using DifferenceMap = std::map<Rational, Rational>;

/// Unnormalized difference built by the family's recursion on h -> qh dilation.
DifferenceMap recursive_unnormalized(GaussianFamily family, int n, const Rational& q);

/// recursive_unnormalized scaled by the family normalizer.
Stencil recursive_build(GaussianFamily family, int n, const Rational& q);

/// Scale by r: nodes r a_k, coefficients r^-n A_k. r != 0.
Stencil scale(const Stencil& s, const Rational& r);

/// r with scale(from, r) having the node set of `to`, if one exists.
std::optional<Rational> matching_scale_factor(const Stencil& from, const Stencil& to);

/// Smallest positive integer scale making every node an integer.
Stencil integer_node_form(const Stencil& s);

struct VandermondeResidual {
  int power;
  Rational residual;  // sum_k A_k a_k^power - delta_{power,n} n!
};

/// Exact residuals for j = 0..order.
std::vector<VandermondeResidual> verify_vandermonde(const Stencil& s);
bool satisfies_vandermonde(const Stencil& s);

/// True iff for every node a with coefficient A, -a is a node with
/// coefficient (-1)^n A.
bool is_symmetric(const Stencil& s);

}  // namespace qstencil
