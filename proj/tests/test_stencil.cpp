#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "qstencil/errors.hpp"
#include "qstencil/stencil.hpp"

using namespace qstencil;

namespace {

std::vector<Rational> rs(std::initializer_list<Rational> xs) { return xs; }

// A_k = n! / prod_{j != k} (a_k - a_j), the interpolation formula for n + 1 nodes.
std::vector<Rational> lagrange_coeffs(const std::vector<Rational>& nodes) {
  const int n = static_cast<int>(nodes.size()) - 1;
  std::vector<Rational> out;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    Rational d(1);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (j != k) d *= nodes[k] - nodes[j];
    }
    out.push_back(Rational(factorial(n)) / d);
  }
  return out;
}

const std::vector<Rational> kQs{Rational(2), Rational(3), Rational(5), Rational(1, 2),
                                Rational(-2), Rational(5, 3), Rational(-7, 4)};

}  // namespace

TEST_CASE("worked examples") {
  const Stencil f = gaussian_forward(3, Rational(2));
  CHECK(f.nodes() == rs({0, 1, 2, 4}));
  CHECK(f.coeffs() == rs({Rational(-3, 4), 2, Rational(-3, 2), Rational(1, 4)}));
  CHECK(f.kind() == StencilKind::gaussian_forward);
  CHECK(f.q() == Rational(2));

  const Stencil s = gaussian_symmetric(4, Rational(2));
  CHECK(s.nodes() == rs({-2, -1, 0, 1, 2}));
  CHECK(s.coeffs() == rs({1, -4, 6, -4, 1}));

  const Stencil c = vandermonde_solve(rs({0, 1}), 1);
  CHECK(c.coeffs() == rs({-1, 1}));
  CHECK(c.kind() == StencilKind::custom);

  CHECK(riemann_classic(2).coeffs() == rs({1, -2, 1}));
  CHECK(riemann_symmetric(3).nodes() == rs({Rational(-3, 2), Rational(-1, 2), Rational(1, 2), Rational(3, 2)}));
  CHECK(riemann_symmetric(3).coeffs() == rs({-1, 3, -3, 1}));
}

TEST_CASE("solver matches the interpolation formula") {
  const std::vector<std::vector<Rational>> node_sets{
      rs({0, 1}), rs({-1, 0, 1}), rs({0, Rational(1, 3), 2, -5}), rs({3, 1, 4, Rational(-1, 5), 9, 2}),
      rs({Rational(1, 2), Rational(1, 3), Rational(1, 4), Rational(1, 5), Rational(1, 6), Rational(1, 7), 1})};
  for (const auto& nodes : node_sets) {
    const int n = static_cast<int>(nodes.size()) - 1;
    const Stencil s = vandermonde_solve(nodes, n);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      CHECK(s.coefficient_at(nodes[k]) == lagrange_coeffs(nodes)[k]);
    }
    CHECK(satisfies_vandermonde(s));
  }
}

TEST_CASE("invalid construction") {
  CHECK_THROWS_AS(vandermonde_solve(rs({0, 1, 1}), 2), std::invalid_argument);
  CHECK_THROWS_AS(vandermonde_solve(rs({0, 1, 2, 3}), 2), UnsupportedError);
  CHECK_THROWS_AS(vandermonde_solve(rs({0, 1}), 2), UnsupportedError);
  CHECK_THROWS_AS(gaussian_forward(3, Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_shifted(3, Rational(-1)), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_symmetric(3, Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_forward(0, Rational(2)), std::invalid_argument);
  CHECK_THROWS_AS(Stencil(1, rs({0, 1}), rs({1})), std::invalid_argument);
  CHECK_THROWS_AS(Stencil(1, rs({0, 0}), rs({1, -1})), std::invalid_argument);
  CHECK_THROWS_AS(Stencil(1, rs({0, 1}), rs({0, 1})), std::invalid_argument);
  CHECK_THROWS_AS(scale(riemann_classic(2), Rational(0)), std::invalid_argument);
}

TEST_CASE("closed forms equal the interpolation formula for every family") {
  for (int n = 1; n <= 10; ++n) {
    for (const auto& q : kQs) {
      for (const Stencil& s : {gaussian_forward(n, q), gaussian_shifted(n, q), gaussian_symmetric_closed_form(n, q)}) {
        REQUIRE(s.size() == static_cast<std::size_t>(n + 1));
        CHECK(s.coeffs() == lagrange_coeffs(s.nodes()));
        CHECK(s.same_data(vandermonde_solve(s.nodes(), n)));
      }
    }
  }
}

TEST_CASE("node sets of the families") {
  const Rational q(3);
  CHECK(gaussian_forward(3, q).nodes() == rs({0, 1, 3, 9}));
  CHECK(gaussian_shifted(3, q).nodes() == rs({1, 3, 9, 27}));
  CHECK(gaussian_symmetric(3, q).nodes() == rs({-3, -1, 1, 3}));
  CHECK(gaussian_symmetric(4, q).nodes() == rs({-3, -1, 0, 1, 3}));
  for (int n = 1; n <= 9; ++n) {
    CHECK(is_symmetric(gaussian_symmetric(n, Rational(5, 3))));
    CHECK(is_symmetric(riemann_symmetric(n)));
  }
  CHECK_FALSE(is_symmetric(gaussian_forward(3, q)));
}

TEST_CASE("recursion reproduces the closed forms") {
  for (int n = 1; n <= 10; ++n) {
    for (const auto& q : kQs) {
      CHECK(recursive_build(GaussianFamily::forward, n, q).same_data(gaussian_forward(n, q)));
      CHECK(recursive_build(GaussianFamily::shifted, n, q).same_data(gaussian_shifted(n, q)));
      CHECK(recursive_build(GaussianFamily::symmetric, n, q).same_data(gaussian_symmetric(n, q)));
    }
  }
}

TEST_CASE("MZ node set") {
  for (int n = 1; n <= 10; ++n) {
    const Stencil mz = mz_stencil(n);
    CHECK(mz.kind() == StencilKind::mz);
    CHECK(mz.nodes().front() == Rational(0));
    for (int i = 0; i < n; ++i) CHECK(mz.nodes()[i + 1] == Rational(2).pow(i));
    CHECK(mz.same_data(gaussian_forward(n, Rational(2))));
  }
}

TEST_CASE("scaling preserves the Vandermonde relations and relates q to 1/q") {
  const Stencil base = riemann_classic(3);
  const Stencil scaled = scale(base, Rational(2, 3));
  CHECK(scaled.nodes() == rs({0, Rational(2, 3), Rational(4, 3), 2}));
  CHECK(scaled.coeffs()[0] == Rational(-27, 8));
  CHECK(satisfies_vandermonde(scaled));

  for (int n = 1; n <= 8; ++n) {
    for (const Rational& q : {Rational(2), Rational(3), Rational(5, 2)}) {
      CHECK(scale(gaussian_forward(n, q.reciprocal()), q.pow(n - 1)).same_data(gaussian_forward(n, q)));
      const Stencil from = gaussian_symmetric(n, q.reciprocal());
      const Stencil to = gaussian_symmetric(n, q);
      const auto r = matching_scale_factor(from, to);
      REQUIRE(r.has_value());
      CHECK(scale(from, *r).same_data(to));
    }
  }
  CHECK_FALSE(matching_scale_factor(gaussian_forward(3, Rational(2)), gaussian_forward(3, Rational(3))).has_value());
}

TEST_CASE("integer node form") {
  const Stencil s = integer_node_form(riemann_symmetric(5));
  CHECK(s.nodes() == rs({-5, -3, -1, 1, 3, 5}));
  CHECK(satisfies_vandermonde(s));
  CHECK(integer_node_form(riemann_classic(4)).same_data(riemann_classic(4)));
}

TEST_CASE("residuals expose a perturbed coefficient") {
  const Stencil good = gaussian_forward(4, Rational(3));
  auto coeffs = good.coeffs();
  coeffs[2] += Rational(1);
  const Stencil bad(4, good.nodes(), coeffs);
  CHECK_FALSE(satisfies_vandermonde(bad));
  const auto res = verify_vandermonde(bad);
  REQUIRE(res.size() == 5);
  CHECK(res[0].residual == Rational(1));
}

TEST_CASE("kind names round-trip") {
  for (auto k : {StencilKind::riemann, StencilKind::riemann_symmetric, StencilKind::gaussian_forward,
                 StencilKind::gaussian_shifted, StencilKind::gaussian_symmetric, StencilKind::mz, StencilKind::custom}) {
    CHECK(stencil_kind_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(stencil_kind_from_string("bogus"), std::invalid_argument);
}
