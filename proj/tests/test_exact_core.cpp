#include "holosym/error.hpp"
#include "holosym/linalg.hpp"
#include "holosym/modular.hpp"
#include "holosym/poly.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace holosym;
using holosym::testing::random_poly;
using holosym::testing::uniform;

TEST_SUITE("exact_core") {

TEST_CASE("rationals stay in lowest terms") {
  const Rational a = parse_rational("6/4");
  CHECK(a == Rational(3, 2));
  CHECK(to_string(a) == "3/2");
  CHECK(to_string(parse_rational("-10/5")) == "-2");
  Rational big = 1;
  for (int i = 0; i < 200; ++i) {
    big *= Rational(3, 2);
  }
  CHECK(big.get_den() == Integer(1) << 200);
}

TEST_CASE("ring arithmetic examples") {
  const Poly x1 = parse_polynomial("x1", 2);
  CHECK(x1 * x1 == parse_polynomial("x1^2", 2));
  const Poly h = parse_polynomial("u^2*x1^2 - 3/2*x2^2", 2);
  CHECK(h + Poly(4) == h);
  CHECK(parse_polynomial("(u + x1)*(u - x1)", 2) == parse_polynomial("u^2 - x1^2", 2));
  CHECK(poly_scale(h, 0).is_zero());
  CHECK_THROWS_AS(poly_add(h, Poly(3)), StructuralError);
}

TEST_CASE("partial derivatives") {
  const Poly f = parse_polynomial("u^2*x1^2", 1);
  CHECK(partial_derivative(f, 1) == parse_polynomial("2*u^2*x1", 1));
  CHECK(partial_derivative(f, 0).is_zero());
  CHECK(f.derivative(2).derivative(2) == parse_polynomial("2*x1^2", 1));
}

TEST_CASE("parser accepts the grammar and reports errors") {
  CHECK(parse_polynomial("x1*(x1+u)", 1) == parse_polynomial("x1^2 + u*x1", 1));
  CHECK(parse_polynomial("-x1 + 2", 1) == parse_polynomial("2 - x1", 1));
  CHECK(parse_polynomial(" 1/2 * v ^ 2 ", 1).to_string() == "1/2*v^2");
  CHECK_THROWS_AS(parse_polynomial("x3", 2), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x1^-1", 2), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x1 +", 2), ParseError);
  CHECK_THROWS_AS(parse_polynomial("(x1", 2), ParseError);
  CHECK_THROWS_AS(parse_polynomial("1/0", 2), ParseError);
  CHECK_THROWS_AS(parse_polynomial("y", 2), ParseError);
  try {
    parse_polynomial("x1 * * u", 2);
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.position() == 5);
  }
}

TEST_CASE("ring axioms and commuting derivatives on random polynomials") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = uniform(rng, 1, 3);
    const Poly a = random_poly(rng, n, 4, 3);
    const Poly b = random_poly(rng, n, 4, 3);
    const Poly c = random_poly(rng, n, 4, 3);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
    for (std::size_t i = 0; i < a.variable_count(); ++i) {
      for (std::size_t j = 0; j < a.variable_count(); ++j) {
        CHECK(a.derivative(i).derivative(j) == a.derivative(j).derivative(i));
      }
    }
  }
}

TEST_CASE("printer and parser round trip") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform(rng, 1, 4);
    const Poly a = random_poly(rng, n, 5, 4);
    CHECK(parse_polynomial(a.to_string(), n) == a);
  }
  CHECK(Poly(3).to_string() == "0");
}

TEST_CASE("kernel examples") {
  CHECK(kernel_basis(ExactMatrix::identity(3)).dimension() == 0);
  CHECK(kernel_basis(ExactMatrix(2, 3)).dimension() == 3);
  ExactMatrix m(1, 3);
  m(0, 0) = 1;
  m(0, 1) = -1;
  const SubspaceBasis k = kernel_basis(m);
  REQUIRE(k.dimension() == 2);
  CHECK(k.is_independent());
  for (const auto &b : k.vectors()) {
    CHECK((m * b)[0] == 0);
  }
  CHECK(k.contains(Vector{1, 1, 0}));
  CHECK(k.contains(Vector{0, 0, 1}));
  CHECK_FALSE(k.contains(Vector{1, 0, 0}));
}

TEST_CASE("modular and fraction-free kernels agree on random systems") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t cols = static_cast<std::size_t>(uniform(rng, 41, 90));
    // Tall dense systems can exceed the prime budget; the modular route then declines.
    const bool tall = trial % 3 == 2;
    const std::size_t rows = static_cast<std::size_t>(tall ? uniform(rng, 60, 80) : uniform(rng, 10, 30));
    SparseMatrix m(cols);
    for (std::size_t r = 0; r < rows; ++r) {
      SparseVector row;
      for (std::size_t c = 0; c < cols; ++c) {
        if (uniform(rng, 0, 6) == 0) {
          row.emplace_back(c, make_rational(uniform(rng, -9, 9), uniform(rng, 1, 5)));
        }
      }
      row.erase(std::remove_if(row.begin(), row.end(), [](const auto &e) { return is_zero(e.second); }), row.end());
      m.add_row(std::move(row));
    }
    const auto modular = kernel_basis_modular(m);
    const SubspaceBasis exact = kernel_basis_bareiss(m);
    if (!tall) {
      REQUIRE(modular.has_value());
    }
    if (modular) {
      CHECK(*modular == exact);
    }
    for (const auto &b : exact.vectors()) {
      CHECK(annihilates(m, b));
    }
    CHECK(exact.is_independent());
    CHECK(exact.dimension() + rank(m) == cols);
  }
}

TEST_CASE("parallel and serial modular elimination agree") {
  std::mt19937_64 rng(14);
  const std::uint64_t p = modular_prime(0);
  ModMatrix a(150, 200, p);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      a(r, c) = uniform(rng, 0, 3) == 0 ? rng() % p : 0;
    }
  }
  ModMatrix b = a;
  CHECK(rref_mod(a) == rref_mod_serial(b));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      CHECK(a(r, c) == b(r, c));
    }
  }
}

TEST_CASE("rational reconstruction") {
  const Integer m = Integer(modular_prime(0)) * Integer(modular_prime(1));
  const Rational x = make_rational(-123456789, 987654321);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), Integer(x.get_den()).get_mpz_t(), m.get_mpz_t());
  Integer residue = (inv * Integer(x.get_num())) % m;
  if (residue < 0) {
    residue += m;
  }
  const auto back = rational_reconstruct(residue, m);
  REQUIRE(back.has_value());
  CHECK(*back == x);
}

TEST_CASE("solve and subspace coordinates") {
  ExactMatrix m(2, 2);
  m(0, 0) = 2;
  m(0, 1) = 1;
  m(1, 1) = 3;
  const auto x = solve(m, Vector{5, 6});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Rational(3, 2));
  CHECK((*x)[1] == 2);
  const SubspaceBasis s = SubspaceBasis::span(3, {Vector{1, 2, 3}, Vector{2, 4, 6}, Vector{0, 1, 0}});
  CHECK(s.dimension() == 2);
  const auto c = s.coordinates(Vector{1, 3, 3});
  REQUIRE(c.has_value());
  CHECK(s.combine(*c) == Vector{1, 3, 3});
}

}
