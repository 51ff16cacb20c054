#pragma once

#include "holosym/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace holosym {

/// Sparse multivariate polynomial with rational coefficients.
///
/// A polynomial over n transversal coordinates lives in n+2 variables, ordered
/// (v, x1, ..., xn, u). Terms are kept in descending graded-lex order with
/// v < x1 < ... < xn < u, without zero coefficients, so structural equality is
/// mathematical equality and printing is canonical.
class Poly {
public:
  using Exponents = std::vector<std::uint32_t>;

  struct Term {
    Exponents exponents;
    Rational coefficient;

    bool operator==(const Term &) const = default;
  };

  Poly() = default;
  explicit Poly(std::size_t variable_count) : nvars_(variable_count) {}

  static Poly constant(std::size_t variable_count, const Rational &c);
  static Poly variable(std::size_t variable_count, std::size_t index);
  static Poly monomial(std::size_t variable_count, Exponents exponents, const Rational &c);

  std::size_t variable_count() const { return nvars_; }
  /// Number of transversal coordinates n (variable count minus two).
  int transversal_dimension() const { return static_cast<int>(nvars_) - 2; }

  const std::vector<Term> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the monomial with the given exponents (zero if absent).
  Rational coefficient(const Exponents &exponents) const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_in(std::size_t var) const;

  Poly &operator+=(const Poly &other);
  Poly &operator-=(const Poly &other);
  Poly &operator*=(const Poly &other);
  Poly &operator*=(const Rational &c);

  friend Poly operator+(Poly a, const Poly &b) { return a += b; }
  friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
  friend Poly operator*(const Poly &a, const Poly &b);
  friend Poly operator*(Poly a, const Rational &c) { return a *= c; }
  friend Poly operator*(const Rational &c, Poly a) { return a *= c; }
  Poly operator-() const;

  bool operator==(const Poly &other) const = default;

  /// Partial derivative with respect to variable `var`.
  Poly derivative(std::size_t var) const;

  /// Canonical text form, e.g. "u^2*x1^2 - 3/2*x2^2"; the zero polynomial prints "0".
  std::string to_string() const;

  /// Name of variable `index` in a ring of `variable_count` variables.
  static std::string variable_name(std::size_t variable_count, std::size_t index);

  /// Graded-lex comparison, true when a precedes b in the ascending order.
  static bool grlex_less(const Exponents &a, const Exponents &b);

private:
  void check_compatible(const Poly &other) const;
  void add_scaled(const Poly &other, int sign);

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

Poly poly_add(const Poly &a, const Poly &b);
Poly poly_mul(const Poly &a, const Poly &b);
Poly poly_scale(const Poly &a, const Rational &c);
Poly partial_derivative(const Poly &f, std::size_t var);

/// Parses text against the grammar
///   expr := ['-'] term (('+'|'-') term)* ; term := factor ('*' factor)*
///   factor := base ('^' NONNEG_INT)? ; base := RATIONAL | VAR | '(' expr ')'
/// with variables v, u, x1..xn. Throws ParseError.
Poly parse_polynomial(std::string_view text, int n);

} // namespace holosym
