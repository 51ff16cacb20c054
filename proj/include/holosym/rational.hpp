#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace holosym {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical rendering: "p/q" in lowest terms, or "p" when the denominator is one.
inline std::string to_string(const Rational &r) { return r.get_str(); }

/// Accepts "p", "-p" and "p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);

/// Canonicalized p/q; q must be nonzero.
inline Rational make_rational(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational &r) { return sgn(r) == 0; }

} // namespace holosym
