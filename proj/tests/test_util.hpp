#pragma once

#include "holosym/poly.hpp"

#include <random>

namespace holosym::testing {

inline int uniform(std::mt19937_64 &rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Random polynomial over n transversal coordinates, v included.
inline Poly random_poly(std::mt19937_64 &rng, int n, int max_terms, int max_degree) {
  const std::size_t nv = static_cast<std::size_t>(n) + 2;
  Poly p(nv);
  const int terms = uniform(rng, 0, max_terms);
  for (int t = 0; t < terms; ++t) {
    Poly::Exponents e(nv, 0);
    const int d = uniform(rng, 0, max_degree);
    for (int k = 0; k < d; ++k) {
      e[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(nv) - 1))] += 1;
    }
    p += Poly::monomial(nv, std::move(e), make_rational(uniform(rng, -5, 5), uniform(rng, 1, 4)));
  }
  return p;
}

} // namespace holosym::testing
