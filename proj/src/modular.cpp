#include "holosym/modular.hpp"

#include "holosym/error.hpp"

#include <algorithm>

namespace holosym {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  // Fermat; p is prime.
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  std::uint64_t e = p - 2;
  while (e > 0) {
    if (e & 1U) {
      result = mul_mod(result, base, p);
    }
    base = mul_mod(base, base, p);
    e >>= 1U;
  }
  return result;
}

std::uint64_t modular_prime(std::size_t i) {
  Integer start = Integer(1) << 62;
  start -= Integer(static_cast<unsigned long>(i + 1)) * Integer(1000000007UL);
  Integer p;
  mpz_nextprime(p.get_mpz_t(), start.get_mpz_t());
  return p.get_ui();
}

std::optional<ModMatrix> ModMatrix::reduce(const SparseMatrix &m, std::uint64_t prime) {
  ModMatrix out(m.rows(), m.cols(), prime);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto &[c, v] : m.row_data()[r]) {
      const std::uint64_t den = mpz_fdiv_ui(v.get_den_mpz_t(), prime);
      if (den == 0) {
        return std::nullopt;
      }
      const std::uint64_t num = mpz_fdiv_ui(v.get_num_mpz_t(), prime);
      out(r, c) = mul_mod(num, inv_mod(den, prime), prime);
    }
  }
  return out;
}

namespace {

void eliminate_row(std::uint64_t *target, const std::uint64_t *pivot_row, std::size_t from, std::size_t cols,
                   std::uint64_t p) {
  const std::uint64_t factor = target[from];
  if (factor == 0) {
    return;
  }
  const std::uint64_t neg = p - factor;
  for (std::size_t j = from; j < cols; ++j) {
    if (pivot_row[j] != 0) {
      target[j] = (target[j] + mul_mod(neg, pivot_row[j], p)) % p;
    }
  }
}

template <bool Parallel> std::vector<std::size_t> rref_mod_impl(ModMatrix &m) {
  const std::uint64_t p = m.prime();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t k = r;
    while (k < rows && m(k, c) == 0) {
      ++k;
    }
    if (k == rows) {
      continue;
    }
    if (k != r) {
      std::swap_ranges(m.row(k), m.row(k) + cols, m.row(r));
    }
    std::uint64_t *prow = m.row(r);
    const std::uint64_t inv = inv_mod(prow[c], p);
    for (std::size_t j = c; j < cols; ++j) {
      prow[j] = mul_mod(prow[j], inv, p);
    }
    const long long nrows = static_cast<long long>(rows);
    if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
      for (long long i = 0; i < nrows; ++i) {
        if (static_cast<std::size_t>(i) != r) {
          eliminate_row(m.row(static_cast<std::size_t>(i)), prow, c, cols, p);
        }
      }
    } else {
      for (long long i = 0; i < nrows; ++i) {
        if (static_cast<std::size_t>(i) != r) {
          eliminate_row(m.row(static_cast<std::size_t>(i)), prow, c, cols, p);
        }
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Earlier pivots mean a prefix-rank profile closer to the rational one.
bool better_pattern(const std::vector<std::size_t> &a, const std::vector<std::size_t> &b) {
  if (a.size() != b.size()) {
    return a.size() > b.size();
  }
  return a < b;
}

} // namespace

std::vector<std::size_t> rref_mod(ModMatrix &m) { return rref_mod_impl<true>(m); }
std::vector<std::size_t> rref_mod_serial(ModMatrix &m) { return rref_mod_impl<false>(m); }

std::size_t rank_mod(const SparseMatrix &m, std::uint64_t prime) {
  auto mm = ModMatrix::reduce(m, prime);
  if (!mm) {
    throw PreconditionError("prime divides a denominator");
  }
  return rref_mod(*mm).size();
}

std::optional<Rational> rational_reconstruct(const Integer &residue, const Integer &modulus) {
  Integer bound;
  Integer half = modulus / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  Integer r0 = modulus;
  Integer r1 = residue % modulus;
  if (r1 < 0) {
    r1 += modulus;
  }
  Integer s0 = 0;
  Integer s1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (s1 == 0 || abs(s1) > bound) {
    return std::nullopt;
  }
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), s1.get_mpz_t());
  if (g != 1) {
    return std::nullopt;
  }
  Rational out(r1, s1);
  out.canonicalize();
  return out;
}

std::optional<SubspaceBasis> kernel_basis_modular(const SparseMatrix &m, std::size_t max_primes) {
  const std::size_t n = m.cols();
  std::vector<std::size_t> pattern;
  bool have_pattern = false;
  std::vector<std::size_t> free_cols;
  std::vector<std::vector<Integer>> residues; // per kernel vector, per entry
  Integer modulus = 1;

  for (std::size_t i = 0; i < max_primes; ++i) {
    const std::uint64_t p = modular_prime(i);
    auto mm = ModMatrix::reduce(m, p);
    if (!mm) {
      continue;
    }
    auto pivots = rref_mod(*mm);
    if (have_pattern && pivots != pattern) {
      if (!better_pattern(pivots, pattern)) {
        continue; // unlucky prime
      }
    }
    if (!have_pattern || pivots != pattern) {
      pattern = pivots;
      have_pattern = true;
      modulus = 1;
      std::vector<bool> is_pivot(n, false);
      for (auto c : pattern) {
        is_pivot[c] = true;
      }
      free_cols.clear();
      for (std::size_t c = 0; c < n; ++c) {
        if (!is_pivot[c]) {
          free_cols.push_back(c);
        }
      }
      residues.assign(free_cols.size(), std::vector<Integer>(n, 0));
    }
    // Kernel mod p in identity form on the free columns, merged by CRT.
    const Integer P(static_cast<unsigned long>(p));
    Integer m_inv;
    Integer mod_p = modulus % P;
    mpz_invert(m_inv.get_mpz_t(), mod_p.get_mpz_t(), P.get_mpz_t());
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
      std::vector<std::uint64_t> x(n, 0);
      x[free_cols[f]] = 1;
      for (std::size_t k = 0; k < pattern.size(); ++k) {
        const std::uint64_t a = (*mm)(k, free_cols[f]);
        x[pattern[k]] = a == 0 ? 0 : p - a;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (modulus == 1) {
          residues[f][j] = Integer(static_cast<unsigned long>(x[j]));
          continue;
        }
        Integer diff = Integer(static_cast<unsigned long>(x[j])) - residues[f][j];
        diff %= P;
        if (diff < 0) {
          diff += P;
        }
        Integer t = (diff * m_inv) % P;
        residues[f][j] += modulus * t;
      }
    }
    modulus *= P;

    std::vector<Vector> basis;
    bool ok = true;
    for (std::size_t f = 0; f < free_cols.size() && ok; ++f) {
      Vector x(n);
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (residues[f][j] == 0) {
          continue;
        }
        auto q = rational_reconstruct(residues[f][j], modulus);
        if (!q) {
          ok = false;
        } else {
          x[j] = *q;
        }
      }
      if (ok && !annihilates(m, x)) {
        ok = false;
      }
      if (ok) {
        basis.push_back(std::move(x));
      }
    }
    if (ok) {
      return SubspaceBasis::from_identity_form(n, std::move(basis), free_cols);
    }
  }
  return std::nullopt;
}

} // namespace holosym
