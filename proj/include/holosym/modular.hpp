#pragma once

#include "holosym/linalg.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace holosym {

/// Dense matrix over Z/pZ for a prime p < 2^62.
class ModMatrix {
public:
  ModMatrix(std::size_t rows, std::size_t cols, std::uint64_t prime)
      : rows_(rows), cols_(cols), prime_(prime), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t prime() const { return prime_; }
  std::uint64_t &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::uint64_t *row(std::size_t r) { return data_.data() + r * cols_; }
  const std::uint64_t *row(std::size_t r) const { return data_.data() + r * cols_; }

  /// Reduction of an exact matrix; nullopt if p divides some denominator.
  static std::optional<ModMatrix> reduce(const SparseMatrix &m, std::uint64_t prime);

private:
  std::size_t rows_;
  std::size_t cols_;
  std::uint64_t prime_;
  std::vector<std::uint64_t> data_;
};

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);

/// In-place reduced row echelon form; returns the pivot columns. Pivoting takes
/// the first column with a nonzero entry and the smallest eligible row index.
/// Row updates of each elimination step run in parallel (OpenMP).
std::vector<std::size_t> rref_mod(ModMatrix &m);
/// Serial reference implementation of rref_mod.
std::vector<std::size_t> rref_mod_serial(ModMatrix &m);

/// The i-th large prime used by the multi-modular solver (deterministic list).
std::uint64_t modular_prime(std::size_t i);

/// Kernel by multi-modular elimination, rational reconstruction and exact
/// verification against M. nullopt if reconstruction did not verify within
/// `max_primes` primes.
std::optional<SubspaceBasis> kernel_basis_modular(const SparseMatrix &m, std::size_t max_primes = 12);

/// Rank modulo a prime; a lower bound for the rank over Q.
std::size_t rank_mod(const SparseMatrix &m, std::uint64_t prime);

/// Rational reconstruction of a residue modulo `modulus` (|num|, den <= sqrt(modulus/2)).
std::optional<Rational> rational_reconstruct(const Integer &residue, const Integer &modulus);

} // namespace holosym
