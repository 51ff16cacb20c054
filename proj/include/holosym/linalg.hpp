#pragma once

#include "holosym/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace holosym {

using Vector = std::vector<Rational>;

/// Sorted (index, value) pairs with no stored zeros.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

SparseVector to_sparse(std::span<const Rational> dense);
Vector to_dense(const SparseVector &sparse, std::size_t dimension);

class ExactMatrix {
public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix from_rows(const std::vector<Vector> &rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  bool is_zero() const;

  ExactMatrix &operator+=(const ExactMatrix &other);
  ExactMatrix &operator-=(const ExactMatrix &other);
  ExactMatrix &operator*=(const Rational &c);
  friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix &b) { return a += b; }
  friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix &b) { return a -= b; }
  friend ExactMatrix operator*(ExactMatrix a, const Rational &c) { return a *= c; }
  friend ExactMatrix operator*(const ExactMatrix &a, const ExactMatrix &b);
  friend Vector operator*(const ExactMatrix &a, std::span<const Rational> x);

  bool operator==(const ExactMatrix &) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Row-sparse matrix used to assemble large constraint systems.
class SparseMatrix {
public:
  explicit SparseMatrix(std::size_t cols = 0) : cols_(cols) {}

  std::size_t cols() const { return cols_; }
  std::size_t rows() const { return rows_.size(); }
  const std::vector<SparseVector> &row_data() const { return rows_; }

  /// Appends a row; empty rows are dropped.
  void add_row(SparseVector row);
  void append(const SparseMatrix &other);

  static SparseMatrix from_dense(const ExactMatrix &m);

private:
  std::size_t cols_;
  std::vector<SparseVector> rows_;
};

/// Exact basis of a linear subspace of Q^d.
///
/// The basis is stored in identity form: there is a set of coordinate positions
/// on which the basis matrix restricts to the identity. Coordinates of a member
/// vector are therefore read directly off those positions.
class SubspaceBasis {
public:
  SubspaceBasis() = default;
  /// The zero subspace of Q^ambient.
  explicit SubspaceBasis(std::size_t ambient) : ambient_(ambient) {}

  /// Span of arbitrary generators (reduced row echelon form).
  static SubspaceBasis span(std::size_t ambient, const std::vector<Vector> &generators);
  static SubspaceBasis span_sparse(std::size_t ambient, const std::vector<SparseVector> &generators);

  /// Wraps vectors already in identity form on `positions`. Checked.
  static SubspaceBasis from_identity_form(std::size_t ambient, std::vector<Vector> vectors,
                                          std::vector<std::size_t> positions);

  std::size_t ambient_dimension() const { return ambient_; }
  std::size_t dimension() const { return vectors_.size(); }
  bool is_zero() const { return vectors_.empty(); }
  const std::vector<Vector> &vectors() const { return vectors_; }
  const Vector &vector(std::size_t i) const { return vectors_[i]; }
  const std::vector<std::size_t> &positions() const { return positions_; }

  /// Coordinates of w in this basis, or nullopt when w is not in the span.
  std::optional<Vector> coordinates(std::span<const Rational> w) const;
  bool contains(std::span<const Rational> w) const { return coordinates(w).has_value(); }
  Vector combine(std::span<const Rational> coords) const;

  /// Rank check of the stored vectors.
  bool is_independent() const;

  bool operator==(const SubspaceBasis &) const = default;

private:
  std::size_t ambient_ = 0;
  std::vector<Vector> vectors_;
  std::vector<std::size_t> positions_;
};

/// Kernel {x : Mx = 0}. Fraction-free elimination with pivoting on the first
/// nonzero column and smallest row index; the returned basis is the unique one
/// with identity entries on the free columns, so output is reproducible.
SubspaceBasis kernel_basis(const ExactMatrix &m);
SubspaceBasis kernel_basis(const SparseMatrix &m);

/// Always uses fraction-free Bareiss elimination.
SubspaceBasis kernel_basis_bareiss(const SparseMatrix &m);

std::size_t rank(const ExactMatrix &m);
std::size_t rank(const SparseMatrix &m);

/// Some x with Mx = b, or nullopt when inconsistent. Free variables are set to zero.
std::optional<Vector> solve(const ExactMatrix &m, std::span<const Rational> b);

/// Exact check M x = 0.
bool annihilates(const SparseMatrix &m, std::span<const Rational> x);

} // namespace holosym
