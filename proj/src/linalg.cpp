#include "holosym/linalg.hpp"

#include "holosym/error.hpp"
#include "holosym/modular.hpp"

#include <algorithm>
#include <unordered_map>

namespace holosym {

namespace {

// y += a * x on sorted sparse vectors.
void axpy(SparseVector &y, const Rational &a, const SparseVector &x) {
  if (is_zero(a) || x.empty()) {
    return;
  }
  SparseVector out;
  out.reserve(y.size() + x.size());
  auto i = y.begin();
  auto j = x.begin();
  while (i != y.end() || j != x.end()) {
    if (j == x.end() || (i != y.end() && i->first < j->first)) {
      out.push_back(std::move(*i++));
    } else if (i == y.end() || j->first < i->first) {
      out.emplace_back(j->first, a * j->second);
      ++j;
    } else {
      Rational v = i->second + a * j->second;
      if (!is_zero(v)) {
        out.emplace_back(i->first, std::move(v));
      }
      ++i;
      ++j;
    }
  }
  y = std::move(out);
}

const Rational *find_entry(const SparseVector &v, std::size_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const auto &e, std::size_t k) { return e.first < k; });
  return (it != v.end() && it->first == index) ? &it->second : nullptr;
}

// Row-integral copy of a sparse matrix as dense integer rows.
std::vector<std::vector<Integer>> integral_rows(const SparseMatrix &m, std::size_t extra_cols = 0) {
  std::vector<std::vector<Integer>> a;
  a.reserve(m.rows());
  for (const auto &row : m.row_data()) {
    Integer l = 1;
    for (const auto &[c, v] : row) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    }
    std::vector<Integer> dense(m.cols() + extra_cols, 0);
    for (const auto &[c, v] : row) {
      dense[c] = v.get_num() * (l / v.get_den());
    }
    a.push_back(std::move(dense));
  }
  return a;
}

// Fraction-free forward elimination to row echelon form; returns pivot columns.
// Only the first `pivot_cols` columns are eligible as pivots.
std::vector<std::size_t> bareiss_echelon(std::vector<std::vector<Integer>> &a, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  if (a.empty()) {
    return pivots;
  }
  const std::size_t width = a.front().size();
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) {
      ++p;
    }
    if (p == a.size()) {
      continue;
    }
    std::swap(a[r], a[p]);
    const Integer &piv = a[r][c];
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      Integer factor = a[i][c];
      if (factor == 0) {
        // Still scale so every row below stays a minor of the same order.
        for (std::size_t j = c + 1; j < width; ++j) {
          if (a[i][j] != 0) {
            a[i][j] = a[i][j] * piv;
            mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
          }
        }
        continue;
      }
      for (std::size_t j = c + 1; j < width; ++j) {
        Integer v = piv * a[i][j] - factor * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = piv;
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Solves the echelon rows for given values of the free variables (x must
// already hold them); fills the pivot variables.
void back_substitute(const std::vector<std::vector<Integer>> &a, const std::vector<std::size_t> &pivots,
                     std::size_t ncols, Vector &x, const std::vector<Integer> *rhs_col = nullptr) {
  for (std::size_t k = pivots.size(); k-- > 0;) {
    const std::size_t pc = pivots[k];
    Rational s = 0;
    for (std::size_t j = pc + 1; j < ncols; ++j) {
      if (a[k][j] != 0 && !is_zero(x[j])) {
        s += Rational(a[k][j]) * x[j];
      }
    }
    if (rhs_col != nullptr) {
      s -= Rational((*rhs_col)[k]);
    }
    x[pc] = -s / Rational(a[k][pc]);
  }
}

} // namespace

SparseVector to_sparse(std::span<const Rational> dense) {
  SparseVector out;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (!is_zero(dense[i])) {
      out.emplace_back(i, dense[i]);
    }
  }
  return out;
}

Vector to_dense(const SparseVector &sparse, std::size_t dimension) {
  Vector out(dimension);
  for (const auto &[i, v] : sparse) {
    out[i] = v;
  }
  return out;
}

// ---------------------------------------------------------------- ExactMatrix

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1;
  }
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<Vector> &rows) {
  if (rows.empty()) {
    return {};
  }
  ExactMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) {
      throw StructuralError("ragged rows");
    }
    std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r * m.cols_));
  }
  return m;
}

bool ExactMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational &x) { return holosym::is_zero(x); });
}

ExactMatrix &ExactMatrix::operator+=(const ExactMatrix &other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw StructuralError("matrix dimensions differ");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    data_[i] += other.data_[i];
  }
  return *this;
}

ExactMatrix &ExactMatrix::operator-=(const ExactMatrix &other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw StructuralError("matrix dimensions differ");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    data_[i] -= other.data_[i];
  }
  return *this;
}

ExactMatrix &ExactMatrix::operator*=(const Rational &c) {
  for (auto &x : data_) {
    x *= c;
  }
  return *this;
}

ExactMatrix operator*(const ExactMatrix &a, const ExactMatrix &b) {
  if (a.cols_ != b.rows_) {
    throw StructuralError("matrix product dimension mismatch");
  }
  ExactMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational &aik = a(i, k);
      if (is_zero(aik)) {
        continue;
      }
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!is_zero(b(k, j))) {
          out(i, j) += aik * b(k, j);
        }
      }
    }
  }
  return out;
}

Vector operator*(const ExactMatrix &a, std::span<const Rational> x) {
  if (a.cols_ != x.size()) {
    throw StructuralError("matrix-vector dimension mismatch");
  }
  Vector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (!is_zero(a(i, k)) && !is_zero(x[k])) {
        out[i] += a(i, k) * x[k];
      }
    }
  }
  return out;
}

// --------------------------------------------------------------- SparseMatrix

void SparseMatrix::add_row(SparseVector row) {
  if (row.empty()) {
    return;
  }
  if (row.back().first >= cols_) {
    throw StructuralError("sparse row index exceeds column count");
  }
  rows_.push_back(std::move(row));
}

void SparseMatrix::append(const SparseMatrix &other) {
  if (other.cols_ != cols_) {
    throw StructuralError("sparse matrices differ in column count");
  }
  rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

SparseMatrix SparseMatrix::from_dense(const ExactMatrix &m) {
  SparseMatrix s(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    s.add_row(to_sparse(m.row(r)));
  }
  return s;
}

// ------------------------------------------------------------- SubspaceBasis

SubspaceBasis SubspaceBasis::span_sparse(std::size_t ambient, const std::vector<SparseVector> &generators) {
  struct Row {
    std::size_t pivot;
    SparseVector v;
  };
  std::vector<Row> rows;
  std::unordered_map<std::size_t, std::size_t> pivot_row;
  for (const auto &g : generators) {
    if (!g.empty() && g.back().first >= ambient) {
      throw StructuralError("generator exceeds ambient dimension");
    }
    SparseVector w = g;
    std::vector<std::pair<std::size_t, Rational>> hits;
    for (const auto &[idx, val] : w) {
      auto it = pivot_row.find(idx);
      if (it != pivot_row.end()) {
        hits.emplace_back(it->second, val);
      }
    }
    for (const auto &[r, val] : hits) {
      axpy(w, -val, rows[r].v);
    }
    if (w.empty()) {
      continue;
    }
    const std::size_t pivot = w.front().first;
    const Rational inv = 1 / w.front().second;
    for (auto &e : w) {
      e.second *= inv;
    }
    for (auto &row : rows) {
      if (const Rational *c = find_entry(row.v, pivot)) {
        Rational coeff = *c;
        axpy(row.v, -coeff, w);
      }
    }
    pivot_row.emplace(pivot, rows.size());
    rows.push_back({pivot, std::move(w)});
  }
  std::sort(rows.begin(), rows.end(), [](const Row &a, const Row &b) { return a.pivot < b.pivot; });
  SubspaceBasis s(ambient);
  for (auto &row : rows) {
    s.positions_.push_back(row.pivot);
    s.vectors_.push_back(to_dense(row.v, ambient));
  }
  return s;
}

SubspaceBasis SubspaceBasis::span(std::size_t ambient, const std::vector<Vector> &generators) {
  std::vector<SparseVector> sparse;
  sparse.reserve(generators.size());
  for (const auto &g : generators) {
    if (g.size() != ambient) {
      throw StructuralError("generator length differs from ambient dimension");
    }
    sparse.push_back(to_sparse(g));
  }
  return span_sparse(ambient, sparse);
}

SubspaceBasis SubspaceBasis::from_identity_form(std::size_t ambient, std::vector<Vector> vectors,
                                                std::vector<std::size_t> positions) {
  if (vectors.size() != positions.size()) {
    throw StructuralError("identity form needs one position per vector");
  }
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient) {
      throw StructuralError("basis vector length differs from ambient dimension");
    }
    for (std::size_t j = 0; j < positions.size(); ++j) {
      if (vectors[i][positions[j]] != (i == j ? 1 : 0)) {
        throw StructuralError("basis is not in identity form on the given positions");
      }
    }
  }
  SubspaceBasis s(ambient);
  s.vectors_ = std::move(vectors);
  s.positions_ = std::move(positions);
  return s;
}

std::optional<Vector> SubspaceBasis::coordinates(std::span<const Rational> w) const {
  if (w.size() != ambient_) {
    throw StructuralError("vector length differs from ambient dimension");
  }
  Vector coords(vectors_.size());
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    coords[i] = w[positions_[i]];
  }
  Vector residual(w.begin(), w.end());
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    if (holosym::is_zero(coords[i])) {
      continue;
    }
    for (std::size_t k = 0; k < ambient_; ++k) {
      if (!holosym::is_zero(vectors_[i][k])) {
        residual[k] -= coords[i] * vectors_[i][k];
      }
    }
  }
  for (const auto &r : residual) {
    if (!holosym::is_zero(r)) {
      return std::nullopt;
    }
  }
  return coords;
}

Vector SubspaceBasis::combine(std::span<const Rational> coords) const {
  if (coords.size() != vectors_.size()) {
    throw StructuralError("coordinate count differs from subspace dimension");
  }
  Vector out(ambient_);
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    if (holosym::is_zero(coords[i])) {
      continue;
    }
    for (std::size_t k = 0; k < ambient_; ++k) {
      if (!holosym::is_zero(vectors_[i][k])) {
        out[k] += coords[i] * vectors_[i][k];
      }
    }
  }
  return out;
}

bool SubspaceBasis::is_independent() const {
  if (vectors_.empty()) {
    return true;
  }
  return rank(ExactMatrix::from_rows(vectors_)) == vectors_.size();
}

// ------------------------------------------------------------ kernel & rank

SubspaceBasis kernel_basis_bareiss(const SparseMatrix &m) {
  const std::size_t n = m.cols();
  auto a = integral_rows(m);
  const auto pivots = bareiss_echelon(a, n);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) {
    is_pivot[p] = true;
  }
  std::vector<Vector> basis;
  std::vector<std::size_t> free_cols;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) {
      continue;
    }
    Vector x(n);
    x[f] = 1;
    back_substitute(a, pivots, n, x);
    basis.push_back(std::move(x));
    free_cols.push_back(f);
  }
  return SubspaceBasis::from_identity_form(n, std::move(basis), std::move(free_cols));
}

SubspaceBasis kernel_basis(const SparseMatrix &m) {
  // Small systems go straight to Bareiss; large ones through the modular solver,
  // whose output is identical (same canonical basis) once verified.
  if (m.cols() <= 40 || m.rows() == 0) {
    return kernel_basis_bareiss(m);
  }
  if (auto k = kernel_basis_modular(m)) {
    return std::move(*k);
  }
  return kernel_basis_bareiss(m);
}

SubspaceBasis kernel_basis(const ExactMatrix &m) { return kernel_basis(SparseMatrix::from_dense(m)); }

std::size_t rank(const SparseMatrix &m) { return m.cols() - kernel_basis(m).dimension(); }

std::size_t rank(const ExactMatrix &m) { return rank(SparseMatrix::from_dense(m)); }

std::optional<Vector> solve(const ExactMatrix &m, std::span<const Rational> b) {
  if (b.size() != m.rows()) {
    throw StructuralError("right-hand side length differs from row count");
  }
  const std::size_t n = m.cols();
  // Augmented system; the last column is never a pivot candidate.
  SparseMatrix aug(n + 1);
  std::vector<std::vector<Integer>> a;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseVector row = to_sparse(m.row(r));
    if (!is_zero(b[r])) {
      row.emplace_back(n, b[r]);
    }
    if (row.empty()) {
      continue;
    }
    aug.add_row(std::move(row));
  }
  a = integral_rows(aug);
  const auto pivots = bareiss_echelon(a, n);
  for (std::size_t r = pivots.size(); r < a.size(); ++r) {
    if (a[r][n] != 0) {
      return std::nullopt;
    }
  }
  std::vector<Integer> rhs(pivots.size());
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    rhs[k] = a[k][n];
  }
  Vector x(n);
  back_substitute(a, pivots, n, x, &rhs);
  return x;
}

bool annihilates(const SparseMatrix &m, std::span<const Rational> x) {
  if (x.size() != m.cols()) {
    throw StructuralError("vector length differs from column count");
  }
  for (const auto &row : m.row_data()) {
    Rational s = 0;
    for (const auto &[c, v] : row) {
      if (!is_zero(x[c])) {
        s += v * x[c];
      }
    }
    if (!is_zero(s)) {
      return false;
    }
  }
  return true;
}

} // namespace holosym
