#pragma once

#include "holosym/error.hpp"
#include "holosym/linalg.hpp"
#include "holosym/poly.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace holosym {

// Frame basis of V = Rp + E + Rq: index 0 is p, 1..n are e_1..e_n, n+1 is q.
// The metric has g(p,q) = g(e_i,e_i) = 1 and is its own inverse, so raising or
// lowering an index is the permutation p <-> q.

inline std::size_t frame_dim(int n) { return static_cast<std::size_t>(n) + 2; }
inline std::size_t index_p() { return 0; }
inline std::size_t index_q(int n) { return static_cast<std::size_t>(n) + 1; }
inline std::size_t dual_index(std::size_t a, int n) {
  if (a == 0) {
    return index_q(n);
  }
  if (a == index_q(n)) {
    return 0;
  }
  return a;
}
/// "p", "q" or the decimal index of e_i.
std::string frame_index_name(std::size_t a, int n);

class FrameVector {
public:
  FrameVector() = default;
  explicit FrameVector(int n) : n_(n), c_(frame_dim(n)) {}
  FrameVector(int n, Vector components);

  static FrameVector p(int n);
  static FrameVector q(int n);
  static FrameVector e(int n, int i);
  static FrameVector basis(int n, std::size_t a);

  int n() const { return n_; }
  const Vector &components() const { return c_; }
  const Rational &operator[](std::size_t a) const { return c_[a]; }
  Rational &operator[](std::size_t a) { return c_[a]; }

  /// Index-lowered components X_a = g(X, f_a).
  Vector lowered() const;

  FrameVector &operator+=(const FrameVector &o);
  FrameVector &operator-=(const FrameVector &o);
  FrameVector &operator*=(const Rational &s);
  friend FrameVector operator+(FrameVector a, const FrameVector &b) { return a += b; }
  friend FrameVector operator-(FrameVector a, const FrameVector &b) { return a -= b; }
  friend FrameVector operator*(const Rational &s, FrameVector a) { return a *= s; }
  bool operator==(const FrameVector &) const = default;

private:
  int n_ = 0;
  Vector c_;
};

Rational metric_pair(const FrameVector &x, const FrameVector &y);

/// Antisymmetric contravariant 2-tensor w^{ab}, acting on V by
/// (X^Y)Z = g(X,Z)Y - g(Y,Z)X.
class Bivector {
public:
  Bivector() = default;
  explicit Bivector(int n) : n_(n), w_(frame_dim(n), frame_dim(n)) {}
  /// Throws StructuralError unless the table is antisymmetric.
  static Bivector from_table(int n, const ExactMatrix &table);
  /// Inverse of endomorphism(); throws StructuralError if the map is not g-skew.
  static Bivector from_endomorphism(int n, const ExactMatrix &endo);

  int n() const { return n_; }
  const Rational &operator()(std::size_t a, std::size_t b) const { return w_(a, b); }
  const ExactMatrix &table() const { return w_; }
  /// Matrix of the action: (BX)^a = sum_c endo(a,c) X^c.
  ExactMatrix endomorphism() const;
  FrameVector apply(const FrameVector &x) const;
  bool is_zero() const { return w_.is_zero(); }

  /// Components on the upper triangle (a<b), row-major; length N(N-1)/2.
  Vector packed() const;
  static Bivector unpacked(int n, const Vector &packed);

  Bivector &operator+=(const Bivector &o);
  Bivector &operator-=(const Bivector &o);
  Bivector &operator*=(const Rational &s);
  friend Bivector operator+(Bivector a, const Bivector &b) { return a += b; }
  friend Bivector operator-(Bivector a, const Bivector &b) { return a -= b; }
  friend Bivector operator*(const Rational &s, Bivector a) { return a *= s; }
  bool operator==(const Bivector &) const = default;

  std::string to_string() const;

private:
  void set(std::size_t a, std::size_t b, const Rational &v);
  int n_ = 0;
  ExactMatrix w_;
};

Bivector wedge(const FrameVector &x, const FrameVector &y);
Bivector bivector_bracket(const Bivector &a, const Bivector &b);

inline Rational zero_like(const Rational &) { return 0; }
inline Poly zero_like(const Poly &p) { return Poly(p.variable_count()); }
inline bool entry_is_zero(const Rational &r) { return is_zero(r); }
inline bool entry_is_zero(const Poly &p) { return p.is_zero(); }

/// Dense contravariant tensor over the frame basis, row-major with the first
/// index most significant.
template <typename S> class FrameTensor {
public:
  FrameTensor() = default;
  FrameTensor(int n, int rank, S zero = S()) : n_(n), rank_(rank), zero_(std::move(zero)) {
    std::size_t size = 1;
    for (int k = 0; k < rank; ++k) {
      size *= frame_dim(n);
    }
    data_.assign(size, zero_);
  }

  int n() const { return n_; }
  int rank() const { return rank_; }
  std::size_t size() const { return data_.size(); }
  const S &zero() const { return zero_; }

  const S &at(std::size_t flat) const { return data_[flat]; }
  S &at(std::size_t flat) { return data_[flat]; }
  const S &operator()(std::initializer_list<std::size_t> idx) const { return data_[flat(idx)]; }
  S &operator()(std::initializer_list<std::size_t> idx) { return data_[flat(idx)]; }
  const std::vector<S> &data() const { return data_; }

  template <typename Range> std::size_t flat(const Range &idx) const {
    std::size_t f = 0;
    for (auto i : idx) {
      f = f * frame_dim(n_) + i;
    }
    return f;
  }
  /// Multi-index of a flat position.
  std::vector<std::size_t> unflat(std::size_t f) const {
    std::vector<std::size_t> idx(static_cast<std::size_t>(rank_));
    for (int k = rank_ - 1; k >= 0; --k) {
      idx[static_cast<std::size_t>(k)] = f % frame_dim(n_);
      f /= frame_dim(n_);
    }
    return idx;
  }

  bool is_zero() const {
    for (const auto &x : data_) {
      if (!entry_is_zero(x)) {
        return false;
      }
    }
    return true;
  }

  FrameTensor &operator+=(const FrameTensor &o) {
    check_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) {
      data_[i] += o.data_[i];
    }
    return *this;
  }
  FrameTensor &operator-=(const FrameTensor &o) {
    check_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) {
      data_[i] -= o.data_[i];
    }
    return *this;
  }
  FrameTensor &operator*=(const Rational &s) {
    for (auto &x : data_) {
      x *= s;
    }
    return *this;
  }
  friend FrameTensor operator+(FrameTensor a, const FrameTensor &b) { return a += b; }
  friend FrameTensor operator-(FrameTensor a, const FrameTensor &b) { return a -= b; }
  friend FrameTensor operator*(const Rational &s, FrameTensor a) { return a *= s; }
  bool operator==(const FrameTensor &o) const {
    return n_ == o.n_ && rank_ == o.rank_ && data_ == o.data_;
  }

  void check_shape(const FrameTensor &o) const {
    if (n_ != o.n_ || rank_ != o.rank_) {
      throw StructuralError("tensor shape mismatch");
    }
  }

private:
  int n_ = 0;
  int rank_ = 0;
  S zero_{};
  std::vector<S> data_;
};

using RationalTensor = FrameTensor<Rational>;
using PolyTensor = FrameTensor<Poly>;

RationalTensor to_tensor(const FrameVector &x);
RationalTensor to_tensor(const Bivector &b);
/// Reads a rank-2 tensor as a bivector; throws unless antisymmetric.
Bivector to_bivector(const RationalTensor &t);

RationalTensor tensor_product(const RationalTensor &a, const RationalTensor &b);
/// Entry-wise scaling of a rational tensor by a polynomial coefficient.
PolyTensor scale(const RationalTensor &t, const Poly &c);
PolyTensor tensor_product(const RationalTensor &a, const PolyTensor &b);

/// w (.) t = w (x) t + t (x) w, a rank-4 tensor.
RationalTensor sym_prod(const Bivector &w, const Bivector &t);

/// Derivation action on contravariant tensors:
/// (xi.T)^{a1..ar} = sum_k xi^{a_k}_b T^{a1..b..ar}.
template <typename S> FrameTensor<S> lie_action(const Bivector &xi, const FrameTensor<S> &t) {
  if (xi.n() != t.n()) {
    throw StructuralError("dimension mismatch in lie_action");
  }
  const std::size_t dim = frame_dim(t.n());
  const ExactMatrix endo = xi.endomorphism();
  std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      if (!is_zero(endo(a, b))) {
        cols[a].emplace_back(b, endo(a, b));
      }
    }
  }
  FrameTensor<S> out(t.n(), t.rank(), t.zero());
  std::size_t stride = 1;
  for (int k = t.rank() - 1; k >= 0; --k) {
    for (std::size_t f = 0; f < t.size(); ++f) {
      const std::size_t a = (f / stride) % dim;
      const std::size_t base = f - a * stride;
      for (const auto &[b, c] : cols[a]) {
        const S &src = t.at(base + b * stride);
        if (!entry_is_zero(src)) {
          S term = src;
          term *= c;
          out.at(f) += term;
        }
      }
    }
    stride *= dim;
  }
  return out;
}

/// Standard complex structure J = sum_i e_i ^ e_{i+m} on E = R^{2m}, as a
/// bivector of V with n = 2m. J e_i = e_{i+m}, J e_{i+m} = -e_i.
Bivector complex_structure(int m);

struct JExtensionReport {
  int m = 0;
  std::size_t sym2_dimension = 0;
  std::size_t sym3_dimension = 0;
  bool j_squared_is_minus_identity = false;
  /// J (J^2 + 4) = 0 on the second symmetric power.
  bool sym2_identity = false;
  /// (J^2 + 1)(J^2 + 9) = 0 on the third symmetric power.
  bool sym3_identity = false;
  /// The factors are needed: no proper divisor annihilates.
  bool sym2_minimal = false;
  bool sym3_minimal = false;

  bool passed() const {
    return j_squared_is_minus_identity && sym2_identity && sym3_identity && sym2_minimal && sym3_minimal;
  }
};

JExtensionReport j_extension_check(int m);

/// Basis of the symmetric tensors of degree k over E inside the rank-k tensors
/// of V, one symmetrized monomial per multiset of e-indices.
std::vector<RationalTensor> symmetric_power_basis(int n, int k);

/// Matrix of the action of xi on the span of `basis` (which must be invariant).
ExactMatrix action_matrix(const Bivector &xi, const std::vector<RationalTensor> &basis);

} // namespace holosym
