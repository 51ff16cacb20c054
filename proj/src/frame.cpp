#include "holosym/frame.hpp"

#include <algorithm>
#include <sstream>

namespace holosym {

std::string frame_index_name(std::size_t a, int n) {
  if (a == index_p()) {
    return "p";
  }
  if (a == index_q(n)) {
    return "q";
  }
  return std::to_string(a);
}

FrameVector::FrameVector(int n, Vector components) : n_(n), c_(std::move(components)) {
  if (c_.size() != frame_dim(n)) {
    throw StructuralError("frame vector has wrong component count");
  }
}

FrameVector FrameVector::basis(int n, std::size_t a) {
  FrameVector v(n);
  v.c_.at(a) = 1;
  return v;
}
FrameVector FrameVector::p(int n) { return basis(n, index_p()); }
FrameVector FrameVector::q(int n) { return basis(n, index_q(n)); }
FrameVector FrameVector::e(int n, int i) {
  if (i < 1 || i > n) {
    throw StructuralError("e_i index out of range");
  }
  return basis(n, static_cast<std::size_t>(i));
}

Vector FrameVector::lowered() const {
  Vector out(c_.size());
  for (std::size_t a = 0; a < c_.size(); ++a) {
    out[a] = c_[dual_index(a, n_)];
  }
  return out;
}

FrameVector &FrameVector::operator+=(const FrameVector &o) {
  if (o.n_ != n_) {
    throw StructuralError("dimension mismatch");
  }
  for (std::size_t a = 0; a < c_.size(); ++a) {
    c_[a] += o.c_[a];
  }
  return *this;
}
FrameVector &FrameVector::operator-=(const FrameVector &o) {
  if (o.n_ != n_) {
    throw StructuralError("dimension mismatch");
  }
  for (std::size_t a = 0; a < c_.size(); ++a) {
    c_[a] -= o.c_[a];
  }
  return *this;
}
FrameVector &FrameVector::operator*=(const Rational &s) {
  for (auto &x : c_) {
    x *= s;
  }
  return *this;
}

Rational metric_pair(const FrameVector &x, const FrameVector &y) {
  if (x.n() != y.n()) {
    throw StructuralError("dimension mismatch in metric_pair");
  }
  Rational s = 0;
  for (std::size_t a = 0; a < frame_dim(x.n()); ++a) {
    s += x[a] * y[dual_index(a, x.n())];
  }
  return s;
}

void Bivector::set(std::size_t a, std::size_t b, const Rational &v) {
  w_(a, b) = v;
  w_(b, a) = -v;
}

Bivector Bivector::from_table(int n, const ExactMatrix &table) {
  const std::size_t dim = frame_dim(n);
  if (table.rows() != dim || table.cols() != dim) {
    throw StructuralError("bivector table has wrong size");
  }
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = a; b < dim; ++b) {
      if (table(a, b) != -table(b, a)) {
        throw StructuralError("bivector table is not antisymmetric");
      }
    }
  }
  Bivector out(n);
  out.w_ = table;
  return out;
}

// endo^a_c = w^{b a} g_{b c}, and g_{bc} is nonzero only for b = dual(c).
ExactMatrix Bivector::endomorphism() const {
  const std::size_t dim = frame_dim(n_);
  ExactMatrix endo(dim, dim);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t c = 0; c < dim; ++c) {
      endo(a, c) = w_(dual_index(c, n_), a);
    }
  }
  return endo;
}

Bivector Bivector::from_endomorphism(int n, const ExactMatrix &endo) {
  const std::size_t dim = frame_dim(n);
  ExactMatrix table(dim, dim);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      table(a, b) = endo(b, dual_index(a, n));
    }
  }
  return from_table(n, table);
}

FrameVector Bivector::apply(const FrameVector &x) const {
  if (x.n() != n_) {
    throw StructuralError("dimension mismatch in bivector action");
  }
  const std::size_t dim = frame_dim(n_);
  FrameVector out(n_);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t c = 0; c < dim; ++c) {
      const Rational &w = w_(dual_index(c, n_), a);
      if (!holosym::is_zero(w)) {
        out[a] += w * x[c];
      }
    }
  }
  return out;
}

Vector Bivector::packed() const {
  const std::size_t dim = frame_dim(n_);
  Vector out;
  out.reserve(dim * (dim - 1) / 2);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = a + 1; b < dim; ++b) {
      out.push_back(w_(a, b));
    }
  }
  return out;
}

Bivector Bivector::unpacked(int n, const Vector &packed) {
  const std::size_t dim = frame_dim(n);
  if (packed.size() != dim * (dim - 1) / 2) {
    throw StructuralError("packed bivector has wrong length");
  }
  Bivector out(n);
  std::size_t k = 0;
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = a + 1; b < dim; ++b) {
      out.set(a, b, packed[k++]);
    }
  }
  return out;
}

Bivector &Bivector::operator+=(const Bivector &o) {
  if (o.n_ != n_) {
    throw StructuralError("dimension mismatch");
  }
  w_ += o.w_;
  return *this;
}
Bivector &Bivector::operator-=(const Bivector &o) {
  if (o.n_ != n_) {
    throw StructuralError("dimension mismatch");
  }
  w_ -= o.w_;
  return *this;
}
Bivector &Bivector::operator*=(const Rational &s) {
  w_ *= s;
  return *this;
}

std::string Bivector::to_string() const {
  std::ostringstream os;
  const std::size_t dim = frame_dim(n_);
  bool first = true;
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = a + 1; b < dim; ++b) {
      const Rational &c = w_(a, b);
      if (holosym::is_zero(c)) {
        continue;
      }
      if (!first) {
        os << (sgn(c) < 0 ? " - " : " + ");
      } else if (sgn(c) < 0) {
        os << "-";
      }
      const Rational mag = abs(c);
      if (mag != 1) {
        os << holosym::to_string(mag) << "*";
      }
      // A leading e-index is printed as e_i.
      auto name = [&](std::size_t i) {
        const std::string s = frame_index_name(i, n_);
        return (i == index_p() || i == index_q(n_)) ? s : "e" + s;
      };
      os << name(a) << "^" << name(b);
      first = false;
    }
  }
  return first ? "0" : os.str();
}

Bivector wedge(const FrameVector &x, const FrameVector &y) {
  if (x.n() != y.n()) {
    throw StructuralError("dimension mismatch in wedge");
  }
  const std::size_t dim = frame_dim(x.n());
  ExactMatrix t(dim, dim);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      t(a, b) = x[a] * y[b] - y[a] * x[b];
    }
  }
  return Bivector::from_table(x.n(), t);
}

Bivector bivector_bracket(const Bivector &a, const Bivector &b) {
  if (a.n() != b.n()) {
    throw StructuralError("dimension mismatch in bracket");
  }
  const ExactMatrix ea = a.endomorphism();
  const ExactMatrix eb = b.endomorphism();
  return Bivector::from_endomorphism(a.n(), ea * eb - eb * ea);
}

RationalTensor to_tensor(const FrameVector &x) {
  RationalTensor t(x.n(), 1);
  for (std::size_t a = 0; a < frame_dim(x.n()); ++a) {
    t.at(a) = x[a];
  }
  return t;
}

RationalTensor to_tensor(const Bivector &b) {
  const std::size_t dim = frame_dim(b.n());
  RationalTensor t(b.n(), 2);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t c = 0; c < dim; ++c) {
      t.at(a * dim + c) = b(a, c);
    }
  }
  return t;
}

Bivector to_bivector(const RationalTensor &t) {
  if (t.rank() != 2) {
    throw StructuralError("bivector needs a rank-2 tensor");
  }
  const std::size_t dim = frame_dim(t.n());
  ExactMatrix m(dim, dim);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t c = 0; c < dim; ++c) {
      m(a, c) = t.at(a * dim + c);
    }
  }
  return Bivector::from_table(t.n(), m);
}

RationalTensor tensor_product(const RationalTensor &a, const RationalTensor &b) {
  if (a.n() != b.n()) {
    throw StructuralError("dimension mismatch in tensor product");
  }
  RationalTensor out(a.n(), a.rank() + b.rank());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (holosym::is_zero(a.at(i))) {
      continue;
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!holosym::is_zero(b.at(j))) {
        out.at(i * b.size() + j) = a.at(i) * b.at(j);
      }
    }
  }
  return out;
}

PolyTensor scale(const RationalTensor &t, const Poly &c) {
  PolyTensor out(t.n(), t.rank(), Poly(c.variable_count()));
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!holosym::is_zero(t.at(i))) {
      out.at(i) = c * t.at(i);
    }
  }
  return out;
}

PolyTensor tensor_product(const RationalTensor &a, const PolyTensor &b) {
  if (a.n() != b.n()) {
    throw StructuralError("dimension mismatch in tensor product");
  }
  PolyTensor out(a.n(), a.rank() + b.rank(), b.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (holosym::is_zero(a.at(i))) {
      continue;
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!b.at(j).is_zero()) {
        out.at(i * b.size() + j) = b.at(j) * a.at(i);
      }
    }
  }
  return out;
}

RationalTensor sym_prod(const Bivector &w, const Bivector &t) {
  const RationalTensor tw = to_tensor(w);
  const RationalTensor tt = to_tensor(t);
  return tensor_product(tw, tt) + tensor_product(tt, tw);
}

Bivector complex_structure(int m) {
  if (m < 1) {
    throw PreconditionError("complex structure needs m >= 1");
  }
  const int n = 2 * m;
  Bivector j(n);
  for (int i = 1; i <= m; ++i) {
    j += wedge(FrameVector::e(n, i), FrameVector::e(n, i + m));
  }
  return j;
}

namespace {

void symmetric_multisets(int n, int k, int start, std::vector<std::size_t> &cur,
                         std::vector<std::vector<std::size_t>> &out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i <= n; ++i) {
    cur.push_back(static_cast<std::size_t>(i));
    symmetric_multisets(n, k, i, cur, out);
    cur.pop_back();
  }
}

} // namespace

std::vector<RationalTensor> symmetric_power_basis(int n, int k) {
  std::vector<std::vector<std::size_t>> sets;
  std::vector<std::size_t> cur;
  symmetric_multisets(n, k, 1, cur, sets);
  std::vector<RationalTensor> out;
  out.reserve(sets.size());
  for (auto idx : sets) {
    RationalTensor t(n, k);
    do {
      t.at(t.flat(idx)) = 1;
    } while (std::next_permutation(idx.begin(), idx.end()));
    out.push_back(std::move(t));
  }
  return out;
}

ExactMatrix action_matrix(const Bivector &xi, const std::vector<RationalTensor> &basis) {
  if (basis.empty()) {
    return ExactMatrix(0, 0);
  }
  std::vector<Vector> vecs;
  vecs.reserve(basis.size());
  for (const auto &b : basis) {
    vecs.push_back(b.data());
  }
  const SubspaceBasis span = SubspaceBasis::span(basis.front().size(), vecs);
  if (span.dimension() != basis.size()) {
    throw StructuralError("action_matrix needs an independent basis");
  }
  // Coordinates with respect to the span basis, then back to the given basis.
  ExactMatrix to_given(basis.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    auto c = span.coordinates(vecs[j]);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      to_given(i, j) = (*c)[i];
    }
  }
  ExactMatrix image(basis.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const RationalTensor moved = lie_action(xi, basis[j]);
    auto c = span.coordinates(moved.data());
    if (!c) {
      throw StructuralError("span is not invariant under the action");
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
      image(i, j) = (*c)[i];
    }
  }
  // image holds span-coordinates; convert with the inverse of to_given.
  ExactMatrix result(basis.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    Vector col(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      col[i] = image(i, j);
    }
    auto x = solve(to_given, col);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      result(i, j) = (*x)[i];
    }
  }
  return result;
}

JExtensionReport j_extension_check(int m) {
  JExtensionReport rep;
  rep.m = m;
  const int n = 2 * m;
  const Bivector j = complex_structure(m);

  // J^2 = -1 on E, and J kills p, q.
  ExactMatrix endo = j.endomorphism();
  ExactMatrix sq = endo * endo;
  bool ok = true;
  for (std::size_t a = 0; a < frame_dim(n); ++a) {
    for (std::size_t b = 0; b < frame_dim(n); ++b) {
      const bool on_e = a >= 1 && a <= static_cast<std::size_t>(n);
      const Rational want = (a == b && on_e) ? Rational(-1) : Rational(0);
      if (sq(a, b) != want) {
        ok = false;
      }
    }
  }
  rep.j_squared_is_minus_identity = ok;

  const ExactMatrix j2 = action_matrix(j, symmetric_power_basis(n, 2));
  const ExactMatrix j3 = action_matrix(j, symmetric_power_basis(n, 3));
  rep.sym2_dimension = j2.rows();
  rep.sym3_dimension = j3.rows();

  const ExactMatrix i2 = ExactMatrix::identity(j2.rows());
  const ExactMatrix i3 = ExactMatrix::identity(j3.rows());
  const ExactMatrix j2sq = j2 * j2;
  const ExactMatrix j3sq = j3 * j3;
  const ExactMatrix f2 = j2sq + i2 * Rational(4);
  rep.sym2_identity = (j2 * f2).is_zero();
  rep.sym2_minimal = !j2.is_zero() && !f2.is_zero();
  const ExactMatrix g1 = j3sq + i3;
  const ExactMatrix g9 = j3sq + i3 * Rational(9);
  rep.sym3_identity = (g1 * g9).is_zero();
  rep.sym3_minimal = !g1.is_zero() && !g9.is_zero();
  return rep;
}

} // namespace holosym
