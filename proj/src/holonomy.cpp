#include "holosym/holonomy.hpp"

#include "holosym/curvature_spaces.hpp"
#include "holosym/error.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace holosym {

namespace {

SparseVector accumulate(std::map<std::size_t, Rational> &acc) {
  SparseVector out;
  out.reserve(acc.size());
  for (auto &[k, v] : acc) {
    if (!is_zero(v)) {
      out.emplace_back(k, std::move(v));
    }
  }
  return out;
}

SparseVector sparse_combination(const std::vector<SparseVector> &vectors, std::span<const Rational> coeffs) {
  std::map<std::size_t, Rational> acc;
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (is_zero(coeffs[j])) {
      continue;
    }
    for (const auto &[k, v] : vectors[j]) {
      acc[k] += coeffs[j] * v;
    }
  }
  return accumulate(acc);
}

Vector apply_rows(const SparseRows &rows, std::span<const Rational> x) {
  Vector out(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto &[c, v] : rows[r]) {
      if (!is_zero(x[c])) {
        out[r] += v * x[c];
      }
    }
  }
  return out;
}

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) {
    r *= b;
  }
  return r;
}

SubspaceBasis packed_span(int n, const std::vector<Bivector> &elements) {
  std::vector<Vector> packed;
  packed.reserve(elements.size());
  for (const auto &b : elements) {
    packed.push_back(b.packed());
  }
  const std::size_t dim = frame_dim(n);
  return SubspaceBasis::span(dim * (dim - 1) / 2, packed);
}

std::vector<Bivector> unpack_all(int n, const SubspaceBasis &s) {
  std::vector<Bivector> out;
  out.reserve(s.dimension());
  for (const auto &v : s.vectors()) {
    out.push_back(Bivector::unpacked(n, v));
  }
  return out;
}

Bivector e_wedge(int n, int i, int j) { return wedge(FrameVector::e(n, i), FrameVector::e(n, j)); }

void check_n(int n) {
  if (n < 1) {
    throw DescriptorError("n must be at least 1");
  }
  if (n > kMaxAlgebraN) {
    throw SizeCapError("n = " + std::to_string(n) + " exceeds the supported maximum " +
                       std::to_string(kMaxAlgebraN));
  }
}

int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DescriptorError("malformed " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) {
      break;
    }
    start = pos + 1;
  }
  return out;
}

} // namespace

// ------------------------------------------------------------ OrthogonalPart

OrthogonalPart OrthogonalPart::trivial(int n) {
  OrthogonalPart h;
  h.kind = OrthogonalKind::trivial;
  h.n = n;
  h.blocks = {n};
  return h;
}

OrthogonalPart OrthogonalPart::special_orthogonal(int n, int k) {
  if (k < 2 || k > n) {
    throw DescriptorError("so(k) needs 2 <= k <= n");
  }
  OrthogonalPart h;
  h.kind = OrthogonalKind::so;
  h.n = n;
  h.size = k;
  for (int i = 1; i <= k; ++i) {
    for (int j = i + 1; j <= k; ++j) {
      h.basis.push_back(e_wedge(n, i, j));
    }
  }
  h.blocks = {n - k, k};
  return h;
}

OrthogonalPart OrthogonalPart::unitary(int n, int m) {
  if (m < 1 || 2 * m > n) {
    throw DescriptorError("u(m) needs 1 <= 2m <= n");
  }
  // Commutant of J in so(2m), embedded in so(E).
  Bivector j(n);
  for (int i = 1; i <= m; ++i) {
    j += e_wedge(n, i, i + m);
  }
  std::vector<Bivector> candidates;
  for (int a = 1; a <= 2 * m; ++a) {
    for (int b = a + 1; b <= 2 * m; ++b) {
      candidates.push_back(e_wedge(n, a, b));
    }
  }
  const std::size_t packed_len = frame_dim(n) * (frame_dim(n) - 1) / 2;
  SparseMatrix eq(candidates.size());
  std::vector<Vector> images;
  for (const auto &c : candidates) {
    images.push_back(bivector_bracket(c, j).packed());
  }
  for (std::size_t r = 0; r < packed_len; ++r) {
    SparseVector row;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (!is_zero(images[k][r])) {
        row.emplace_back(k, images[k][r]);
      }
    }
    eq.add_row(std::move(row));
  }
  const SubspaceBasis ker = kernel_basis(eq);
  OrthogonalPart h;
  h.kind = OrthogonalKind::u;
  h.n = n;
  h.size = m;
  for (const auto &v : ker.vectors()) {
    Bivector b(n);
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (!is_zero(v[k])) {
        b += v[k] * candidates[k];
      }
    }
    h.basis.push_back(std::move(b));
  }
  h.blocks = {n - 2 * m, 2 * m};
  return h;
}

OrthogonalPart OrthogonalPart::parse(std::string_view text, int n) {
  if (text == "trivial") {
    return trivial(n);
  }
  auto inner = [&](std::string_view prefix) -> std::optional<int> {
    if (text.size() > prefix.size() + 2 && text.substr(0, prefix.size()) == prefix &&
        text[prefix.size()] == '(' && text.back() == ')') {
      return parse_int(text.substr(prefix.size() + 1, text.size() - prefix.size() - 2), "orthogonal part");
    }
    return std::nullopt;
  };
  if (auto k = inner("so")) {
    return special_orthogonal(n, *k);
  }
  if (auto m = inner("u")) {
    return unitary(n, *m);
  }
  throw DescriptorError("unknown orthogonal part '" + std::string(text) + "'");
}

std::string OrthogonalPart::name() const {
  switch (kind) {
  case OrthogonalKind::trivial:
    return "trivial";
  case OrthogonalKind::so:
    return "so(" + std::to_string(size) + ")";
  case OrthogonalKind::u:
    return "u(" + std::to_string(size) + ")";
  }
  return "?";
}

int OrthogonalPart::acting_dimension() const {
  switch (kind) {
  case OrthogonalKind::trivial:
    return 0;
  case OrthogonalKind::so:
    return size;
  case OrthogonalKind::u:
    return 2 * size;
  }
  return 0;
}

// --------------------------------------------------------------- algebras

std::string to_string(HolonomyType t) {
  switch (t) {
  case HolonomyType::full:
    return "full";
  case HolonomyType::sim:
    return "sim";
  case HolonomyType::type1:
    return "type1";
  case HolonomyType::type2:
    return "type2";
  case HolonomyType::type3:
    return "type3";
  case HolonomyType::type4:
    return "type4";
  case HolonomyType::custom:
    return "custom";
  }
  return "?";
}

bool is_closed(const std::vector<Bivector> &basis) {
  if (basis.empty()) {
    return true;
  }
  const SubspaceBasis s = packed_span(basis.front().n(), basis);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (!s.contains(bivector_bracket(basis[i], basis[j]).packed())) {
        return false;
      }
    }
  }
  return true;
}

std::vector<Bivector> lie_closure(int n, const std::vector<Bivector> &elements) {
  std::vector<Bivector> gens = elements;
  SubspaceBasis s = packed_span(n, gens);
  bool grown = true;
  while (grown) {
    grown = false;
    const auto current = unpack_all(n, s);
    for (std::size_t i = 0; i < current.size() && !grown; ++i) {
      for (std::size_t j = i + 1; j < current.size() && !grown; ++j) {
        Bivector br = bivector_bracket(current[i], current[j]);
        if (!s.contains(br.packed())) {
          gens.push_back(std::move(br));
          s = packed_span(n, gens);
          grown = true;
        }
      }
    }
  }
  return unpack_all(n, s);
}

Bivector orthogonal_projection(const Bivector &b) {
  const int n = b.n();
  const std::size_t dim = frame_dim(n);
  ExactMatrix t(dim, dim);
  for (std::size_t a = 1; a <= static_cast<std::size_t>(n); ++a) {
    for (std::size_t c = 1; c <= static_cast<std::size_t>(n); ++c) {
      t(a, c) = b(a, c);
    }
  }
  return Bivector::from_table(n, t);
}

SubspaceBasis HolonomyAlgebra::span() const {
  if (basis.empty()) {
    const std::size_t dim = frame_dim(n);
    return SubspaceBasis(dim * (dim - 1) / 2);
  }
  return packed_span(n, basis);
}

bool HolonomyAlgebra::contains(const Bivector &b) const { return span().contains(b.packed()); }

std::vector<Bivector> HolonomyAlgebra::generators() const {
  std::vector<Bivector> gens;
  const std::size_t dim = frame_dim(n);
  SubspaceBasis closure(dim * (dim - 1) / 2);
  for (const auto &b : basis) {
    if (closure.contains(b.packed())) {
      continue;
    }
    gens.push_back(b);
    closure = packed_span(n, lie_closure(n, gens));
  }
  return gens;
}

HolonomyAlgebra algebra_from_basis(int n, std::vector<Bivector> basis, std::string label) {
  for (const auto &b : basis) {
    if (b.n() != n) {
      throw StructuralError("basis element has the wrong dimension");
    }
  }
  if (!is_closed(basis)) {
    throw StructuralError("basis is not closed under the bracket");
  }
  HolonomyAlgebra g;
  g.n = n;
  g.type = HolonomyType::custom;
  g.h = OrthogonalPart::trivial(n);
  g.basis = std::move(basis);
  g.descriptor = std::move(label);
  if (g.span().dimension() != g.basis.size()) {
    throw StructuralError("basis elements are linearly dependent");
  }
  return g;
}

HolonomyAlgebra orthogonal_algebra(const OrthogonalPart &h) {
  return algebra_from_basis(h.n, h.basis, h.name() + ":n=" + std::to_string(h.n));
}

HolonomyAlgebra build_algebra(HolonomyType type, const OrthogonalPart &h, const Rational &c) {
  const int n = h.n;
  check_n(n);
  HolonomyAlgebra g;
  g.n = n;
  g.type = type;
  g.h = h;
  const FrameVector p = FrameVector::p(n);
  const FrameVector q = FrameVector::q(n);
  const Bivector pq = wedge(p, q);
  std::vector<Bivector> pE;
  for (int i = 1; i <= n; ++i) {
    pE.push_back(wedge(p, FrameVector::e(n, i)));
  }
  auto append = [&](const std::vector<Bivector> &xs) { g.basis.insert(g.basis.end(), xs.begin(), xs.end()); };
  const std::string tail = ":n=" + std::to_string(n);

  switch (type) {
  case HolonomyType::full: {
    const std::size_t dim = frame_dim(n);
    for (std::size_t a = 0; a < dim; ++a) {
      for (std::size_t b = a + 1; b < dim; ++b) {
        g.basis.push_back(wedge(FrameVector::basis(n, a), FrameVector::basis(n, b)));
      }
    }
    g.h = n >= 2 ? OrthogonalPart::special_orthogonal(n, n) : OrthogonalPart::trivial(n);
    g.descriptor = "full" + tail;
    break;
  }
  case HolonomyType::sim: {
    g.h = n >= 2 ? OrthogonalPart::special_orthogonal(n, n) : OrthogonalPart::trivial(n);
    g.basis.push_back(pq);
    append(g.h.basis);
    append(pE);
    g.descriptor = "sim" + tail;
    break;
  }
  case HolonomyType::type1:
    g.basis.push_back(pq);
    append(h.basis);
    append(pE);
    g.descriptor = "type1:" + h.name() + tail;
    break;
  case HolonomyType::type2:
    append(h.basis);
    append(pE);
    g.descriptor = "type2:" + h.name() + tail;
    break;
  case HolonomyType::type3: {
    if (h.kind != OrthogonalKind::u || 2 * h.size != n) {
      throw DescriptorError("type 3 needs h = u(m) with n = 2m");
    }
    if (is_zero(c)) {
      throw DescriptorError("type 3 needs c != 0");
    }
    g.c = c;
    Bivector j = complex_structure(h.size);
    g.basis.push_back(pq + c * j);
    std::vector<Bivector> brackets;
    for (std::size_t a = 0; a < h.basis.size(); ++a) {
      for (std::size_t b = a + 1; b < h.basis.size(); ++b) {
        brackets.push_back(bivector_bracket(h.basis[a], h.basis[b]));
      }
    }
    if (!brackets.empty()) {
      append(unpack_all(n, packed_span(n, brackets)));
    }
    append(pE);
    g.descriptor = "type3:" + h.name() + tail + ":c=" + holosym::to_string(c);
    break;
  }
  case HolonomyType::type4: {
    if (h.kind == OrthogonalKind::trivial || h.acting_dimension() > n - 1) {
      throw DescriptorError("type 4 needs a nontrivial h acting on at most n-1 coordinates");
    }
    // psi is nonzero exactly on a complement of [h,h]; that complement must be a line.
    std::vector<Bivector> brackets;
    for (std::size_t a = 0; a < h.basis.size(); ++a) {
      for (std::size_t b = a + 1; b < h.basis.size(); ++b) {
        brackets.push_back(bivector_bracket(h.basis[a], h.basis[b]));
      }
    }
    const SubspaceBasis derived = brackets.empty() ? SubspaceBasis(h.basis.front().packed().size())
                                                   : packed_span(n, brackets);
    if (derived.dimension() + 1 != h.basis.size()) {
      throw DescriptorError("type 4 needs h with one-dimensional abelianization");
    }
    const Bivector z = h.kind == OrthogonalKind::u ? [&] {
      Bivector j(n);
      for (int i = 1; i <= h.size; ++i) {
        j += e_wedge(n, i, i + h.size);
      }
      return j;
    }()
                                                   : h.basis.front();
    std::vector<Bivector> with_z = unpack_all(n, derived);
    with_z.push_back(z);
    const SubspaceBasis split = packed_span(n, with_z);
    const FrameVector en = FrameVector::e(n, n);
    for (const auto &a : h.basis) {
      // Coefficient of z in a = alpha z + (element of [h,h]).
      const auto coords = split.coordinates(a.packed());
      if (!coords) {
        throw StructuralError("orthogonal part basis outside its span");
      }
      Vector zc = z.packed();
      std::vector<Vector> dv;
      for (const auto &v : derived.vectors()) {
        dv.push_back(v);
      }
      // Solve a = alpha z + sum beta_i d_i for alpha.
      ExactMatrix m(zc.size(), dv.size() + 1);
      for (std::size_t r = 0; r < zc.size(); ++r) {
        m(r, 0) = zc[r];
        for (std::size_t i = 0; i < dv.size(); ++i) {
          m(r, i + 1) = dv[i][r];
        }
      }
      const auto sol = solve(m, a.packed());
      const Rational alpha = (*sol)[0];
      FrameVector psi_a = alpha * en;
      g.psi.push_back(psi_a);
      g.basis.push_back(a + wedge(p, psi_a));
    }
    for (int i = 1; i <= n - 1; ++i) {
      g.basis.push_back(pE[static_cast<std::size_t>(i - 1)]);
    }
    g.descriptor = "type4:" + h.name() + tail;
    break;
  }
  case HolonomyType::custom:
    throw DescriptorError("custom algebras are built from a basis");
  }

  if (!is_closed(g.basis)) {
    throw StructuralError("algebra " + g.descriptor + " is not closed under the bracket");
  }
  if (g.span().dimension() != g.basis.size()) {
    throw StructuralError("algebra " + g.descriptor + " has a dependent basis");
  }
  return g;
}

HolonomyAlgebra build_algebra(std::string_view descriptor) {
  const auto parts = split(descriptor, ':');
  const std::string_view kind = parts.front();
  HolonomyType type;
  if (kind == "full") {
    type = HolonomyType::full;
  } else if (kind == "sim") {
    type = HolonomyType::sim;
  } else if (kind == "type1") {
    type = HolonomyType::type1;
  } else if (kind == "type2") {
    type = HolonomyType::type2;
  } else if (kind == "type3") {
    type = HolonomyType::type3;
  } else if (kind == "type4") {
    type = HolonomyType::type4;
  } else {
    throw DescriptorError("unknown algebra type '" + std::string(kind) + "'");
  }
  const bool needs_h = type != HolonomyType::full && type != HolonomyType::sim;
  std::size_t next = 1;
  std::string_view h_text;
  if (needs_h) {
    if (parts.size() < 2) {
      throw DescriptorError("missing orthogonal part in '" + std::string(descriptor) + "'");
    }
    h_text = parts[1];
    next = 2;
  }
  std::optional<int> n;
  std::optional<Rational> c;
  for (std::size_t i = next; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string_view::npos) {
      throw DescriptorError("expected key=value, got '" + std::string(parts[i]) + "'");
    }
    const auto key = parts[i].substr(0, eq);
    const auto value = parts[i].substr(eq + 1);
    if (key == "n") {
      n = parse_int(value, "n");
    } else if (key == "c" && type == HolonomyType::type3) {
      try {
        c = parse_rational(value);
      } catch (const Error &) {
        throw DescriptorError("malformed c: '" + std::string(value) + "'");
      }
    } else {
      throw DescriptorError("unexpected key '" + std::string(key) + "'");
    }
  }
  if (!n) {
    throw DescriptorError("descriptor needs n=<int>");
  }
  check_n(*n);
  const OrthogonalPart h = needs_h ? OrthogonalPart::parse(h_text, *n) : OrthogonalPart::trivial(*n);
  return build_algebra(type, h, c.value_or(Rational(1)));
}

// ---------------------------------------------------------------- modules

SparseVector sparse_lie_action(const Bivector &xi, const SparseVector &t, int n, int rank) {
  const std::size_t dim = frame_dim(n);
  const ExactMatrix endo = xi.endomorphism();
  std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      if (!is_zero(endo(a, b))) {
        cols[b].emplace_back(a, endo(a, b));
      }
    }
  }
  std::map<std::size_t, Rational> acc;
  for (const auto &[f, v] : t) {
    std::size_t stride = 1;
    for (int k = rank - 1; k >= 0; --k) {
      const std::size_t b = (f / stride) % dim;
      for (const auto &[a, e] : cols[b]) {
        acc[f + a * stride - b * stride] += e * v;
      }
      stride *= dim;
    }
  }
  return accumulate(acc);
}

SparseVector Module::embed(std::span<const Rational> coords) const {
  if (coords.size() != dim) {
    throw StructuralError("coordinate count differs from module dimension");
  }
  return sparse_combination(embedding, coords);
}

Module vector_module(const HolonomyAlgebra &g) {
  Module m;
  m.n = g.n;
  m.rank = 1;
  m.dim = frame_dim(g.n);
  m.label = "V";
  for (const auto &x : g.generators()) {
    const ExactMatrix e = x.endomorphism();
    SparseRows rows(m.dim);
    for (std::size_t r = 0; r < m.dim; ++r) {
      rows[r] = to_sparse(e.row(r));
    }
    m.rho.push_back(std::move(rows));
  }
  for (std::size_t a = 0; a < m.dim; ++a) {
    m.embedding.push_back({{a, Rational(1)}});
  }
  return m;
}

Module tensor_module(const std::vector<Bivector> &generators, int n, int rank, const SubspaceBasis &tensors,
                     std::string label) {
  if (tensors.ambient_dimension() != ipow(frame_dim(n), rank)) {
    throw StructuralError("tensor subspace has the wrong ambient dimension");
  }
  Module m;
  m.n = n;
  m.rank = rank;
  m.dim = tensors.dimension();
  m.label = std::move(label);
  for (const auto &v : tensors.vectors()) {
    m.embedding.push_back(to_sparse(v));
  }
  for (const auto &x : generators) {
    SparseRows rows(m.dim);
    for (std::size_t j = 0; j < m.dim; ++j) {
      const SparseVector moved = sparse_lie_action(x, m.embedding[j], n, rank);
      const auto c = tensors.coordinates(to_dense(moved, tensors.ambient_dimension()));
      if (!c) {
        throw StructuralError("subspace " + m.label + " is not invariant");
      }
      for (std::size_t i = 0; i < m.dim; ++i) {
        if (!is_zero((*c)[i])) {
          rows[i].emplace_back(j, (*c)[i]);
        }
      }
    }
    m.rho.push_back(std::move(rows));
  }
  return m;
}

Module tensor_module(const HolonomyAlgebra &g, int rank, const SubspaceBasis &tensors, std::string label) {
  return tensor_module(g.generators(), g.n, rank, tensors, std::move(label));
}

Module tensor_product(const Module &a, const Module &b) {
  if (a.n != b.n || a.rho.size() != b.rho.size()) {
    throw StructuralError("modules of different algebras");
  }
  Module m;
  m.n = a.n;
  m.rank = a.rank + b.rank;
  m.dim = a.dim * b.dim;
  m.label = a.label + "(x)" + b.label;
  for (std::size_t g = 0; g < a.rho.size(); ++g) {
    SparseRows rows(m.dim);
    for (std::size_t i = 0; i < a.dim; ++i) {
      for (std::size_t j = 0; j < b.dim; ++j) {
        std::map<std::size_t, Rational> acc;
        for (const auto &[k, v] : a.rho[g][i]) {
          acc[k * b.dim + j] += v;
        }
        for (const auto &[k, v] : b.rho[g][j]) {
          acc[i * b.dim + k] += v;
        }
        rows[i * b.dim + j] = accumulate(acc);
      }
    }
    m.rho.push_back(std::move(rows));
  }
  const std::size_t shift = ipow(frame_dim(b.n), b.rank);
  for (std::size_t i = 0; i < a.dim; ++i) {
    for (std::size_t j = 0; j < b.dim; ++j) {
      std::map<std::size_t, Rational> acc;
      for (const auto &[fa, va] : a.embedding[i]) {
        for (const auto &[fb, vb] : b.embedding[j]) {
          acc[fa * shift + fb] += va * vb;
        }
      }
      m.embedding.push_back(accumulate(acc));
    }
  }
  return m;
}

Module submodule(const Module &m, const SubspaceBasis &coords, std::string label) {
  if (coords.ambient_dimension() != m.dim) {
    throw StructuralError("submodule coordinates have the wrong length");
  }
  Module s;
  s.n = m.n;
  s.rank = m.rank;
  s.dim = coords.dimension();
  s.label = std::move(label);
  for (const auto &rho : m.rho) {
    SparseRows rows(s.dim);
    for (std::size_t j = 0; j < s.dim; ++j) {
      const Vector moved = apply_rows(rho, coords.vector(j));
      const auto c = coords.coordinates(moved);
      if (!c) {
        throw StructuralError("subspace " + s.label + " is not invariant");
      }
      for (std::size_t i = 0; i < s.dim; ++i) {
        if (!is_zero((*c)[i])) {
          rows[i].emplace_back(j, (*c)[i]);
        }
      }
    }
    s.rho.push_back(std::move(rows));
  }
  for (std::size_t j = 0; j < s.dim; ++j) {
    s.embedding.push_back(m.embed(coords.vector(j)));
  }
  return s;
}

Module coordinate_submodule(const Module &m, const std::vector<std::size_t> &coords, std::string label) {
  std::vector<std::optional<std::size_t>> new_index(m.dim);
  for (std::size_t k = 0; k < coords.size(); ++k) {
    new_index.at(coords[k]) = k;
  }
  Module s;
  s.n = m.n;
  s.rank = m.rank;
  s.dim = coords.size();
  s.label = std::move(label);
  for (const auto &rho : m.rho) {
    for (std::size_t r = 0; r < m.dim; ++r) {
      if (new_index[r]) {
        continue;
      }
      for (const auto &[c, v] : rho[r]) {
        if (new_index[c]) {
          throw StructuralError("subspace " + s.label + " is not invariant");
        }
      }
    }
    SparseRows rows(s.dim);
    for (std::size_t k = 0; k < coords.size(); ++k) {
      for (const auto &[c, v] : rho[coords[k]]) {
        if (new_index[c]) {
          rows[k].emplace_back(*new_index[c], v);
        }
      }
      std::sort(rows[k].begin(), rows[k].end(), [](const auto &x, const auto &y) { return x.first < y.first; });
    }
    s.rho.push_back(std::move(rows));
  }
  for (auto c : coords) {
    s.embedding.push_back(m.embedding[c]);
  }
  return s;
}

SubspaceBasis annihilated_subspace(const Module &m) {
  SparseMatrix stacked(m.dim);
  for (const auto &rho : m.rho) {
    for (const auto &row : rho) {
      stacked.add_row(row);
    }
  }
  return kernel_basis(stacked);
}

std::size_t hom_dimension(const Module &source, const Module &target) {
  if (source.n != target.n || source.rho.size() != target.rho.size()) {
    throw StructuralError("modules of different algebras");
  }
  const std::size_t ds = source.dim;
  const std::size_t dt = target.dim;
  // Unknown A (dt x ds), entry (i, a) at i * ds + a; rows rho_T A - A rho_S.
  SparseMatrix eq(dt * ds);
  for (std::size_t g = 0; g < source.rho.size(); ++g) {
    std::vector<std::vector<std::pair<std::size_t, Rational>>> src_cols(ds);
    for (std::size_t b = 0; b < ds; ++b) {
      for (const auto &[a, v] : source.rho[g][b]) {
        src_cols[a].emplace_back(b, v);
      }
    }
    for (std::size_t i = 0; i < dt; ++i) {
      for (std::size_t a = 0; a < ds; ++a) {
        std::map<std::size_t, Rational> acc;
        for (const auto &[j, v] : target.rho[g][i]) {
          acc[j * ds + a] += v;
        }
        for (const auto &[b, v] : src_cols[a]) {
          acc[i * ds + b] -= v;
        }
        eq.add_row(accumulate(acc));
      }
    }
  }
  return kernel_basis(eq).dimension();
}

// ------------------------------------------------------------ annihilators

namespace {

AnnihilatorResult finish(Module m) {
  AnnihilatorResult r{std::move(m), SubspaceBasis(), {}};
  r.kernel = annihilated_subspace(r.module);
  for (const auto &v : r.kernel.vectors()) {
    r.tensors.push_back(r.module.embed(v));
  }
  return r;
}

std::vector<Bivector> orthogonal_generators(const HolonomyAlgebra &g) {
  std::vector<Bivector> out;
  for (const auto &b : g.basis) {
    Bivector pr = orthogonal_projection(b);
    if (!pr.is_zero()) {
      out.push_back(std::move(pr));
    }
  }
  return out;
}

SubspaceBasis symmetric_span(int n, int degree) {
  std::vector<Vector> vecs;
  for (const auto &t : symmetric_power_basis(n, degree)) {
    vecs.push_back(t.data());
  }
  return SubspaceBasis::span(ipow(frame_dim(n), degree), vecs);
}

} // namespace

AnnihilatorResult annihilator(const HolonomyAlgebra &g, ModuleKind kind) {
  check_n(g.n);
  switch (kind) {
  case ModuleKind::v_nablaR:
  case ModuleKind::pe_nablaR: {
    const NablaRSpace space = space_nablaR(g);
    Module vm = tensor_product(vector_module(g), nablaR_module(g, space));
    if (kind == ModuleKind::v_nablaR) {
      return finish(std::move(vm));
    }
    const std::size_t block = vm.dim / frame_dim(g.n);
    std::vector<std::size_t> keep;
    for (std::size_t a = 0; a < frame_dim(g.n); ++a) {
      if (a == index_q(g.n)) {
        continue;
      }
      for (std::size_t j = 0; j < block; ++j) {
        keep.push_back(a * block + j);
      }
    }
    return finish(coordinate_submodule(vm, keep, "(Rp+E)(x)nablaR"));
  }
  case ModuleKind::sym2E:
  case ModuleKind::sym3E: {
    const int degree = kind == ModuleKind::sym2E ? 2 : 3;
    return finish(tensor_module(orthogonal_generators(g), g.n, degree, symmetric_span(g.n, degree),
                                degree == 2 ? "Sym2E" : "Sym3E"));
  }
  }
  throw DescriptorError("unknown module kind");
}

AnnihilatorResult annihilator(const HolonomyAlgebra &g, int rank, const SubspaceBasis &tensors) {
  check_n(g.n);
  return finish(tensor_module(g, rank, tensors, "custom"));
}

SubspaceBasis invariant_symmetric_tensors(const OrthogonalPart &h, int degree) {
  if (degree != 2 && degree != 3) {
    throw PreconditionError("invariant symmetric tensors of degree 2 or 3 only");
  }
  const Module m = tensor_module(h.basis, h.n, degree, symmetric_span(h.n, degree), "Sym");
  const SubspaceBasis ker = annihilated_subspace(m);
  std::vector<SparseVector> tensors;
  for (const auto &v : ker.vectors()) {
    tensors.push_back(m.embed(v));
  }
  return SubspaceBasis::span_sparse(ipow(frame_dim(h.n), degree), tensors);
}

// --------------------------------------------------------------- Lt2 form

Lt2Report lt2_normal_form_check(const SparseVector &s, const HolonomyAlgebra &g) {
  const int n = g.n;
  const std::size_t N = frame_dim(n);
  const std::size_t block = ipow(N, 4);
  const std::size_t un = static_cast<std::size_t>(n);
  Lt2Report rep;

  rep.annihilated = true;
  for (const auto &x : g.basis) {
    if (!sparse_lie_action(x, s, n, 6).empty()) {
      rep.annihilated = false;
    }
  }

  // Slices by the two leading slots.
  std::vector<RationalTensor> slices(N * N, RationalTensor(n, 4));
  for (const auto &[f, v] : s) {
    slices[f / block].at(f % block) = v;
  }
  const FrameVector p = FrameVector::p(n);
  std::vector<RationalTensor> B;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      B.push_back(sym_prod(wedge(p, FrameVector::e(n, i)), wedge(p, FrameVector::e(n, j))));
    }
  }
  // Coefficients C^{xy}_{ij} with slice = sum C_ij (p^e_i)(.)(p^e_j), C symmetric.
  std::vector<std::vector<Rational>> coeff(N * N, std::vector<Rational>(un * un));
  rep.normal_form = true;
  rep.t2_symmetric = true;
  for (std::size_t xy = 0; xy < N * N; ++xy) {
    RationalTensor rebuilt(n, 4);
    for (std::size_t i = 1; i <= un; ++i) {
      for (std::size_t j = 1; j <= un; ++j) {
        Rational c = slices[xy]({index_p(), i, index_p(), j}) / 2;
        coeff[xy][(i - 1) * un + (j - 1)] = c;
        if (!is_zero(c)) {
          rebuilt += c * B[(i - 1) * un + (j - 1)];
        }
      }
    }
    if (!(rebuilt == slices[xy])) {
      rep.normal_form = false;
    }
    const std::size_t x = xy / N;
    const std::size_t y = xy % N;
    const bool x_ok = x != index_q(n);
    const bool y_ok = y != index_q(n);
    const bool allowed = x_ok && y_ok && (x == index_p() || y == index_p());
    if (!allowed && !slices[xy].is_zero()) {
      rep.normal_form = false;
    }
  }

  rep.t2 = coeff[index_p() * N + index_p()];
  rep.t3.assign(un * un * un, Rational(0));
  rep.antisymmetric_pair = true;
  for (std::size_t k = 1; k <= un; ++k) {
    const auto &pk = coeff[index_p() * N + k];
    const auto &kp = coeff[k * N + index_p()];
    for (std::size_t ij = 0; ij < un * un; ++ij) {
      rep.t3[(k - 1) * un * un + ij] = pk[ij];
      if (kp[ij] != -pk[ij]) {
        rep.antisymmetric_pair = false;
      }
    }
  }
  for (std::size_t i = 0; i < un; ++i) {
    for (std::size_t j = 0; j < un; ++j) {
      if (rep.t2[i * un + j] != rep.t2[j * un + i]) {
        rep.t2_symmetric = false;
      }
    }
  }
  rep.t3_symmetric = true;
  for (std::size_t k = 0; k < un; ++k) {
    for (std::size_t i = 0; i < un; ++i) {
      for (std::size_t j = 0; j < un; ++j) {
        const Rational &x = rep.t3[(k * un + i) * un + j];
        if (x != rep.t3[(i * un + k) * un + j] || x != rep.t3[(k * un + j) * un + i]) {
          rep.t3_symmetric = false;
        }
      }
    }
  }

  RationalTensor t2(n, 2);
  RationalTensor t3(n, 3);
  for (std::size_t i = 0; i < un; ++i) {
    for (std::size_t j = 0; j < un; ++j) {
      t2({i + 1, j + 1}) = rep.t2[i * un + j];
      for (std::size_t k = 0; k < un; ++k) {
        t3({k + 1, i + 1, j + 1}) = rep.t3[(k * un + i) * un + j];
      }
    }
  }
  rep.h_invariant = true;
  for (const auto &a : g.h.basis) {
    if (!lie_action(a, t2).is_zero() || !lie_action(a, t3).is_zero()) {
      rep.h_invariant = false;
    }
  }
  return rep;
}

} // namespace holosym
