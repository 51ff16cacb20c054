#include "holosym/curvature_spaces.hpp"

#include "holosym/error.hpp"
#include "holosym/geometry.hpp"

#include <algorithm>
#include <map>

namespace holosym {

namespace {

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) {
    r *= b;
  }
  return r;
}

void check_size(int n) {
  if (n > kMaxAlgebraN) {
    throw SizeCapError("n = " + std::to_string(n) + " exceeds the supported maximum " + std::to_string(kMaxAlgebraN));
  }
}

std::size_t flat4(std::size_t N, std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  return ((a * N + b) * N + c) * N + d;
}

// Index of the pair a<b among all pairs of 0..N-1.
std::size_t pair_index(std::size_t N, std::size_t a, std::size_t b) { return a * N - a * (a + 1) / 2 + (b - a - 1); }

SubspaceBasis span_of(std::size_t ambient, std::vector<Vector> vecs) {
  if (vecs.empty()) {
    return SubspaceBasis(ambient);
  }
  return SubspaceBasis::span(ambient, vecs);
}

template <typename S> bool has_curvature_symmetries(const FrameTensor<S> &r) {
  const std::size_t N = frame_dim(r.n());
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = 0; b < N; ++b) {
      for (std::size_t c = 0; c < N; ++c) {
        for (std::size_t d = 0; d < N; ++d) {
          const S &x = r.at(flat4(N, a, b, c, d));
          if (!entry_is_zero(S(x + r.at(flat4(N, b, a, c, d)))) || !entry_is_zero(S(x + r.at(flat4(N, a, b, d, c)))) ||
              !(x == r.at(flat4(N, c, d, a, b))) ||
              !entry_is_zero(S(x + r.at(flat4(N, b, c, a, d)) + r.at(flat4(N, c, a, b, d))))) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

// Adds coeff * (f_a ^ f_b) (.) (f_c ^ f_d) for frame basis vectors.
template <typename S>
void add_sym_wedges(FrameTensor<S> &t, std::size_t a, std::size_t b, std::size_t c, std::size_t d, const S &coeff) {
  if (entry_is_zero(coeff) || a == b || c == d) {
    return;
  }
  const std::size_t N = frame_dim(t.n());
  const std::size_t w1[2][2] = {{a, b}, {b, a}};
  const std::size_t w2[2][2] = {{c, d}, {d, c}};
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) {
      S v = coeff;
      if ((s1 + s2) % 2 == 1) {
        v *= Rational(-1);
      }
      t.at(flat4(N, w1[s1][0], w1[s1][1], w2[s2][0], w2[s2][1])) += v;
      t.at(flat4(N, w2[s2][0], w2[s2][1], w1[s1][0], w1[s1][1])) += v;
    }
  }
}

template <typename S> FrameTensor<S> reassemble_impl(const CurvatureDecomposition<S> &d, const S &zero, bool r0_only) {
  const int n = d.n;
  const std::size_t p = index_p();
  const std::size_t q = index_q(n);
  FrameTensor<S> t(n, 4, zero);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      for (int k = 1; k <= n; ++k) {
        for (int l = 1; l <= n; ++l) {
          add_sym_wedges(t, i, j, k, l, d.R0(i, j, k, l));
        }
      }
    }
  }
  if (r0_only) {
    return t;
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      for (int k = 1; k <= n; ++k) {
        add_sym_wedges(t, i, j, p, k, d.P(i, j, k));
      }
      add_sym_wedges(t, p, i, p, j, d.T(i, j));
    }
    add_sym_wedges(t, p, q, p, i, d.V(i));
  }
  add_sym_wedges(t, p, q, p, q, d.lambda);
  return t;
}

template <typename S> CurvatureDecomposition<S> decompose_impl(const FrameTensor<S> &r) {
  if (r.rank() != 4) {
    throw StructuralError("curvature tensor must have rank 4");
  }
  if (!has_curvature_symmetries(r)) {
    throw PreconditionError("input lacks the curvature symmetries");
  }
  const int n = r.n();
  const std::size_t N = frame_dim(n);
  const std::size_t un = static_cast<std::size_t>(n);
  const std::size_t p = index_p();
  const std::size_t q = index_q(n);
  const S &zero = r.zero();
  CurvatureDecomposition<S> d;
  d.n = n;
  d.r0.assign(un * un * un * un, zero);
  d.p.assign(un * un * un, zero);
  d.t.assign(un * un, zero);
  d.v.assign(un, zero);
  d.lambda = r.at(flat4(N, p, q, p, q)) * Rational(1, 2);
  for (std::size_t i = 1; i <= un; ++i) {
    d.v[i - 1] = r.at(flat4(N, p, q, p, i));
    for (std::size_t j = 1; j <= un; ++j) {
      d.t[(i - 1) * un + (j - 1)] = r.at(flat4(N, p, i, p, j)) * Rational(1, 2);
      for (std::size_t k = 1; k <= un; ++k) {
        d.p[((i - 1) * un + (j - 1)) * un + (k - 1)] = r.at(flat4(N, i, j, p, k)) * Rational(1, 2);
        for (std::size_t l = 1; l <= un; ++l) {
          d.r0[(((i - 1) * un + (j - 1)) * un + (k - 1)) * un + (l - 1)] = r.at(flat4(N, i, j, k, l)) * Rational(1, 8);
        }
      }
    }
  }
  if (!(reassemble_impl(d, zero, false) == r)) {
    throw StructuralError("curvature tensor is not of type sim(n)");
  }
  return d;
}

SparseVector slice(const SparseVector &s, std::size_t block, std::size_t which) {
  SparseVector out;
  for (const auto &[f, v] : s) {
    if (f / block == which) {
      out.emplace_back(f % block, v);
    }
  }
  return out;
}

} // namespace

// ------------------------------------------------------------------ spaces

SubspaceBasis space_R(const HolonomyAlgebra &g) {
  check_size(g.n);
  const std::size_t N = frame_dim(g.n);
  const std::size_t ambient = ipow(N, 4);
  const std::size_t dg = g.dimension();
  if (dg == 0) {
    return SubspaceBasis(ambient);
  }
  const std::size_t pairs = N * (N - 1) / 2;
  // Unknown c^{ab}_alpha (a<b) at pair_index(a,b) * dg + alpha.
  auto term = [&](std::map<std::size_t, Rational> &acc, std::size_t x, std::size_t y, std::size_t z, std::size_t w) {
    if (x == y) {
      return;
    }
    const Rational sign = x < y ? 1 : -1;
    const std::size_t pi = x < y ? pair_index(N, x, y) : pair_index(N, y, x);
    for (std::size_t al = 0; al < dg; ++al) {
      const Rational &xi = g.basis[al](z, w);
      if (!is_zero(xi)) {
        acc[pi * dg + al] += sign * xi;
      }
    }
  };
  SparseMatrix eq(pairs * dg);
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = a + 1; b < N; ++b) {
      for (std::size_t c = b + 1; c < N; ++c) {
        for (std::size_t d = 0; d < N; ++d) {
          std::map<std::size_t, Rational> acc;
          term(acc, a, b, c, d);
          term(acc, b, c, a, d);
          term(acc, c, a, b, d);
          SparseVector row;
          for (auto &[k, v] : acc) {
            if (!is_zero(v)) {
              row.emplace_back(k, v);
            }
          }
          eq.add_row(std::move(row));
        }
      }
    }
  }
  const SubspaceBasis ker = kernel_basis(eq);
  std::vector<Vector> tensors;
  for (const auto &x : ker.vectors()) {
    Vector t(ambient);
    for (std::size_t a = 0; a < N; ++a) {
      for (std::size_t b = a + 1; b < N; ++b) {
        const std::size_t pi = pair_index(N, a, b);
        for (std::size_t al = 0; al < dg; ++al) {
          const Rational &c = x[pi * dg + al];
          if (is_zero(c)) {
            continue;
          }
          for (std::size_t z = 0; z < N; ++z) {
            for (std::size_t w = 0; w < N; ++w) {
              const Rational &xi = g.basis[al](z, w);
              if (!is_zero(xi)) {
                t[flat4(N, a, b, z, w)] += c * xi;
                t[flat4(N, b, a, z, w)] -= c * xi;
              }
            }
          }
        }
      }
    }
    tensors.push_back(std::move(t));
  }
  return span_of(ambient, std::move(tensors));
}

SubspaceBasis space_P(const OrthogonalPart &h) {
  check_size(h.n);
  const std::size_t N = frame_dim(h.n);
  const std::size_t un = static_cast<std::size_t>(h.n);
  const std::size_t ambient = ipow(N, 3);
  const std::size_t dh = h.dimension();
  if (dh == 0) {
    return SubspaceBasis(ambient);
  }
  // Unknown c^k_alpha at (k-1) * dh + alpha; Q^{kcd} = sum_alpha c^k_alpha xi_alpha^{cd}.
  auto term = [&](std::map<std::size_t, Rational> &acc, std::size_t k, std::size_t c, std::size_t d) {
    for (std::size_t al = 0; al < dh; ++al) {
      const Rational &xi = h.basis[al](c, d);
      if (!is_zero(xi)) {
        acc[(k - 1) * dh + al] += xi;
      }
    }
  };
  SparseMatrix eq(un * dh);
  for (std::size_t k = 1; k <= un; ++k) {
    for (std::size_t c = 1; c <= un; ++c) {
      for (std::size_t d = 1; d <= un; ++d) {
        std::map<std::size_t, Rational> acc;
        term(acc, k, c, d);
        term(acc, c, d, k);
        term(acc, d, k, c);
        SparseVector row;
        for (auto &[i, v] : acc) {
          if (!is_zero(v)) {
            row.emplace_back(i, v);
          }
        }
        eq.add_row(std::move(row));
      }
    }
  }
  const SubspaceBasis ker = kernel_basis(eq);
  std::vector<Vector> tensors;
  for (const auto &x : ker.vectors()) {
    Vector t(ambient);
    for (std::size_t k = 1; k <= un; ++k) {
      for (std::size_t al = 0; al < dh; ++al) {
        const Rational &c = x[(k - 1) * dh + al];
        if (is_zero(c)) {
          continue;
        }
        for (std::size_t a = 1; a <= un; ++a) {
          for (std::size_t b = 1; b <= un; ++b) {
            const Rational &xi = h.basis[al](a, b);
            if (!is_zero(xi)) {
              t[(k * N + a) * N + b] += c * xi;
            }
          }
        }
      }
    }
    tensors.push_back(std::move(t));
  }
  return span_of(ambient, std::move(tensors));
}

SparseVector NablaRSpace::tensor_of(std::span<const Rational> c) const {
  const std::size_t N = frame_dim(n);
  const std::size_t dr = R.dimension();
  const std::size_t block = ipow(N, 4);
  if (c.size() != N * dr) {
    throw StructuralError("nabla R coordinates have the wrong length");
  }
  SparseVector out;
  for (std::size_t e = 0; e < N; ++e) {
    Vector acc(block);
    bool any = false;
    for (std::size_t b = 0; b < dr; ++b) {
      const Rational &x = c[e * dr + b];
      if (is_zero(x)) {
        continue;
      }
      any = true;
      const Vector &rb = R.vector(b);
      for (std::size_t f = 0; f < block; ++f) {
        if (!is_zero(rb[f])) {
          acc[f] += x * rb[f];
        }
      }
    }
    if (!any) {
      continue;
    }
    for (std::size_t f = 0; f < block; ++f) {
      if (!is_zero(acc[f])) {
        out.emplace_back(e * block + f, acc[f]);
      }
    }
  }
  return out;
}

SparseVector NablaRSpace::tensor(std::size_t i) const { return tensor_of(coords.vector(i)); }

NablaRSpace space_nablaR(const HolonomyAlgebra &g) {
  check_size(g.n);
  NablaRSpace out;
  out.n = g.n;
  out.R = space_R(g);
  const std::size_t N = frame_dim(g.n);
  const std::size_t dr = out.R.dimension();
  if (dr == 0) {
    out.coords = SubspaceBasis(0);
    return out;
  }
  // Unknown y_{e,beta} at e * dr + beta; Z^{eabcd} = sum_beta y_{e beta} R_beta^{abcd}.
  SparseMatrix eq(N * dr);
  const std::size_t cyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (std::size_t e = 0; e < N; ++e) {
    for (std::size_t a = e + 1; a < N; ++a) {
      for (std::size_t b = a + 1; b < N; ++b) {
        const std::size_t t[3] = {e, a, b};
        for (std::size_t c = 0; c < N; ++c) {
          for (std::size_t d = c + 1; d < N; ++d) {
            std::map<std::size_t, Rational> acc;
            for (const auto &perm : cyc) {
              const std::size_t x = t[perm[0]];
              const std::size_t y = t[perm[1]];
              const std::size_t z = t[perm[2]];
              for (std::size_t be = 0; be < dr; ++be) {
                const Rational &r = out.R.vector(be)[flat4(N, y, z, c, d)];
                if (!is_zero(r)) {
                  acc[x * dr + be] += r;
                }
              }
            }
            SparseVector row;
            for (auto &[k, v] : acc) {
              if (!is_zero(v)) {
                row.emplace_back(k, v);
              }
            }
            eq.add_row(std::move(row));
          }
        }
      }
    }
  }
  out.coords = kernel_basis(eq);
  return out;
}

// ----------------------------------------------------------- decomposition

RationalDecomposition decompose(const RationalTensor &r) { return decompose_impl(r); }
PolyDecomposition decompose(const PolyTensor &r) { return decompose_impl(r); }
RationalTensor reassemble(const RationalDecomposition &d) { return reassemble_impl(d, Rational(0), false); }
PolyTensor reassemble(const PolyDecomposition &d) {
  if (d.v.empty() && d.t.empty()) {
    throw StructuralError("empty decomposition");
  }
  return reassemble_impl(d, zero_like(d.lambda), false);
}
RationalTensor r0_tensor(const RationalDecomposition &d) { return reassemble_impl(d, Rational(0), true); }

// -------------------------------------------------------- structure checks

ThnabrChecker::ThnabrChecker(const HolonomyAlgebra &g) : n_(g.n) {
  h_space_ = space_nablaR(orthogonal_algebra(g.h));
  std::vector<SparseVector> tensors;
  for (std::size_t i = 0; i < h_space_.dimension(); ++i) {
    tensors.push_back(h_space_.tensor(i));
  }
  h_tensors_ = SubspaceBasis::span_sparse(ipow(frame_dim(n_), 5), tensors);
}

ThnabrReport ThnabrChecker::check(const SparseVector &s) const {
  const int n = n_;
  const std::size_t N = frame_dim(n);
  const std::size_t block = ipow(N, 4);
  const std::size_t p = index_p();
  const std::size_t q = index_q(n);
  ThnabrReport rep;

  std::vector<RationalDecomposition> D;
  try {
    for (std::size_t a = 0; a < N; ++a) {
      RationalTensor t(n, 4);
      for (const auto &[f, v] : slice(s, block, a)) {
        t.at(f) = v;
      }
      D.push_back(decompose(t));
    }
  } catch (const Error &) {
    rep.relations.push_back({"components decompose", false, 1});
    return rep;
  }

  auto relation = [&](std::string name, auto &&count) {
    const std::size_t v = count();
    rep.relations.push_back({std::move(name), v == 0, v});
  };
  relation("P^{pijk} = T^{ijk} - T^{jik}", [&] {
    std::size_t bad = 0;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k)
          if (D[p].P(i, j, k) != D[i].T(j, k) - D[j].T(i, k))
            ++bad;
    return bad;
  });
  relation("P^{tijk} = 2 R0^{pijtk}", [&] {
    std::size_t bad = 0;
    for (int t = 1; t <= n; ++t)
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          for (int k = 1; k <= n; ++k)
            if (D[t].P(i, j, k) != 2 * D[p].R0(i, j, t, k))
              ++bad;
    return bad;
  });
  relation("R0^q = 0", [&] {
    return static_cast<std::size_t>(std::count_if(D[q].r0.begin(), D[q].r0.end(), [](const Rational &x) { return !is_zero(x); }));
  });
  relation("P^q = 0", [&] {
    return static_cast<std::size_t>(std::count_if(D[q].p.begin(), D[q].p.end(), [](const Rational &x) { return !is_zero(x); }));
  });
  relation("e_t (x) R0^t in nabla R(h)", [&] {
    Vector z(ipow(N, 5));
    for (std::size_t t = 1; t <= static_cast<std::size_t>(n); ++t) {
      const RationalTensor r0 = r0_tensor(D[t]);
      for (std::size_t f = 0; f < block; ++f) {
        z[t * block + f] = r0.at(f);
      }
    }
    return h_tensors_.contains(z) ? std::size_t{0} : std::size_t{1};
  });
  relation("v^{ij} = 2 T^{qij}", [&] {
    std::size_t bad = 0;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (D[i].V(j) != 2 * D[q].T(i, j))
          ++bad;
    return bad;
  });
  relation("v^{qi} = 2 lambda^i", [&] {
    std::size_t bad = 0;
    for (int i = 1; i <= n; ++i)
      if (D[q].V(i) != 2 * D[i].lambda)
        ++bad;
    return bad;
  });
  std::size_t bad = 0;
  for (int s1 = 1; s1 <= n; ++s1)
    for (int t = 1; t <= n; ++t)
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          if (D[s1].P(i, j, t) - D[t].P(i, j, s1) != -4 * D[p].R0(t, s1, i, j))
            ++bad;
  rep.supplementary.push_back({"P^{sijt} - P^{tijs} = -4 R0^{ptsij}", bad == 0, bad});
  return rep;
}

ThnabrReport check_thnabr(const SparseVector &s, const HolonomyAlgebra &g) { return ThnabrChecker(g).check(s); }

// ------------------------------------------------------ modules & pairings

Module curvature_module(const HolonomyAlgebra &g, const SubspaceBasis &r_space) {
  return tensor_module(g, 4, r_space, "R");
}

Module nablaR_module(const HolonomyAlgebra &g, const NablaRSpace &space) {
  const Module vr = tensor_product(vector_module(g), curvature_module(g, space.R));
  return submodule(vr, space.coords, "nablaR");
}

std::size_t equivariant_multiplicity(const HolonomyAlgebra &g, const Module &target) {
  if (g.type == HolonomyType::full && g.n > 3) {
    throw SizeCapError("equivariant multiplicity for the full algebra needs n <= 3");
  }
  return hom_dimension(vector_module(g), target);
}

Rational tensor_pairing(const SparseVector &x, const SparseVector &y, int n, int rank) {
  const std::size_t N = frame_dim(n);
  Rational s = 0;
  for (const auto &[f, v] : x) {
    std::size_t g = 0;
    std::size_t rest = f;
    std::size_t stride = 1;
    for (int k = 0; k < rank; ++k) {
      const std::size_t a = rest % N;
      rest /= N;
      g += dual_index(a, n) * stride;
      stride *= N;
    }
    auto it = std::lower_bound(y.begin(), y.end(), g, [](const auto &e, std::size_t key) { return e.first < key; });
    if (it != y.end() && it->first == g) {
      s += v * it->second;
    }
  }
  return s;
}

InvariantReport invariant_vectors(const HolonomyAlgebra &g, const Module &m) {
  if (g.n != m.n) {
    throw StructuralError("module and algebra differ in dimension");
  }
  InvariantReport rep;
  rep.kernel = annihilated_subspace(m);
  const std::size_t d = rep.kernel.dimension();
  std::vector<SparseVector> tensors;
  for (const auto &v : rep.kernel.vectors()) {
    tensors.push_back(m.embed(v));
  }
  rep.gram = ExactMatrix(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      rep.gram(i, j) = tensor_pairing(tensors[i], tensors[j], m.n, m.rank);
    }
  }
  rep.nondegenerate = d == 0 || rank(rep.gram) == d;
  return rep;
}

} // namespace holosym
