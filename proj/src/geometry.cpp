#include "holosym/geometry.hpp"

#include "holosym/error.hpp"

namespace holosym {

namespace {

std::size_t idx4(std::size_t n, std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  return ((a * n + b) * n + c) * n + d;
}

Poly constant(const MetricSpec &spec, const Rational &c) { return Poly::constant(spec.variable_count(), c); }

} // namespace

MetricSpec::MetricSpec(int n_, Poly h) : n(n_), H(std::move(h)) {
  if (n < 1) {
    throw PreconditionError("metric needs n >= 1");
  }
  if (H.variable_count() != variable_count()) {
    throw StructuralError("H has the wrong variable count for n");
  }
}

MetricSpec MetricSpec::parse(int n, std::string_view h) { return MetricSpec(n, parse_polynomial(h, n)); }

std::vector<std::array<std::size_t, 3>> ChristoffelTable::support() const {
  std::vector<std::array<std::size_t, 3>> out;
  const std::size_t d = frame_dim(n_);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      for (std::size_t c = 0; c < d; ++c) {
        if (!(*this)(a, b, c).is_zero()) {
          out.push_back({a, b, c});
        }
      }
    }
  }
  return out;
}

std::vector<Poly> coordinate_metric(const MetricSpec &spec) {
  const std::size_t N = frame_dim(spec.n);
  std::vector<Poly> g(N * N, spec.zero());
  const Poly one = constant(spec, 1);
  g[spec.var_v() * N + spec.var_u()] = one;
  g[spec.var_u() * N + spec.var_v()] = one;
  for (int i = 1; i <= spec.n; ++i) {
    g[spec.var_x(i) * N + spec.var_x(i)] = one;
  }
  g[spec.var_u() * N + spec.var_u()] = spec.H;
  return g;
}

std::vector<Poly> inverse_coordinate_metric(const MetricSpec &spec) {
  const std::size_t N = frame_dim(spec.n);
  std::vector<Poly> g(N * N, spec.zero());
  const Poly one = constant(spec, 1);
  g[spec.var_v() * N + spec.var_u()] = one;
  g[spec.var_u() * N + spec.var_v()] = one;
  for (int i = 1; i <= spec.n; ++i) {
    g[spec.var_x(i) * N + spec.var_x(i)] = one;
  }
  g[spec.var_v() * N + spec.var_v()] = -spec.H;
  return g;
}

ChristoffelTable christoffel(const MetricSpec &spec) {
  const std::size_t N = frame_dim(spec.n);
  const auto g = coordinate_metric(spec);
  const auto ginv = inverse_coordinate_metric(spec);
  // dg[(c*N + a)*N + b] = d_c g_ab
  std::vector<Poly> dg(N * N * N, spec.zero());
  for (std::size_t c = 0; c < N; ++c) {
    for (std::size_t ab = 0; ab < N * N; ++ab) {
      dg[c * N * N + ab] = g[ab].derivative(c);
    }
  }
  auto d = [&](std::size_t c, std::size_t a, std::size_t b) -> const Poly & { return dg[(c * N + a) * N + b]; };
  std::vector<Poly> out(N * N * N, spec.zero());
  const Rational half(1, 2);
  for (std::size_t b = 0; b < N; ++b) {
    for (std::size_t c = b; c < N; ++c) {
      for (std::size_t e = 0; e < N; ++e) {
        // Gamma_{e b c}, first kind.
        Poly first = d(b, e, c) + d(c, e, b) - d(e, b, c);
        if (first.is_zero()) {
          continue;
        }
        first *= half;
        for (std::size_t a = 0; a < N; ++a) {
          const Poly &gi = ginv[a * N + e];
          if (!gi.is_zero()) {
            out[(a * N + b) * N + c] += gi * first;
          }
        }
      }
      for (std::size_t a = 0; a < N; ++a) {
        out[(a * N + c) * N + b] = out[(a * N + b) * N + c];
      }
    }
  }
  return ChristoffelTable(spec.n, std::move(out));
}

bool metricity_holds(const MetricSpec &spec, const ChristoffelTable &gamma) {
  const std::size_t N = frame_dim(spec.n);
  const auto g = coordinate_metric(spec);
  for (std::size_t c = 0; c < N; ++c) {
    for (std::size_t a = 0; a < N; ++a) {
      for (std::size_t b = 0; b < N; ++b) {
        Poly r = g[a * N + b].derivative(c);
        for (std::size_t e = 0; e < N; ++e) {
          r -= gamma(e, c, a) * g[e * N + b];
          r -= gamma(e, c, b) * g[a * N + e];
        }
        if (!r.is_zero()) {
          return false;
        }
      }
    }
  }
  return true;
}

FrameFields frame_fields(const MetricSpec &spec) {
  const std::size_t N = frame_dim(spec.n);
  FrameFields f;
  f.n = spec.n;
  f.frame.assign(N * N, spec.zero());
  f.coframe.assign(N * N, spec.zero());
  const Poly one = constant(spec, 1);
  const Poly half_h = spec.H * Rational(1, 2);
  const std::size_t q = index_q(spec.n);
  for (std::size_t a = 0; a < N; ++a) {
    f.frame[a * N + a] = one;
    f.coframe[a * N + a] = one;
  }
  // q = d_u - H/2 d_v ; d_u = q + H/2 p.
  f.frame[q * N + spec.var_v()] = -half_h;
  f.coframe[spec.var_u() * N + index_p()] = half_h;
  return f;
}

Poly FrameFields::frame_metric(const MetricSpec &spec, std::size_t a, std::size_t b) const {
  const std::size_t N = frame_dim(n);
  const auto g = coordinate_metric(spec);
  Poly s = spec.zero();
  for (std::size_t m = 0; m < N; ++m) {
    for (std::size_t w = 0; w < N; ++w) {
      if (!g[m * N + w].is_zero() && !vector(a, m).is_zero() && !vector(b, w).is_zero()) {
        s += vector(a, m) * vector(b, w) * g[m * N + w];
      }
    }
  }
  return s;
}

Spacetime::Spacetime(MetricSpec spec)
    : spec_(std::move(spec)), gamma_(holosym::christoffel(spec_)), frame_(frame_fields(spec_)) {
  const std::size_t N = frame_dim(spec_.n);
  frame_lists_.resize(N);
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t m = 0; m < N; ++m) {
      if (!frame_.vector(a, m).is_zero()) {
        frame_lists_[a].push_back({m, frame_.vector(a, m)});
      }
    }
  }

  // nabla_{f_a} f_b = F_a(F_b^l) d_l + F_a^m F_b^w Gamma^l_{mw} d_l, then back to the frame.
  conn_.assign(N * N * N, spec_.zero());
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = 0; b < N; ++b) {
      std::vector<Poly> w(N, spec_.zero());
      for (std::size_t l = 0; l < N; ++l) {
        w[l] = derive(a, frame_.vector(b, l));
        for (const auto &[m, fa] : frame_lists_[a]) {
          for (const auto &[k, fb] : frame_lists_[b]) {
            const Poly &g = gamma_(l, m, k);
            if (!g.is_zero()) {
              w[l] += fa * fb * g;
            }
          }
        }
      }
      for (std::size_t l = 0; l < N; ++l) {
        if (w[l].is_zero()) {
          continue;
        }
        for (std::size_t c = 0; c < N; ++c) {
          const Poly &inv = frame_.inverse(l, c);
          if (!inv.is_zero()) {
            conn_[(a * N + b) * N + c] += w[l] * inv;
          }
        }
      }
    }
  }
  conn_lists_.resize(N * N);
  for (std::size_t d = 0; d < N; ++d) {
    for (std::size_t c = 0; c < N; ++c) {
      for (std::size_t a = 0; a < N; ++a) {
        const Poly &g = conn_[(d * N + c) * N + a];
        if (!g.is_zero()) {
          conn_lists_[d * N + a].push_back({c, g});
        }
      }
    }
  }

  // Coordinate curvature R^r_{s m w} = d_m G^r_{ws} - d_w G^r_{ms} + G^r_{ml} G^l_{ws} - G^r_{wl} G^l_{ms}.
  std::vector<Poly> up(N * N * N * N, spec_.zero());
  for (std::size_t r = 0; r < N; ++r) {
    for (std::size_t s = 0; s < N; ++s) {
      for (std::size_t m = 0; m < N; ++m) {
        for (std::size_t w = m + 1; w < N; ++w) {
          Poly v = gamma_(r, w, s).derivative(m) - gamma_(r, m, s).derivative(w);
          for (std::size_t l = 0; l < N; ++l) {
            if (!gamma_(r, m, l).is_zero() && !gamma_(l, w, s).is_zero()) {
              v += gamma_(r, m, l) * gamma_(l, w, s);
            }
            if (!gamma_(r, w, l).is_zero() && !gamma_(l, m, s).is_zero()) {
              v -= gamma_(r, w, l) * gamma_(l, m, s);
            }
          }
          up[idx4(N, r, s, w, m)] = -v;
          up[idx4(N, r, s, m, w)] = std::move(v);
        }
      }
    }
  }
  const auto g = coordinate_metric(spec_);
  curvature_.coordinate.assign(N * N * N * N, spec_.zero());
  for (std::size_t r = 0; r < N; ++r) {
    for (std::size_t a = 0; a < N; ++a) {
      const Poly &gra = g[r * N + a];
      if (gra.is_zero()) {
        continue;
      }
      for (std::size_t rest = 0; rest < N * N * N; ++rest) {
        const Poly &x = up[a * N * N * N + rest];
        if (!x.is_zero()) {
          curvature_.coordinate[r * N * N * N + rest] += gra * x;
        }
      }
    }
  }

  // Frame values Rf(a,b,c,d) = g(R(f_a,f_b)f_c, f_d), stored raised and doubled.
  curvature_.frame = PolyTensor(spec_.n, 4, spec_.zero());
  const Rational two(2);
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = 0; b < N; ++b) {
      for (std::size_t c = 0; c < N; ++c) {
        for (std::size_t d = 0; d < N; ++d) {
          Poly s = spec_.zero();
          for (const auto &[m, fa] : frame_lists_[a]) {
            for (const auto &[w, fb] : frame_lists_[b]) {
              for (const auto &[sg, fc] : frame_lists_[c]) {
                for (const auto &[r, fd] : frame_lists_[d]) {
                  const Poly &x = curvature_.coordinate[idx4(N, r, sg, m, w)];
                  if (!x.is_zero()) {
                    s += x * fa * fb * fc * fd;
                  }
                }
              }
            }
          }
          s *= two;
          curvature_.frame({dual_index(a, spec_.n), dual_index(b, spec_.n), dual_index(c, spec_.n),
                            dual_index(d, spec_.n)}) = std::move(s);
        }
      }
    }
  }
}

const Poly &Spacetime::connection(std::size_t a, std::size_t b, std::size_t c) const {
  const std::size_t N = frame_dim(spec_.n);
  return conn_[(a * N + b) * N + c];
}

Poly Spacetime::derive(std::size_t a, const Poly &phi) const {
  Poly out = spec_.zero();
  if (phi.is_zero()) {
    return out;
  }
  for (const auto &[m, f] : frame_lists_[a]) {
    Poly d = phi.derivative(m);
    if (!d.is_zero()) {
      out += f * d;
    }
  }
  return out;
}

PolyTensor Spacetime::covariant_derivative(const PolyTensor &t) const {
  if (t.n() != spec_.n) {
    throw StructuralError("tensor dimension does not match the metric");
  }
  const std::size_t N = frame_dim(spec_.n);
  PolyTensor out(t.n(), t.rank() + 1, spec_.zero());
  const std::size_t in_size = t.size();
  const long long total = static_cast<long long>(out.size());
  const int rank = t.rank();
#pragma omp parallel for schedule(dynamic, 16)
  for (long long fo = 0; fo < total; ++fo) {
    const std::size_t f_out = static_cast<std::size_t>(fo);
    const std::size_t e = f_out / in_size;
    const std::size_t f_in = f_out % in_size;
    const std::size_t d = dual_index(e, spec_.n);
    Poly acc = derive(d, t.at(f_in));
    std::size_t stride = 1;
    for (int k = rank - 1; k >= 0; --k) {
      const std::size_t a = (f_in / stride) % N;
      const std::size_t base = f_in - a * stride;
      for (const auto &[c, g] : conn_lists_[d * N + a]) {
        const Poly &src = t.at(base + c * stride);
        if (!src.is_zero()) {
          acc += g * src;
        }
      }
      stride *= N;
    }
    out.at(f_out) = std::move(acc);
  }
  return out;
}

PolyTensor Spacetime::covariant_derivative_serial(const PolyTensor &t) const {
  if (t.n() != spec_.n) {
    throw StructuralError("tensor dimension does not match the metric");
  }
  const std::size_t N = frame_dim(spec_.n);
  PolyTensor out(t.n(), t.rank() + 1, spec_.zero());
  const std::size_t in_size = t.size();
  for (std::size_t f_in = 0; f_in < in_size; ++f_in) {
    const Poly &x = t.at(f_in);
    if (x.is_zero()) {
      continue;
    }
    for (std::size_t d = 0; d < N; ++d) {
      const std::size_t e = dual_index(d, spec_.n);
      out.at(e * in_size + f_in) += derive(d, x);
      std::size_t stride = 1;
      for (int k = t.rank() - 1; k >= 0; --k) {
        const std::size_t c = (f_in / stride) % N;
        const std::size_t base = f_in - c * stride;
        for (std::size_t a = 0; a < N; ++a) {
          const Poly &g = connection(d, c, a);
          if (!g.is_zero()) {
            out.at(e * in_size + base + a * stride) += g * x;
          }
        }
        stride *= N;
      }
    }
  }
  return out;
}

PolyTensor Spacetime::nabla_k(int k) const {
  if (k < 0) {
    throw PreconditionError("nabla_k needs k >= 0");
  }
  PolyTensor t = curvature_.frame;
  for (int i = 0; i < k; ++i) {
    t = covariant_derivative(t);
  }
  return t;
}

PolyTensor Spacetime::curvature_operator(std::size_t a, std::size_t b) const {
  const std::size_t N = frame_dim(spec_.n);
  PolyTensor out(spec_.n, 2, spec_.zero());
  const std::size_t da = dual_index(a, spec_.n);
  const std::size_t db = dual_index(b, spec_.n);
  for (std::size_t c = 0; c < N; ++c) {
    for (std::size_t d = 0; d < N; ++d) {
      out({c, d}) = curvature_.frame({da, db, c, d}) * Rational(1, 2);
    }
  }
  return out;
}

CurvatureField riemann(const MetricSpec &spec) { return Spacetime(spec).curvature(); }

PolyTensor covariant_derivative(const PolyTensor &t, const MetricSpec &spec) {
  return Spacetime(spec).covariant_derivative(t);
}

PolyTensor nabla_k(const MetricSpec &spec, int k) { return Spacetime(spec).nabla_k(k); }

PolyTensor poly_lie_action(const PolyTensor &w, const PolyTensor &t) {
  if (w.rank() != 2 || w.n() != t.n()) {
    throw StructuralError("poly_lie_action needs a bivector of matching dimension");
  }
  const int n = t.n();
  const std::size_t N = frame_dim(n);
  // endo^a_c = w^{dual(c) a}
  std::vector<std::vector<std::pair<std::size_t, Poly>>> rows(N);
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t c = 0; c < N; ++c) {
      const Poly &x = w({dual_index(c, n), a});
      if (!x.is_zero()) {
        rows[a].emplace_back(c, x);
      }
    }
  }
  PolyTensor out(n, t.rank(), t.zero());
  std::size_t stride = 1;
  for (int k = t.rank() - 1; k >= 0; --k) {
    for (std::size_t f = 0; f < t.size(); ++f) {
      const std::size_t a = (f / stride) % N;
      const std::size_t base = f - a * stride;
      for (const auto &[c, x] : rows[a]) {
        const Poly &src = t.at(base + c * stride);
        if (!src.is_zero()) {
          out.at(f) += x * src;
        }
      }
    }
    stride *= N;
  }
  return out;
}

Poly metric_norm(const PolyTensor &t) {
  Poly s = t.zero();
  for (std::size_t f = 0; f < t.size(); ++f) {
    if (t.at(f).is_zero()) {
      continue;
    }
    auto idx = t.unflat(f);
    for (auto &i : idx) {
      i = dual_index(i, t.n());
    }
    const Poly &other = t.at(t.flat(idx));
    if (!other.is_zero()) {
      s += t.at(f) * other;
    }
  }
  return s;
}

SymmetryOrder symmetry_order(const Spacetime &st, int k_max) {
  if (k_max < 0) {
    throw PreconditionError("k_max must be nonnegative");
  }
  PolyTensor t = st.curvature().frame;
  for (int k = 0; k <= k_max; ++k) {
    if (t.is_zero()) {
      return {k};
    }
    if (k < k_max) {
      t = st.covariant_derivative(t);
    }
  }
  return {std::nullopt};
}

SymmetryOrder symmetry_order(const MetricSpec &spec, int k_max) { return symmetry_order(Spacetime(spec), k_max); }

ClosedForms closed_form_oracles(const MetricSpec &spec) {
  if (!spec.is_ppwave()) {
    throw PreconditionError("closed forms need d_v H = 0");
  }
  const int n = spec.n;
  const std::size_t u = spec.var_u();
  const Rational half(1, 2);
  const Rational quarter(1, 4);
  ClosedForms out{PolyTensor(n, 4, spec.zero()), PolyTensor(n, 5, spec.zero()), PolyTensor(n, 6, spec.zero())};
  const FrameVector p = FrameVector::p(n);
  std::vector<Poly> h1(static_cast<std::size_t>(n) + 1, spec.zero());
  for (int k = 1; k <= n; ++k) {
    h1[static_cast<std::size_t>(k)] = spec.H.derivative(spec.var_x(k));
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const RationalTensor B = sym_prod(wedge(p, FrameVector::e(n, i)), wedge(p, FrameVector::e(n, j)));
      const Poly hij = h1[static_cast<std::size_t>(i)].derivative(spec.var_x(j));
      const Poly hiju = hij.derivative(u);

      out.R += scale(B, hij * half);

      PolyTensor d1(n, 1, spec.zero());
      d1.at(index_p()) = hiju * half;
      for (int k = 1; k <= n; ++k) {
        d1.at(static_cast<std::size_t>(k)) = hij.derivative(spec.var_x(k)) * half;
      }

      PolyTensor d2(n, 2, spec.zero());
      Poly pp = hiju.derivative(u) * half;
      for (int k = 1; k <= n; ++k) {
        pp += h1[static_cast<std::size_t>(k)] * hij.derivative(spec.var_x(k)) * quarter;
      }
      d2({index_p(), index_p()}) = pp;
      for (int k = 1; k <= n; ++k) {
        const std::size_t kk = static_cast<std::size_t>(k);
        const Poly hijk = hij.derivative(spec.var_x(k));
        const Poly mixed = hijk.derivative(u) * half;
        d2({index_p(), kk}) = mixed;
        d2({kk, index_p()}) = mixed;
        for (int l = 1; l <= n; ++l) {
          d2({kk, static_cast<std::size_t>(l)}) = hijk.derivative(spec.var_x(l)) * half;
        }
      }
      // Outer products with the constant curvature block.
      for (std::size_t a = 0; a < d1.size(); ++a) {
        if (d1.at(a).is_zero()) {
          continue;
        }
        for (std::size_t f = 0; f < B.size(); ++f) {
          if (!is_zero(B.at(f))) {
            out.nablaR.at(a * B.size() + f) += d1.at(a) * B.at(f);
          }
        }
      }
      for (std::size_t a = 0; a < d2.size(); ++a) {
        if (d2.at(a).is_zero()) {
          continue;
        }
        for (std::size_t f = 0; f < B.size(); ++f) {
          if (!is_zero(B.at(f))) {
            out.nabla2R.at(a * B.size() + f) += d2.at(a) * B.at(f);
          }
        }
      }
    }
  }
  return out;
}

RecurrenceForm recurrence_form(const MetricSpec &spec) {
  RecurrenceForm out;
  const Poly hv = spec.H.derivative(spec.var_v());
  out.theta_u = hv * Rational(1, 2);
  out.p_parallel = hv.is_zero();
  bool par = hv.derivative(spec.var_v()).is_zero();
  for (int i = 1; i <= spec.n && par; ++i) {
    par = hv.derivative(spec.var_x(i)).is_zero();
  }
  out.parallelizable = par;

  const Spacetime st(spec);
  PolyTensor p(spec.n, 1, spec.zero());
  p.at(index_p()) = Poly::constant(spec.variable_count(), 1);
  PolyTensor expected(spec.n, 2, spec.zero());
  expected({index_p(), index_p()}) = out.theta_u;
  out.recurrence_verified = st.covariant_derivative(p) == expected;
  return out;
}

std::pair<PolyTensor, PolyTensor> ricci_identity_sides(const Spacetime &st, const PolyTensor &n2, std::size_t a,
                                                       std::size_t b) {
  const int n = st.n();
  const std::size_t N = frame_dim(n);
  const std::size_t block = n2.size() / (N * N);
  const std::size_t da = dual_index(a, n);
  const std::size_t db = dual_index(b, n);
  PolyTensor commutator(n, n2.rank() - 2, n2.zero());
  for (std::size_t f = 0; f < block; ++f) {
    commutator.at(f) = n2.at((da * N + db) * block + f) - n2.at((db * N + da) * block + f);
  }
  PolyTensor action = poly_lie_action(st.curvature_operator(a, b), st.curvature().frame);
  return {std::move(commutator), std::move(action)};
}

PolyTensor ricci_identity_residual(const Spacetime &st, const PolyTensor &n2, std::size_t a, std::size_t b) {
  auto [lhs, rhs] = ricci_identity_sides(st, n2, a, b);
  return lhs - rhs;
}

PolyTensor ricci_identity_check(const MetricSpec &spec, std::size_t a, std::size_t b) {
  const Spacetime st(spec);
  return ricci_identity_residual(st, st.nabla_k(2), a, b);
}

bool curvature_symmetries_hold(const PolyTensor &r) {
  if (r.rank() != 4) {
    throw StructuralError("curvature tensor must have rank 4");
  }
  const std::size_t N = frame_dim(r.n());
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = 0; b < N; ++b) {
      for (std::size_t c = 0; c < N; ++c) {
        for (std::size_t d = 0; d < N; ++d) {
          const Poly &x = r({a, b, c, d});
          if (!(x + r({b, a, c, d})).is_zero() || !(x + r({a, b, d, c})).is_zero() || x != r({c, d, a, b})) {
            return false;
          }
          if (!(x + r({b, c, a, d}) + r({c, a, b, d})).is_zero()) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

bool second_bianchi_holds(const PolyTensor &s) {
  if (s.rank() != 5) {
    throw StructuralError("nabla R must have rank 5");
  }
  const std::size_t N = frame_dim(s.n());
  for (std::size_t e = 0; e < N; ++e) {
    for (std::size_t a = 0; a < N; ++a) {
      for (std::size_t b = 0; b < N; ++b) {
        for (std::size_t c = 0; c < N; ++c) {
          for (std::size_t d = 0; d < N; ++d) {
            if (!(s({e, a, b, c, d}) + s({a, b, e, c, d}) + s({b, e, a, c, d})).is_zero()) {
              return false;
            }
          }
        }
      }
    }
  }
  return true;
}

bool curvature_in_p_wedge_E(const Spacetime &st) {
  const int n = st.n();
  const std::size_t N = frame_dim(n);
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = a + 1; b < N; ++b) {
      const PolyTensor w = st.curvature_operator(a, b);
      for (std::size_t c = 0; c < N; ++c) {
        for (std::size_t d = 0; d < N; ++d) {
          const bool allowed = (c == index_p() && d >= 1 && d <= static_cast<std::size_t>(n)) ||
                               (d == index_p() && c >= 1 && c <= static_cast<std::size_t>(n));
          if (!allowed && !w({c, d}).is_zero()) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

bool frame_metricity_holds(const Spacetime &st) {
  const int n = st.n();
  const std::size_t N = frame_dim(n);
  PolyTensor eta(n, 2, st.spec().zero());
  for (std::size_t a = 0; a < N; ++a) {
    eta({a, dual_index(a, n)}) = Poly::constant(st.spec().variable_count(), 1);
  }
  return st.covariant_derivative(eta).is_zero();
}

} // namespace holosym
