#include "holosym/classify.hpp"

#include "holosym/error.hpp"

#include <algorithm>

namespace holosym {

namespace {

void check_geometry_size(int n) {
  if (n < 1) {
    throw PreconditionError("metric needs n >= 1");
  }
  if (n > kMaxGeometryN) {
    throw SizeCapError("metric pipeline supports n <= " + std::to_string(kMaxGeometryN));
  }
}

bool depends_only_on(const Poly &f, std::size_t var) {
  for (const auto &t : f.terms()) {
    for (std::size_t k = 0; k < t.exponents.size(); ++k) {
      if (k != var && t.exponents[k] != 0) {
        return false;
      }
    }
  }
  return true;
}

Poly u_power(std::size_t nvars, std::size_t u, unsigned k, const Rational &c) {
  Poly::Exponents e(nvars, 0);
  e[u] = k;
  return Poly::monomial(nvars, std::move(e), c);
}

std::string key(std::initializer_list<int> idx) {
  std::string s;
  for (int i : idx) {
    if (!s.empty()) {
      s += ',';
    }
    s += std::to_string(i);
  }
  return s;
}

void check_square(const ExactMatrix &m, int n, const char *name) {
  if (m.rows() != static_cast<std::size_t>(n) || m.cols() != static_cast<std::size_t>(n)) {
    throw PreconditionError(std::string(name) + " must be n x n");
  }
  if (!is_symmetric(m)) {
    throw PreconditionError(std::string(name) + " must be symmetric");
  }
}

int predicted_order(const MetricFamilyParams &p) {
  if (!p.H2.is_zero()) {
    return 3;
  }
  if (!p.H1.is_zero()) {
    return 2;
  }
  return p.H0.is_zero() ? 0 : 1;
}

} // namespace

MetricFamilyParams MetricFamilyParams::zero(int n) {
  const auto d = static_cast<std::size_t>(n);
  return {n, ExactMatrix(d, d), ExactMatrix(d, d), ExactMatrix(d, d), {}, std::nullopt};
}

bool is_symmetric(const ExactMatrix &m) {
  if (m.rows() != m.cols()) {
    return false;
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      if (m(i, j) != m(j, i)) {
        return false;
      }
    }
  }
  return true;
}

MetricSpec make_cahen_wallach(const ExactMatrix &s) {
  const int n = static_cast<int>(s.rows());
  check_geometry_size(n);
  check_square(s, n, "S");
  if (s.is_zero()) {
    throw PreconditionError("S = 0 gives a flat metric");
  }
  MetricFamilyParams p = MetricFamilyParams::zero(n);
  p.H0 = s;
  return make_order_k(p);
}

MetricSpec make_order_k(const MetricFamilyParams &params) {
  const int n = params.n;
  check_geometry_size(n);
  check_square(params.H2, n, "H2");
  check_square(params.H1, n, "H1");
  check_square(params.H0, n, "H0");
  const std::size_t nv = static_cast<std::size_t>(n) + 2;
  const std::size_t u = nv - 1;
  if (!params.G.empty() && params.G.size() != static_cast<std::size_t>(n)) {
    throw PreconditionError("G must have n entries");
  }
  Poly h(nv);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const auto a = static_cast<std::size_t>(i - 1);
      const auto b = static_cast<std::size_t>(j - 1);
      Poly f = u_power(nv, u, 2, params.H2(a, b)) + u_power(nv, u, 1, params.H1(a, b)) +
               u_power(nv, u, 0, params.H0(a, b));
      h += f * Poly::variable(nv, static_cast<std::size_t>(i)) * Poly::variable(nv, static_cast<std::size_t>(j));
    }
  }
  for (std::size_t i = 0; i < params.G.size(); ++i) {
    const Poly &g = params.G[i];
    if (g.variable_count() != nv || !depends_only_on(g, u)) {
      throw PreconditionError("G_i must be a polynomial in u");
    }
    h += g * Poly::variable(nv, i + 1);
  }
  if (params.K) {
    if (params.K->variable_count() != nv || !depends_only_on(*params.K, u)) {
      throw PreconditionError("K must be a polynomial in u");
    }
    h += *params.K;
  }
  return MetricSpec(n, std::move(h));
}

std::optional<MetricFamilyParams> extract_family(const MetricSpec &spec) {
  if (!spec.is_ppwave()) {
    return std::nullopt;
  }
  const int n = spec.n;
  const std::size_t nv = spec.variable_count();
  const std::size_t u = spec.var_u();
  MetricFamilyParams out = MetricFamilyParams::zero(n);
  Poly quadratic(nv);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const Poly hij = spec.H.derivative(spec.var_x(i)).derivative(spec.var_x(j));
      if (!depends_only_on(hij, u) || hij.degree() > 2) {
        return std::nullopt;
      }
      const Poly f = hij * Rational(1, 2);
      const auto a = static_cast<std::size_t>(i - 1);
      const auto b = static_cast<std::size_t>(j - 1);
      Poly::Exponents e(nv, 0);
      for (unsigned k = 0; k <= 2; ++k) {
        e[u] = k;
        ExactMatrix &m = k == 2 ? out.H2 : (k == 1 ? out.H1 : out.H0);
        m(a, b) = f.coefficient(e);
      }
      quadratic += f * Poly::variable(nv, spec.var_x(i)) * Poly::variable(nv, spec.var_x(j));
    }
  }
  const Poly tail = spec.H - quadratic;
  if (!tail.is_zero()) {
    Poly k = tail;
    out.G.assign(static_cast<std::size_t>(n), Poly(nv));
    for (int i = 1; i <= n; ++i) {
      Poly g = tail.derivative(spec.var_x(i));
      k -= g * Poly::variable(nv, spec.var_x(i));
      out.G[static_cast<std::size_t>(i - 1)] = std::move(g);
    }
    out.K = std::move(k);
  }
  return out;
}

std::vector<Rational> characteristic_polynomial(const ExactMatrix &a) {
  if (a.rows() != a.cols()) {
    throw PreconditionError("characteristic polynomial needs a square matrix");
  }
  const std::size_t n = a.rows();
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  ExactMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + ExactMatrix::identity(n) * c[n - k + 1];
    const ExactMatrix am = a * m;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) {
      tr += am(i, i);
    }
    c[n - k] = -tr / Rational(static_cast<long>(k));
  }
  std::reverse(c.begin(), c.end());
  return c;
}

bool ConstraintResiduals::all_zero() const {
  return std::all_of(groups.begin(), groups.end(), [](const ResidualGroup &g) { return g.vanishes(); });
}

ConstraintResiduals derive_h_constraints(const MetricSpec &spec) {
  if (!spec.is_ppwave()) {
    throw PreconditionError("constraint derivation needs d_v H = 0");
  }
  const int n = spec.n;
  const std::size_t u = spec.var_u();
  auto x = [&](int i) { return spec.var_x(i); };
  auto idx = [](int i) { return static_cast<std::size_t>(i); };

  std::vector<Poly> h1(idx(n) + 1);
  for (int k = 1; k <= n; ++k) {
    h1[idx(k)] = spec.H.derivative(x(k));
  }
  ResidualGroup ijkl{"H_ijkl", 0, {}};
  ResidualGroup ijku{"H_ijku", 0, {}};
  ResidualGroup xd{"x_derivative", 0, {}};
  ResidualGroup ud{"u_derivative", 0, {}};
  ResidualGroup uuu{"H_ijuuu", 0, {}};
  auto record = [](ResidualGroup &g, std::string k, Poly r) {
    ++g.checked;
    if (!r.is_zero()) {
      g.nonzero.emplace(std::move(k), std::move(r));
    }
  };

  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      const Poly hij = h1[idx(i)].derivative(x(j));
      std::vector<Poly> hijk(idx(n) + 1);
      for (int k = 1; k <= n; ++k) {
        hijk[idx(k)] = hij.derivative(x(k));
      }
      for (int k = j; k <= n; ++k) {
        record(ijku, key({i, j, k}), hijk[idx(k)].derivative(u));
        for (int l = k; l <= n; ++l) {
          record(ijkl, key({i, j, k, l}), hijk[idx(k)].derivative(x(l)));
        }
      }
      const Poly hijuu = hij.derivative(u).derivative(u);
      // Four times the p(x)p coefficient of nabla^2 R at (p^e_i)(.)(p^e_j).
      Poly q = hijuu * Rational(2);
      for (int k = 1; k <= n; ++k) {
        q += h1[idx(k)] * hijk[idx(k)];
      }
      for (int l = 1; l <= n; ++l) {
        record(xd, key({i, j, l}), q.derivative(x(l)));
      }
      record(ud, key({i, j}), q.derivative(u));
      record(uuu, key({i, j}), hijuu.derivative(u));
    }
  }
  return {{std::move(ijkl), std::move(ijku), std::move(xd), std::move(ud), std::move(uuu)}};
}

CubicEliminationReport cubic_elimination_report(const std::vector<Rational> &c, int n) {
  const auto d = static_cast<std::size_t>(n);
  if (c.size() != d * d * d) {
    throw PreconditionError("cubic tensor must have n^3 entries");
  }
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> const Rational & { return c[(i * d + j) * d + k]; };
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        if (at(i, j, k) != at(j, i, k) || at(i, j, k) != at(i, k, j)) {
          throw PreconditionError("cubic tensor must be fully symmetric");
        }
      }
    }
  }
  CubicEliminationReport rep;
  rep.slices_symmetric = true;
  rep.constraint_satisfied = true;
  for (std::size_t l = 0; l < d && rep.constraint_satisfied; ++l) {
    for (std::size_t s = 0; s < d && rep.constraint_satisfied; ++s) {
      for (std::size_t i = 0; i < d && rep.constraint_satisfied; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          Rational acc = 0;
          for (std::size_t k = 0; k < d; ++k) {
            acc += at(k, l, s) * at(i, j, k);
          }
          if (!is_zero(acc)) {
            rep.constraint_satisfied = false;
            break;
          }
        }
      }
    }
  }
  rep.tensor_zero = std::all_of(c.begin(), c.end(), [](const Rational &x) { return is_zero(x); });
  rep.squares_force_zero = true;
  for (std::size_t i = 0; i < d; ++i) {
    ExactMatrix m(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        m(j, k) = at(i, j, k);
      }
    }
    if (!is_symmetric(m)) {
      rep.slices_symmetric = false;
    }
    const ExactMatrix sq = m * m;
    Rational trace = 0;
    for (std::size_t j = 0; j < d; ++j) {
      trace += sq(j, j);
    }
    // trace(M^2) is the sum of squares of a symmetric M.
    if (rep.constraint_satisfied && (!sq.is_zero() || !is_zero(trace) || !m.is_zero())) {
      rep.squares_force_zero = false;
    }
  }
  return rep;
}

bool cubic_elimination_check(const std::vector<Rational> &c, int n) { return cubic_elimination_report(c, n).consistent(); }

std::string to_string(Check c) {
  switch (c) {
  case Check::symmetry_order:
    return "symmetry_order";
  case Check::decomposition:
    return "decomposition";
  case Check::constraints:
    return "constraints";
  case Check::holonomy:
    return "holonomy";
  case Check::null_norm:
    return "null_norm";
  }
  return "unknown";
}

Check parse_check(std::string_view name) {
  for (Check c : all_checks()) {
    if (to_string(c) == name) {
      return c;
    }
  }
  throw DescriptorError("unknown check '" + std::string(name) + "'");
}

std::vector<Check> all_checks() {
  return {Check::symmetry_order, Check::decomposition, Check::constraints, Check::holonomy, Check::null_norm};
}

bool AnalysisReport::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const auto &kv) { return kv.second; });
}

AnalysisReport analyze(const AnalysisRequest &request) {
  const MetricSpec &spec = request.spec;
  check_geometry_size(spec.n);
  if (request.k_max < 0 || request.k_max > 4) {
    throw PreconditionError("k_max must lie in 0..4");
  }
  auto wants = [&](Check c) { return std::find(request.checks.begin(), request.checks.end(), c) != request.checks.end(); };

  AnalysisReport rep;
  rep.request = request;
  rep.ppwave = spec.is_ppwave();
  rep.recurrence = recurrence_form(spec);
  const Spacetime st(spec);

  int depth = 0;
  if (wants(Check::symmetry_order)) {
    depth = request.k_max;
  }
  if (wants(Check::null_norm)) {
    depth = std::max(depth, 2);
  }
  if (wants(Check::constraints) && rep.ppwave) {
    depth = std::max(depth, 3);
  }
  // chain[k] = nabla^k R; a zero entry ends the chain since all later ones vanish.
  std::vector<PolyTensor> chain{st.curvature().frame};
  while (static_cast<int>(chain.size()) <= depth && !chain.back().is_zero()) {
    chain.push_back(st.covariant_derivative(chain.back()));
  }
  auto vanishes_at = [&](int k) {
    const auto last = static_cast<int>(chain.size()) - 1;
    return k > last ? chain.back().is_zero() : chain[static_cast<std::size_t>(k)].is_zero();
  };

  if (wants(Check::symmetry_order)) {
    SymmetryOrder so;
    for (int k = 0; k <= request.k_max; ++k) {
      if (vanishes_at(k)) {
        so.order = k;
        break;
      }
    }
    rep.order = so;
  }

  if (wants(Check::decomposition)) {
    try {
      rep.decomposition = decompose(chain[0]);
      const auto &d = *rep.decomposition;
      auto none = [](const std::vector<Poly> &v) {
        return std::all_of(v.begin(), v.end(), [](const Poly &x) { return x.is_zero(); });
      };
      rep.decomposition_t_only = none(d.r0) && none(d.p) && none(d.v) && d.lambda.is_zero();
      if (rep.ppwave) {
        rep.verdicts["decomposition_t_only"] = *rep.decomposition_t_only;
      }
    } catch (const StructuralError &) {
      rep.verdicts["decomposition"] = false;
    }
  }

  if (wants(Check::holonomy)) {
    rep.holonomy_in_pE = curvature_in_p_wedge_E(st);
    if (rep.ppwave) {
      rep.verdicts["holonomy_p_wedge_E"] = *rep.holonomy_in_pE;
    }
  }

  if (wants(Check::null_norm)) {
    rep.nabla2_norm = vanishes_at(2) ? spec.zero() : metric_norm(chain[2]);
    const bool third_order = vanishes_at(3) && !vanishes_at(2);
    if (third_order) {
      rep.verdicts["null_norm"] = rep.nabla2_norm->is_zero();
    }
  }

  if (wants(Check::constraints) && rep.ppwave) {
    rep.constraints = derive_h_constraints(spec);
    rep.constraints_match_nabla3 = rep.constraints->all_zero() == vanishes_at(3);
    rep.verdicts["constraints_match_nabla3"] = *rep.constraints_match_nabla3;
  }

  if (auto fam = extract_family(spec)) {
    FamilySummary fs;
    fs.params = *fam;
    fs.h2_rank = rank(fam->H2);
    fs.h2_charpoly = characteristic_polynomial(fam->H2);
    fs.has_tail = !fam->G.empty() || fam->K.has_value();
    fs.predicted_order = predicted_order(*fam);
    if (fs.has_tail) {
      MetricFamilyParams bare = *fam;
      bare.G.clear();
      bare.K.reset();
      const Spacetime normal(make_order_k(bare));
      PolyTensor a = st.curvature().frame;
      PolyTensor b = normal.curvature().frame;
      bool equal = a == b;
      for (int k = 1; k <= 2 && equal; ++k) {
        a = st.covariant_derivative(a);
        b = normal.covariant_derivative(b);
        equal = a == b;
      }
      fs.normal_form_curvature_equal = equal;
      rep.verdicts["normal_form_curvature"] = equal;
    } else {
      fs.normal_form_curvature_equal = true;
    }
    if (rep.order && request.k_max >= 3) {
      rep.verdicts["theorem_main"] = rep.order->order == fs.predicted_order;
    }
    rep.family = std::move(fs);
  }
  return rep;
}

AnalysisReport verify_theorem_main(const MetricFamilyParams &params) {
  AnalysisRequest req;
  req.spec = make_order_k(params);
  req.h_text = req.spec.H.to_string();
  req.checks = all_checks();
  return analyze(req);
}

} // namespace holosym
