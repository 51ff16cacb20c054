#include "holosym/acceptance.hpp"

#include "holosym/error.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>

namespace holosym {

namespace {

using Clock = std::chrono::steady_clock;

int uniform(std::mt19937_64 &rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

struct Criterion {
  int id;
  std::string title;
  double budget;
  std::function<bool(std::string &)> body;
};

std::string counts(const std::vector<std::size_t> &v) {
  std::string s;
  for (auto x : v) {
    s += (s.empty() ? "" : "/") + std::to_string(x);
  }
  return s;
}

/// Shared random metric sets, regenerated from the seed.
struct Corpus {
  std::vector<MetricFamilyParams> families;
  std::vector<int> expected_orders;
  std::vector<MetricSpec> vfree;
  std::vector<MetricSpec> constraint_specs;
  /// Order-three specs found by the classification criterion.
  std::vector<MetricSpec> third_order;
};

Corpus make_corpus(std::uint64_t seed) {
  Corpus c;
  std::mt19937_64 fam(seed);
  for (int i = 0; i < 50; ++i) {
    const int n = uniform(fam, 1, 3);
    const int pattern = i % 4;
    c.families.push_back(random_family(fam, n, pattern));
    c.expected_orders.push_back(3 - pattern);
  }
  std::mt19937_64 gen(seed + 1);
  for (int i = 0; i < 30; ++i) {
    c.vfree.push_back(random_vfree_spec(gen, uniform(gen, 1, 3), 4));
  }
  std::mt19937_64 con(seed + 2);
  c.constraint_specs.push_back(MetricSpec::parse(1, "x1^3"));
  c.constraint_specs.push_back(MetricSpec::parse(2, "x1^3 + u^2*x2^2"));
  for (int i = 0; i < 14; ++i) {
    const int n = uniform(con, 1, 3);
    MetricFamilyParams p = random_family(con, n, uniform(con, 0, 3));
    for (int k = 0; k < n; ++k) {
      p.G.push_back(random_u_poly(con, n, 3));
    }
    p.K = random_u_poly(con, n, 3);
    c.constraint_specs.push_back(make_order_k(p));
  }
  while (c.constraint_specs.size() < 30) {
    c.constraint_specs.push_back(random_vfree_spec(con, uniform(con, 1, 3), 4));
  }
  return c;
}

} // namespace

ExactMatrix random_symmetric(std::mt19937_64 &rng, int n, bool nonzero) {
  const auto d = static_cast<std::size_t>(n);
  for (;;) {
    ExactMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i; j < d; ++j) {
        m(i, j) = uniform(rng, -3, 3);
        m(j, i) = m(i, j);
      }
    }
    if (!nonzero || !m.is_zero()) {
      return m;
    }
  }
}

MetricFamilyParams random_family(std::mt19937_64 &rng, int n, int pattern) {
  MetricFamilyParams p = MetricFamilyParams::zero(n);
  ExactMatrix *slots[3] = {&p.H2, &p.H1, &p.H0};
  for (int k = pattern; k < 3; ++k) {
    *slots[k] = random_symmetric(rng, n, k == pattern);
  }
  return p;
}

Poly random_u_poly(std::mt19937_64 &rng, int n, int max_degree) {
  const std::size_t nv = static_cast<std::size_t>(n) + 2;
  Poly out(nv);
  for (int k = 0; k <= max_degree; ++k) {
    const int c = uniform(rng, -2, 2);
    if (c != 0) {
      Poly::Exponents e(nv, 0);
      e[nv - 1] = static_cast<std::uint32_t>(k);
      out += Poly::monomial(nv, std::move(e), c);
    }
  }
  return out;
}

MetricSpec random_vfree_spec(std::mt19937_64 &rng, int n, int max_degree) {
  const std::size_t nv = static_cast<std::size_t>(n) + 2;
  for (;;) {
    Poly h(nv);
    const int terms = uniform(rng, 1, 4);
    for (int t = 0; t < terms; ++t) {
      Poly::Exponents e(nv, 0);
      const int degree = uniform(rng, 2, max_degree);
      for (int k = 0; k < degree; ++k) {
        // Variables x1..xn and u; v stays absent.
        e[static_cast<std::size_t>(uniform(rng, 1, n + 1))] += 1;
      }
      int c = 0;
      while (c == 0) {
        c = uniform(rng, -3, 3);
      }
      h += Poly::monomial(nv, std::move(e), c);
    }
    if (!h.is_zero()) {
      return MetricSpec(n, std::move(h));
    }
  }
}

std::string format_result(const CriterionResult &r) {
  char timing[96];
  std::snprintf(timing, sizeof timing, "(%.2f s, budget %.0f s)", r.seconds, r.budget_seconds);
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title << ": " << r.detail << " " << timing;
  return os.str();
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions &options,
                                            const std::function<void(const CriterionResult &)> &on_result) {
  Corpus corpus = make_corpus(options.seed);

  std::vector<Criterion> list;

  list.push_back({1, "order classification of quadratic families", 30, [&](std::string &detail) {
                    std::vector<std::size_t> hits(4, 0);
                    std::size_t bad = 0;
                    corpus.third_order.clear();
                    for (std::size_t i = 0; i < corpus.families.size(); ++i) {
                      const MetricSpec spec = make_order_k(corpus.families[i]);
                      const SymmetryOrder so = symmetry_order(spec, 3);
                      const int want = corpus.expected_orders[i];
                      if (so.order != want) {
                        ++bad;
                        continue;
                      }
                      ++hits[static_cast<std::size_t>(3 - want)];
                      if (want == 3) {
                        corpus.third_order.push_back(spec);
                      }
                    }
                    detail = std::to_string(corpus.families.size()) + " specs, orders 3/2/1/0 = " + counts(hits) +
                             ", mismatches " + std::to_string(bad);
                    return bad == 0;
                  }});

  list.push_back({2, "closed-form R, nabla R, nabla^2 R equal the Christoffel path", 60, [&](std::string &detail) {
                    std::size_t bad = 0;
                    for (const auto &spec : corpus.vfree) {
                      const Spacetime st(spec);
                      const ClosedForms cf = closed_form_oracles(spec);
                      const PolyTensor d1 = st.covariant_derivative(st.curvature().frame);
                      const PolyTensor d2 = st.covariant_derivative(d1);
                      if (!(st.curvature().frame == cf.R && d1 == cf.nablaR && d2 == cf.nabla2R)) {
                        ++bad;
                      }
                    }
                    detail = std::to_string(corpus.vfree.size()) + " random v-free specs, mismatches " +
                             std::to_string(bad);
                    return bad == 0;
                  }});

  list.push_back({3, "first Bianchi, cyclic identity on nabla R, Ricci identity", 60, [&](std::string &detail) {
                    std::size_t bad = 0;
                    std::size_t pairs = 0;
                    for (const auto &spec : corpus.vfree) {
                      const Spacetime st(spec);
                      const PolyTensor &r = st.curvature().frame;
                      const PolyTensor d1 = st.covariant_derivative(r);
                      const PolyTensor d2 = st.covariant_derivative(d1);
                      bool ok = curvature_symmetries_hold(r) && second_bianchi_holds(d1);
                      const std::size_t N = frame_dim(spec.n);
                      for (std::size_t a = 0; a < N; ++a) {
                        for (std::size_t b = a + 1; b < N; ++b) {
                          ++pairs;
                          ok = ok && ricci_identity_residual(st, d2, a, b).is_zero();
                        }
                      }
                      bad += ok ? 0 : 1;
                    }
                    detail = std::to_string(corpus.vfree.size()) + " specs, " + std::to_string(pairs) +
                             " frame pairs, failing specs " + std::to_string(bad);
                    return bad == 0;
                  }});

  list.push_back({4, "V (x) nabla R has no annihilated elements for type 1", 120, [&](std::string &detail) {
                    std::vector<std::size_t> dims;
                    for (const char *d : {"type1:trivial:n=2", "type1:so(2):n=2", "type1:trivial:n=3",
                                          "type1:so(2):n=3", "type1:so(3):n=3"}) {
                      dims.push_back(annihilator(build_algebra(d), ModuleKind::v_nablaR).dimension());
                    }
                    detail = "annihilator dimensions " + counts(dims);
                    return std::all_of(dims.begin(), dims.end(), [](std::size_t x) { return x == 0; });
                  }});

  list.push_back({5, "V (x) nabla R has no annihilated elements for type 3 with u(1)", 60, [&](std::string &detail) {
                    std::vector<std::size_t> dims;
                    for (const char *d : {"type3:u(1):n=2:c=1", "type3:u(1):n=2:c=2", "type3:u(1):n=2:c=-1"}) {
                      dims.push_back(annihilator(build_algebra(d), ModuleKind::v_nablaR).dimension());
                    }
                    detail = "annihilator dimensions " + counts(dims);
                    return std::all_of(dims.begin(), dims.end(), [](std::size_t x) { return x == 0; });
                  }});

  list.push_back({6, "type 2 annihilator matches invariant symmetric tensors", 120, [&](std::string &detail) {
                    bool ok = true;
                    std::vector<std::string> parts;
                    for (const char *d : {"type2:trivial:n=2", "type2:so(2):n=2", "type2:trivial:n=3",
                                          "type2:so(2):n=3", "type2:so(3):n=3"}) {
                      const HolonomyAlgebra g = build_algebra(d);
                      const AnnihilatorResult r = annihilator(g, ModuleKind::pe_nablaR);
                      const std::size_t want = invariant_symmetric_tensors(g.h, 2).dimension() +
                                               invariant_symmetric_tensors(g.h, 3).dimension();
                      std::size_t normal = 0;
                      for (const auto &t : r.tensors) {
                        normal += lt2_normal_form_check(t, g).passed() ? 1 : 0;
                      }
                      ok = ok && r.dimension() == want && normal == r.dimension();
                      parts.push_back(std::to_string(r.dimension()) + "=" + std::to_string(want));
                    }
                    detail = "dimensions ";
                    for (std::size_t i = 0; i < parts.size(); ++i) {
                      detail += (i ? ", " : "") + parts[i];
                    }
                    detail += ok ? ", all in normal form" : ", mismatch";
                    return ok;
                  }});

  list.push_back({7, "structure relations of nabla R for type 1", 60, [&](std::string &detail) {
                    bool ok = true;
                    for (const char *d : {"type1:trivial:n=2", "type1:so(2):n=2"}) {
                      const HolonomyAlgebra g = build_algebra(d);
                      const NablaRSpace sp = space_nablaR(g);
                      const ThnabrChecker checker(g);
                      std::size_t pass = 0;
                      std::map<std::string, std::size_t> failing;
                      for (std::size_t i = 0; i < sp.dimension(); ++i) {
                        const ThnabrReport rep = checker.check(sp.tensor(i));
                        pass += rep.passed() ? 1 : 0;
                        for (const auto &rel : rep.relations) {
                          if (!rel.holds) {
                            ++failing[rel.name];
                          }
                        }
                      }
                      ok = ok && pass == sp.dimension();
                      detail += std::string(detail.empty() ? "" : "; ") + g.h.name() + " " + std::to_string(pass) +
                                "/" + std::to_string(sp.dimension());
                      for (const auto &[name, count] : failing) {
                        detail += ", '" + name + "' fails on " + std::to_string(count);
                      }
                    }
                    return ok;
                  }});

  list.push_back({8, "V occurs once in nabla R for so(1,2) and so(1,3)", 300, [&](std::string &detail) {
                    bool ok = true;
                    for (const char *d : {"full:n=1", "full:n=2"}) {
                      const HolonomyAlgebra g = build_algebra(d);
                      const NablaRSpace sp = space_nablaR(g);
                      const Module m = nablaR_module(g, sp);
                      const std::size_t mult = equivariant_multiplicity(g, m);
                      const InvariantReport inv = invariant_vectors(g, tensor_product(vector_module(g), m));
                      ok = ok && mult == 1 && inv.dimension() == 1 && inv.nondegenerate;
                      detail += std::string(detail.empty() ? "" : "; ") + d + " hom " + std::to_string(mult) +
                                ", invariants " + std::to_string(inv.dimension()) +
                                (inv.nondegenerate ? " nondegenerate" : " degenerate");
                    }
                    return ok;
                  }});

  list.push_back({9, "minimal polynomials of J on symmetric powers", 10, [&](std::string &detail) {
                    bool ok = true;
                    for (int m : {1, 2}) {
                      const JExtensionReport r = j_extension_check(m);
                      ok = ok && r.passed();
                      detail += std::string(detail.empty() ? "" : "; ") + "m=" + std::to_string(m) +
                                (r.passed() ? " holds" : " fails");
                    }
                    return ok;
                  }});

  list.push_back({10, "nabla^2 R is null for third-order specs", 30, [&](std::string &detail) {
                    std::size_t bad = 0;
                    for (const auto &spec : corpus.third_order) {
                      bad += metric_norm(nabla_k(spec, 2)).is_zero() ? 0 : 1;
                    }
                    detail = std::to_string(corpus.third_order.size()) + " specs, nonzero norms " + std::to_string(bad);
                    return !corpus.third_order.empty() && bad == 0;
                  }});

  list.push_back({11, "H constraints vanish exactly when nabla^3 R does", 60, [&](std::string &detail) {
                    std::size_t bad = 0;
                    std::size_t zero = 0;
                    bool cubic_fails = false;
                    for (std::size_t i = 0; i < corpus.constraint_specs.size(); ++i) {
                      const MetricSpec &spec = corpus.constraint_specs[i];
                      const bool residual_zero = derive_h_constraints(spec).all_zero();
                      const bool flat3 = nabla_k(spec, 3).is_zero();
                      bad += residual_zero == flat3 ? 0 : 1;
                      zero += residual_zero ? 1 : 0;
                      if (i == 0) {
                        cubic_fails = !residual_zero && !flat3;
                      }
                    }
                    detail = std::to_string(corpus.constraint_specs.size()) + " specs, " + std::to_string(zero) +
                             " with vanishing residuals, disagreements " + std::to_string(bad) +
                             (cubic_fails ? ", x1^3 rejected" : ", x1^3 not rejected");
                    return bad == 0 && cubic_fails && zero > 0 && zero < corpus.constraint_specs.size();
                  }});

  std::vector<CriterionResult> results;
  for (auto &c : list) {
    CriterionResult r;
    r.id = c.id;
    r.title = c.title;
    r.budget_seconds = c.budget;
    const auto t0 = Clock::now();
    try {
      r.passed = c.body(r.detail);
    } catch (const std::exception &e) {
      r.passed = false;
      r.detail += std::string(r.detail.empty() ? "" : "; ") + "error: " + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (options.enforce_budgets && r.seconds > r.budget_seconds) {
      r.passed = false;
      r.detail += "; over budget";
    }
    if (on_result) {
      on_result(r);
    }
    results.push_back(std::move(r));
  }
  return results;
}

} // namespace holosym
