#include "holosym/acceptance.hpp"
#include "holosym/classify.hpp"
#include "holosym/error.hpp"
#include "holosym/report.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace holosym;
using holosym::testing::uniform;

namespace {

ExactMatrix diag(std::initializer_list<int> d) {
  ExactMatrix m(d.size(), d.size());
  std::size_t i = 0;
  for (int x : d) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

MetricFamilyParams family(ExactMatrix h2, ExactMatrix h1, ExactMatrix h0) {
  MetricFamilyParams p;
  p.n = static_cast<int>(h2.rows());
  p.H2 = std::move(h2);
  p.H1 = std::move(h1);
  p.H0 = std::move(h0);
  return p;
}

const ResidualGroup &group(const ConstraintResiduals &r, const std::string &name) {
  for (const auto &g : r.groups) {
    if (g.name == name) {
      return g;
    }
  }
  throw std::runtime_error("missing group " + name);
}

} // namespace

TEST_SUITE("classify_cli") {

TEST_CASE("Cahen-Wallach metrics are symmetric") {
  CHECK(symmetry_order(make_cahen_wallach(diag({1, -1})), 3).order == 1);
  CHECK(symmetry_order(make_cahen_wallach(diag({1, 1})), 3).order == 1);
  CHECK_THROWS_AS(make_cahen_wallach(diag({0, 0})), PreconditionError);
  ExactMatrix s(2, 2);
  s(0, 1) = 1;
  CHECK_THROWS_AS(make_cahen_wallach(s), PreconditionError);
}

TEST_CASE("family generator examples") {
  CHECK(symmetry_order(make_order_k(family(diag({1, 0}), diag({0, 0}), diag({0, 0}))), 3).order == 3);
  CHECK(symmetry_order(make_order_k(family(diag({0, 0}), diag({1, 0}), diag({0, 0}))), 3).order == 2);
  CHECK(symmetry_order(make_order_k(family(diag({0, 0}), diag({0, 0}), diag({1, -1}))), 3).order == 1);
  CHECK(make_order_k(family(diag({1, 0}), diag({0, 0}), diag({0, 3}))).H == parse_polynomial("u^2*x1^2 + 3*x2^2", 2));
  CHECK_THROWS_AS(make_order_k(MetricFamilyParams::zero(5)), SizeCapError);
}

TEST_CASE("order classification on random families") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = uniform(rng, 1, 3);
    MetricFamilyParams p = MetricFamilyParams::zero(n);
    p.H2 = uniform(rng, 0, 1) ? random_symmetric(rng, n, false) : p.H2;
    p.H1 = uniform(rng, 0, 1) ? random_symmetric(rng, n, false) : p.H1;
    p.H0 = uniform(rng, 0, 1) ? random_symmetric(rng, n, false) : p.H0;
    const int want = !p.H2.is_zero() ? 3 : !p.H1.is_zero() ? 2 : !p.H0.is_zero() ? 1 : 0;
    CHECK(symmetry_order(make_order_k(p), 3).order == want);
  }
}

TEST_CASE("constraint residual examples") {
  CHECK(derive_h_constraints(MetricSpec::parse(1, "u^2*x1^2")).all_zero());
  const ConstraintResiduals cubic = derive_h_constraints(MetricSpec::parse(1, "x1^3"));
  CHECK_FALSE(cubic.all_zero());
  const ResidualGroup &xd = group(cubic, "x_derivative");
  REQUIRE(xd.nonzero.count("1,1,1") == 1);
  CHECK(xd.nonzero.at("1,1,1") == parse_polynomial("36*x1", 1));
  const ConstraintResiduals u3 = derive_h_constraints(MetricSpec::parse(1, "u^3*x1^2"));
  const ResidualGroup &uuu = group(u3, "H_ijuuu");
  REQUIRE(uuu.nonzero.count("1,1") == 1);
  CHECK(uuu.nonzero.at("1,1") == Poly::constant(3, 12));
  CHECK_THROWS_AS(derive_h_constraints(MetricSpec::parse(1, "v*x1^2")), PreconditionError);
}

TEST_CASE("constraints vanish exactly when the third derivative does") {
  std::mt19937_64 rng(52);
  std::size_t zero = 0;
  std::size_t nonzero = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = uniform(rng, 1, 3);
    MetricSpec spec = random_vfree_spec(rng, n, 4);
    if (trial % 3 == 0) {
      MetricFamilyParams p = random_family(rng, n, uniform(rng, 0, 3));
      p.K = random_u_poly(rng, n, 4);
      spec = make_order_k(p);
    }
    const bool residuals = derive_h_constraints(spec).all_zero();
    CHECK(residuals == nabla_k(spec, 3).is_zero());
    (residuals ? zero : nonzero) += 1;
  }
  CHECK(zero > 0);
  CHECK(nonzero > 0);
}

TEST_CASE("cubic elimination") {
  CHECK(cubic_elimination_check(std::vector<Rational>(8), 2));
  std::vector<Rational> e(8);
  e[0] = 1;
  const CubicEliminationReport r = cubic_elimination_report(e, 2);
  CHECK_FALSE(r.constraint_satisfied);
  CHECK(r.consistent());
  std::vector<Rational> bad(8);
  bad[1] = 1;
  CHECK_THROWS_AS(cubic_elimination_check(bad, 2), PreconditionError);

  std::mt19937_64 rng(53);
  const int n = 3;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Rational> c(27);
    bool any = false;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = j; k < n; ++k) {
          const int x = uniform(rng, 0, 2) == 0 ? uniform(rng, -3, 3) : 0;
          any = any || x != 0;
          const int idx[3] = {i, j, k};
          int perm[3] = {0, 1, 2};
          do {
            c[static_cast<std::size_t>((idx[perm[0]] * n + idx[perm[1]]) * n + idx[perm[2]])] = x;
          } while (std::next_permutation(perm, perm + 3));
        }
    const CubicEliminationReport rep = cubic_elimination_report(c, n);
    CHECK(rep.consistent());
    CHECK(rep.constraint_satisfied == !any);
  }
}

TEST_CASE("characteristic polynomial") {
  CHECK(characteristic_polynomial(diag({1, -2})) == std::vector<Rational>{1, 1, -2});
  ExactMatrix m(2, 2);
  m(0, 1) = 1;
  m(1, 0) = 1;
  CHECK(characteristic_polynomial(m) == std::vector<Rational>{1, 0, -1});
  CHECK(characteristic_polynomial(ExactMatrix(3, 3)) == std::vector<Rational>{1, 0, 0, 0});
}

TEST_CASE("family extraction") {
  const auto f = extract_family(MetricSpec::parse(2, "u^2*x1^2 - 2*x2^2 + 3*u*x1*x2"));
  REQUIRE(f.has_value());
  CHECK(f->H2 == diag({1, 0}));
  CHECK(f->H1(0, 1) == Rational(3, 2));
  CHECK(f->H0 == diag({0, -2}));
  CHECK(f->G.empty());
  const auto tail = extract_family(MetricSpec::parse(1, "u^2*x1^2 + u*x1 + u^5"));
  REQUIRE(tail.has_value());
  CHECK(tail->G[0] == parse_polynomial("u", 1));
  CHECK(*tail->K == parse_polynomial("u^5", 1));
  CHECK_FALSE(extract_family(MetricSpec::parse(1, "x1^3")).has_value());
  CHECK_FALSE(extract_family(MetricSpec::parse(1, "u^3*x1^2")).has_value());
  CHECK_FALSE(extract_family(MetricSpec::parse(1, "v*x1^2")).has_value());
}

TEST_CASE("full pipeline") {
  const AnalysisReport a = verify_theorem_main(family(diag({1, -2}), diag({0, 0}), diag({0, 5})));
  CHECK(a.order->order == 3);
  CHECK(a.passed());
  CHECK(a.verdicts.at("theorem_main"));
  CHECK(a.verdicts.at("null_norm"));
  CHECK(a.family->h2_rank == 2);
  CHECK(a.family->h2_charpoly == std::vector<Rational>{1, 1, -2});

  const AnalysisReport b = verify_theorem_main(family(diag({0, 0}), diag({3, 0}), diag({0, 0})));
  CHECK(b.order->order == 2);
  CHECK(b.passed());

  MetricFamilyParams t = family(diag({1}), diag({0}), diag({0}));
  t.G = {parse_polynomial("u", 1)};
  const AnalysisReport c = verify_theorem_main(t);
  CHECK(c.order->order == 3);
  CHECK(c.family->has_tail);
  CHECK(c.verdicts.at("normal_form_curvature"));
  CHECK(c.passed());

  AnalysisRequest req;
  req.spec = MetricSpec::parse(1, "x1^3");
  req.h_text = "x1^3";
  req.checks = all_checks();
  const AnalysisReport d = analyze(req);
  CHECK(d.order->exceeds());
  CHECK_FALSE(d.constraints->all_zero());
  CHECK(d.verdicts.at("constraints_match_nabla3"));
  CHECK(d.passed());
}

TEST_CASE("request parsing and deterministic reports") {
  const std::string text = R"({"n": 2, "H": "u^2*x1^2 - x2^2", "checks": ["symmetry_order", "null_norm"]})";
  const AnalysisRequest req = parse_request(text);
  CHECK(req.spec.n == 2);
  CHECK(req.checks.size() == 2);
  const std::string first = render(to_json(analyze(req)));
  const std::string second = render(to_json(analyze(parse_request(text))));
  CHECK(first == second);
  const auto j = nlohmann::json::parse(first);
  CHECK(j["symmetry_order"] == 3);
  CHECK(j["p_parallel"] == true);
  CHECK(j["nabla2R_norm"] == "0");
  CHECK_FALSE(j.contains("decomposition"));

  const auto full = to_json(analyze(parse_request(R"({"n": 1, "H": "3/2*x1^2"})")));
  CHECK(full["decomposition"]["T"][0][0] == "3/2");
  CHECK(full["decomposition"]["lambda"] == "0");
  CHECK(full["family"]["H0"][0][0] == "3/2");
  CHECK(full["symmetry_order"] == 1);

  CHECK_THROWS_AS(parse_request("{"), ParseError);
  CHECK_THROWS_AS(parse_request(R"({"n": 2})"), ParseError);
  CHECK_THROWS_AS(parse_request(R"({"n": 2, "H": "x3"})"), ParseError);
  CHECK_THROWS_AS(parse_request(R"({"n": 2, "H": "x1", "checks": ["nope"]})"), DescriptorError);
  CHECK_THROWS_AS(parse_request(R"({"n": 9, "H": "x1"})"), SizeCapError);
}

}
