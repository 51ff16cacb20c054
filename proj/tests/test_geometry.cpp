#include "holosym/acceptance.hpp"
#include "holosym/geometry.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace holosym;

namespace {

RationalTensor pe_square(int n, int i, int j) {
  const auto p = FrameVector::p(n);
  return sym_prod(wedge(p, FrameVector::e(n, i)), wedge(p, FrameVector::e(n, j)));
}

} // namespace

TEST_SUITE("geometry") {

TEST_CASE("Christoffel symbols of a plane wave") {
  const MetricSpec flat = MetricSpec::parse(2, "0");
  const ChristoffelTable g0 = christoffel(flat);
  CHECK(g0.support().empty());

  const MetricSpec spec = MetricSpec::parse(1, "x1^2");
  const ChristoffelTable g = christoffel(spec);
  const std::size_t v = 0, x = 1, u = 2;
  const auto support = g.support();
  CHECK(support.size() == 3);
  CHECK(g(x, u, u) == parse_polynomial("-x1", 1));
  CHECK(g(v, x, u) == parse_polynomial("x1", 1));
  CHECK(g(v, u, x) == parse_polynomial("x1", 1));
  CHECK(metricity_holds(spec, g));
}

TEST_CASE("v-free metrics have no v-symbols") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const MetricSpec spec = random_vfree_spec(rng, 2, 4);
    const ChristoffelTable g = christoffel(spec);
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = 0; b < 4; ++b) {
        CHECK(g(b, 0, a).is_zero());
      }
    }
  }
}

TEST_CASE("null frame") {
  const MetricSpec spec = MetricSpec::parse(2, "u^2*x1^2 + v*x2");
  const FrameFields f = frame_fields(spec);
  const std::size_t q = index_q(2);
  CHECK(f.frame_metric(spec, q, q).is_zero());
  CHECK(f.frame_metric(spec, 0, q) == Poly::constant(4, 1));
  CHECK(f.frame_metric(spec, 1, 1) == Poly::constant(4, 1));
  const FrameFields flat = frame_fields(MetricSpec::parse(2, "0"));
  CHECK(flat.vector(q, 3) == Poly::constant(4, 1));
  CHECK(flat.vector(q, 0).is_zero());
}

TEST_CASE("curvature examples") {
  CHECK(riemann(MetricSpec::parse(2, "0")).frame.is_zero());
  const MetricSpec a = MetricSpec::parse(2, "x1^2");
  CHECK(riemann(a).frame == scale(pe_square(2, 1, 1), Poly::constant(4, 1)));
  const MetricSpec b = MetricSpec::parse(2, "u^2*x1^2");
  CHECK(riemann(b).frame == scale(pe_square(2, 1, 1), parse_polynomial("u^2", 2)));
}

TEST_CASE("derivatives of the curvature for u^2 x1^2") {
  const int n = 2;
  const MetricSpec spec = MetricSpec::parse(n, "u^2*x1^2");
  const RationalTensor p = to_tensor(FrameVector::p(n));
  CHECK(nabla_k(spec, 1) == tensor_product(p, scale(pe_square(n, 1, 1), parse_polynomial("2*u", n))));
  CHECK(nabla_k(spec, 2) == scale(tensor_product(tensor_product(p, p), pe_square(n, 1, 1)), Poly::constant(4, 2)));
  CHECK(nabla_k(spec, 3).is_zero());
  CHECK(nabla_k(MetricSpec::parse(2, "x1^2 - x2^2"), 1).is_zero());
}

TEST_CASE("second derivative for a cubic potential") {
  // p(x)p coefficient of nabla^2 R is (1/4) H_1 H_111 = (9/2) x1^2.
  const int n = 1;
  const MetricSpec spec = MetricSpec::parse(n, "x1^3");
  const RationalTensor p = to_tensor(FrameVector::p(n));
  const PolyTensor expected = scale(tensor_product(tensor_product(p, p), pe_square(n, 1, 1)), parse_polynomial("9/2*x1^2", n));
  CHECK(nabla_k(spec, 2) == expected);
  CHECK(closed_form_oracles(spec).nabla2R == expected);
}

TEST_CASE("symmetry order examples") {
  CHECK(symmetry_order(MetricSpec::parse(2, "0"), 3).order == 0);
  CHECK(symmetry_order(MetricSpec::parse(2, "x1^2 - x2^2"), 3).order == 1);
  CHECK(symmetry_order(MetricSpec::parse(1, "u*x1^2"), 3).order == 2);
  CHECK(symmetry_order(MetricSpec::parse(1, "u^2*x1^2"), 3).order == 3);
  CHECK(symmetry_order(MetricSpec::parse(1, "x1^3"), 3).exceeds());
  CHECK_THROWS_AS(symmetry_order(MetricSpec::parse(1, "x1^2"), -1), PreconditionError);
}

TEST_CASE("closed forms equal the Christoffel path on random metrics") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const MetricSpec spec = random_vfree_spec(rng, holosym::testing::uniform(rng, 1, 3), 4);
    const Spacetime st(spec);
    const ClosedForms cf = closed_form_oracles(spec);
    const PolyTensor d1 = st.covariant_derivative(st.curvature().frame);
    CHECK(st.curvature().frame == cf.R);
    CHECK(d1 == cf.nablaR);
    CHECK(st.covariant_derivative(d1) == cf.nabla2R);
  }
  CHECK(closed_form_oracles(MetricSpec::parse(1, "0")).nabla2R.is_zero());
  CHECK_THROWS_AS(closed_form_oracles(MetricSpec::parse(1, "v*x1")), PreconditionError);
}

TEST_CASE("serial and parallel covariant derivatives agree") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = holosym::testing::uniform(rng, 1, 3);
    MetricSpec spec(n, holosym::testing::random_poly(rng, n, 4, 3));
    const Spacetime st(spec);
    const PolyTensor &r = st.curvature().frame;
    CHECK(st.covariant_derivative(r) == st.covariant_derivative_serial(r));
  }
}

TEST_CASE("identities on random metrics, including v-dependent ones") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = holosym::testing::uniform(rng, 1, 3);
    const MetricSpec spec = trial % 2 == 0 ? random_vfree_spec(rng, n, 4)
                                           : MetricSpec(n, holosym::testing::random_poly(rng, n, 3, 3));
    const Spacetime st(spec);
    const PolyTensor &r = st.curvature().frame;
    const PolyTensor d1 = st.covariant_derivative(r);
    const PolyTensor d2 = st.covariant_derivative(d1);
    CHECK(curvature_symmetries_hold(r));
    CHECK(second_bianchi_holds(d1));
    CHECK(frame_metricity_holds(st));
    CHECK(metricity_holds(spec, st.christoffel()));
    const std::size_t N = frame_dim(n);
    for (std::size_t a = 0; a < N; ++a) {
      for (std::size_t b = 0; b < N; ++b) {
        CHECK(ricci_identity_residual(st, d2, a, b).is_zero());
      }
    }
    if (spec.is_ppwave()) {
      CHECK(curvature_in_p_wedge_E(st));
    }
  }
}

TEST_CASE("Ricci identity has nontrivial sides") {
  const MetricSpec spec = MetricSpec::parse(1, "v^2*x1 + u*x1^3");
  const Spacetime st(spec);
  const PolyTensor d2 = st.covariant_derivative(st.covariant_derivative(st.curvature().frame));
  const auto [commutator, action] = ricci_identity_sides(st, d2, 1, index_q(1));
  CHECK_FALSE(action.is_zero());
  CHECK(commutator == action);
  CHECK(ricci_identity_check(MetricSpec::parse(2, "0"), 1, 3).is_zero());
  CHECK(ricci_identity_check(MetricSpec::parse(1, "u^2*x1^2"), 1, 2).is_zero());
}

TEST_CASE("recurrence of p") {
  const RecurrenceForm pp = recurrence_form(MetricSpec::parse(2, "u^2*x1^2"));
  CHECK(pp.theta_u.is_zero());
  CHECK(pp.p_parallel);
  CHECK(pp.recurrence_verified);

  const RecurrenceForm lin = recurrence_form(MetricSpec::parse(1, "2*v*u^3"));
  CHECK(lin.theta_u == parse_polynomial("u^3", 1));
  CHECK_FALSE(lin.p_parallel);
  CHECK(lin.parallelizable);
  CHECK(lin.recurrence_verified);

  const RecurrenceForm sq = recurrence_form(MetricSpec::parse(1, "v^2"));
  CHECK_FALSE(sq.p_parallel);
  CHECK_FALSE(sq.parallelizable);
  CHECK(sq.recurrence_verified);
}

TEST_CASE("null second derivative for third-order metrics") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 10; ++trial) {
    const MetricFamilyParams params = random_family(rng, holosym::testing::uniform(rng, 1, 3), 0);
    const MetricSpec spec = make_order_k(params);
    REQUIRE(symmetry_order(spec, 3).order == 3);
    CHECK(metric_norm(nabla_k(spec, 2)).is_zero());
  }
}

}
