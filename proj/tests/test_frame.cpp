#include "holosym/frame.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace holosym;
using holosym::testing::uniform;

namespace {

FrameVector random_vector(std::mt19937_64 &rng, int n) {
  FrameVector x(n);
  for (std::size_t a = 0; a < frame_dim(n); ++a) {
    x[a] = make_rational(uniform(rng, -4, 4), uniform(rng, 1, 3));
  }
  return x;
}

Bivector random_bivector(std::mt19937_64 &rng, int n) {
  return wedge(random_vector(rng, n), random_vector(rng, n)) + wedge(random_vector(rng, n), random_vector(rng, n));
}

RationalTensor random_tensor(std::mt19937_64 &rng, int n, int rank) {
  RationalTensor t(n, rank);
  for (std::size_t f = 0; f < t.size(); ++f) {
    t.at(f) = uniform(rng, 0, 2) == 0 ? Rational(uniform(rng, -3, 3)) : Rational(0);
  }
  return t;
}

/// Independent evaluation of (X^Y)Z = g(X,Z)Y - g(Y,Z)X.
FrameVector wedge_formula(const FrameVector &x, const FrameVector &y, const FrameVector &z) {
  return metric_pair(x, z) * y - metric_pair(y, z) * x;
}

} // namespace

TEST_SUITE("frame_algebra") {

TEST_CASE("metric of the null frame") {
  const int n = 3;
  CHECK(metric_pair(FrameVector::p(n), FrameVector::q(n)) == 1);
  CHECK(metric_pair(FrameVector::p(n), FrameVector::p(n)) == 0);
  CHECK(metric_pair(FrameVector::q(n), FrameVector::q(n)) == 0);
  CHECK(metric_pair(FrameVector::e(n, 1), FrameVector::e(n, 1)) == 1);
  CHECK(metric_pair(FrameVector::e(n, 1), FrameVector::e(n, 2)) == 0);
  CHECK(metric_pair(FrameVector::p(n), FrameVector::e(n, 2)) == 0);
  CHECK_THROWS_AS(metric_pair(FrameVector::p(2), FrameVector::p(3)), StructuralError);
}

TEST_CASE("wedge action examples") {
  const int n = 2;
  const auto p = FrameVector::p(n);
  const auto q = FrameVector::q(n);
  const auto e1 = FrameVector::e(n, 1);
  CHECK(wedge(p, e1).apply(q) == e1);
  CHECK(wedge(p, q).apply(p) == Rational(-1) * p);
  CHECK(wedge(p, q).apply(q) == q);
}

TEST_CASE("wedge matches its defining formula and is g-skew") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = uniform(rng, 1, 4);
    const auto x = random_vector(rng, n);
    const auto y = random_vector(rng, n);
    const auto z = random_vector(rng, n);
    const auto w = random_vector(rng, n);
    const Bivector b = wedge(x, y);
    CHECK(b.apply(z) == wedge_formula(x, y, z));
    CHECK(wedge(y, x) == Rational(-1) * b);
    const Bivector c = random_bivector(rng, n);
    CHECK(metric_pair(c.apply(z), w) + metric_pair(z, c.apply(w)) == 0);
    CHECK(Bivector::from_endomorphism(n, c.endomorphism()) == c);
    CHECK(Bivector::unpacked(n, c.packed()) == c);
  }
}

TEST_CASE("brackets") {
  const int n = 2;
  const auto p = FrameVector::p(n);
  const auto q = FrameVector::q(n);
  const auto e1 = FrameVector::e(n, 1);
  const auto e2 = FrameVector::e(n, 2);
  CHECK(bivector_bracket(wedge(p, e1), wedge(p, e2)).is_zero());
  CHECK(bivector_bracket(wedge(p, q), wedge(p, e1)) == Rational(-1) * wedge(p, e1));
  const Bivector a = wedge(e1, q) + wedge(p, e2);
  CHECK(bivector_bracket(a, a).is_zero());
}

TEST_CASE("grading by p^q") {
  const int n = 3;
  const auto p = FrameVector::p(n);
  const auto q = FrameVector::q(n);
  const Bivector z = wedge(p, q);
  for (int i = 1; i <= n; ++i) {
    const auto ei = FrameVector::e(n, i);
    CHECK(bivector_bracket(z, wedge(p, ei)) == Rational(-1) * wedge(p, ei));
    CHECK(bivector_bracket(z, wedge(q, ei)) == wedge(q, ei));
    for (int j = i + 1; j <= n; ++j) {
      CHECK(bivector_bracket(z, wedge(ei, FrameVector::e(n, j))).is_zero());
    }
  }
  CHECK(bivector_bracket(z, z).is_zero());
}

TEST_CASE("bracket agrees with the matrix commutator and satisfies Jacobi") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = uniform(rng, 1, 3);
    const Bivector a = random_bivector(rng, n);
    const Bivector b = random_bivector(rng, n);
    const Bivector c = random_bivector(rng, n);
    const ExactMatrix comm = a.endomorphism() * b.endomorphism() - b.endomorphism() * a.endomorphism();
    CHECK(bivector_bracket(a, b).endomorphism() == comm);
    const Bivector jac = bivector_bracket(a, bivector_bracket(b, c)) + bivector_bracket(b, bivector_bracket(c, a)) +
                         bivector_bracket(c, bivector_bracket(a, b));
    CHECK(jac.is_zero());
  }
}

TEST_CASE("symmetric product") {
  const int n = 2;
  const auto p = FrameVector::p(n);
  const Bivector w1 = wedge(p, FrameVector::e(n, 1));
  const Bivector w2 = wedge(p, FrameVector::e(n, 2));
  CHECK(sym_prod(w1, w2) == sym_prod(w2, w1));
  CHECK(sym_prod(w1, w1) == Rational(2) * tensor_product(to_tensor(w1), to_tensor(w1)));
  const RationalTensor s = sym_prod(w1, w2);
  for (std::size_t f = 0; f < s.size(); ++f) {
    if (is_zero(s.at(f))) {
      continue;
    }
    for (auto a : s.unflat(f)) {
      CHECK((a == 0 || a == 1 || a == 2));
    }
  }
}

TEST_CASE("lie action examples") {
  const int n = 2;
  const auto p = FrameVector::p(n);
  const auto q = FrameVector::q(n);
  const Bivector w1 = wedge(p, FrameVector::e(n, 1));
  CHECK(lie_action(wedge(p, q), tensor_product(to_tensor(p), to_tensor(q))).is_zero());
  CHECK(lie_action(w1, sym_prod(w1, w1)).is_zero());
}

TEST_CASE("lie action is a derivation and respects brackets") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = uniform(rng, 1, 3);
    const Bivector xi = random_bivector(rng, n);
    const Bivector eta = random_bivector(rng, n);
    const auto x = random_vector(rng, n);
    const auto y = random_vector(rng, n);
    const RationalTensor xy = tensor_product(to_tensor(x), to_tensor(y));
    CHECK(lie_action(xi, xy) == tensor_product(to_tensor(xi.apply(x)), to_tensor(y)) +
                                    tensor_product(to_tensor(x), to_tensor(xi.apply(y))));
    const RationalTensor t = random_tensor(rng, n, 3);
    CHECK(lie_action(bivector_bracket(xi, eta), t) == lie_action(xi, lie_action(eta, t)) - lie_action(eta, lie_action(xi, t)));
  }
}

TEST_CASE("complex structure and its symmetric powers") {
  for (int m : {1, 2}) {
    const Bivector j = complex_structure(m);
    const ExactMatrix endo = j.endomorphism();
    const ExactMatrix sq = endo * endo;
    for (std::size_t a = 1; a <= static_cast<std::size_t>(2 * m); ++a) {
      CHECK(sq(a, a) == -1);
    }
    const JExtensionReport r = j_extension_check(m);
    CHECK(r.passed());
    CHECK(r.sym2_dimension == static_cast<std::size_t>(m * (2 * m + 1)));
    CHECK(r.sym3_dimension == static_cast<std::size_t>(2 * m * (2 * m + 1) * (2 * m + 2) / 6));
  }
}

TEST_CASE("symmetric power bases are invariant under so(E)") {
  const int n = 3;
  const auto basis = symmetric_power_basis(n, 2);
  CHECK(basis.size() == 6);
  const Bivector r = wedge(FrameVector::e(n, 1), FrameVector::e(n, 2));
  const ExactMatrix m = action_matrix(r, basis);
  CHECK(m.rows() == 6);
  // The trace form delta is killed by every rotation.
  RationalTensor delta(n, 2);
  for (std::size_t i = 1; i <= 3; ++i) {
    delta({i, i}) = 1;
  }
  CHECK(lie_action(r, delta).is_zero());
}

}
