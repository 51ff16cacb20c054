#include "holosym/error.hpp"
#include "holosym/holonomy.hpp"

#include <doctest.h>

using namespace holosym;

namespace {

/// Independent closure test: every bracket lies in the span of the basis.
bool closed_by_rank(const HolonomyAlgebra &g) {
  const SubspaceBasis span = g.span();
  for (const auto &a : g.basis) {
    for (const auto &b : g.basis) {
      if (!span.contains(bivector_bracket(a, b).packed())) {
        return false;
      }
    }
  }
  return true;
}

} // namespace

TEST_SUITE("holonomy") {

TEST_CASE("algebra dimensions") {
  for (int n = 1; n <= 4; ++n) {
    const HolonomyAlgebra full = build_algebra("full:n=" + std::to_string(n));
    CHECK(full.dimension() == static_cast<std::size_t>((n + 2) * (n + 1) / 2));
    const HolonomyAlgebra sim = build_algebra("sim:n=" + std::to_string(n));
    CHECK(sim.dimension() == static_cast<std::size_t>(1 + n * (n - 1) / 2 + n));
  }
  CHECK(build_algebra("type2:so(2):n=2").dimension() == 3);
  CHECK(build_algebra("type1:so(3):n=3").dimension() == 7);
  CHECK(build_algebra("type2:trivial:n=3").dimension() == 3);
  CHECK(build_algebra("type4:so(2):n=3").dimension() == 3);
}

TEST_CASE("type 2 with so(2) has the expected basis") {
  const HolonomyAlgebra g = build_algebra("type2:so(2):n=2");
  const int n = 2;
  const auto p = FrameVector::p(n);
  const auto e1 = FrameVector::e(n, 1);
  const auto e2 = FrameVector::e(n, 2);
  CHECK(g.contains(wedge(e1, e2)));
  CHECK(g.contains(wedge(p, e1)));
  CHECK(g.contains(wedge(p, e2)));
  CHECK_FALSE(g.contains(wedge(p, FrameVector::q(n))));
}

TEST_CASE("type 3 contains the twisted grading element") {
  const HolonomyAlgebra g = build_algebra("type3:u(1):n=2:c=1");
  const int n = 2;
  const auto p = FrameVector::p(n);
  CHECK(g.dimension() == 3);
  CHECK(g.contains(wedge(p, FrameVector::q(n)) + complex_structure(1)));
  CHECK(g.contains(wedge(p, FrameVector::e(n, 1))));
  CHECK(g.contains(wedge(p, FrameVector::e(n, 2))));
  CHECK_FALSE(g.contains(wedge(p, FrameVector::q(n))));
}

TEST_CASE("every built algebra is closed") {
  for (const char *d : {"full:n=2", "sim:n=3", "type1:trivial:n=2", "type1:so(2):n=3", "type1:so(3):n=3",
                        "type2:so(3):n=4", "type3:u(1):n=2:c=2", "type3:u(2):n=4:c=-1", "type4:so(2):n=3",
                        "type4:u(1):n=3"}) {
    CAPTURE(d);
    const HolonomyAlgebra g = build_algebra(d);
    CHECK(closed_by_rank(g));
    CHECK(is_closed(g.basis));
    CHECK(lie_closure(g.n, g.generators()).size() == g.dimension());
  }
}

TEST_CASE("descriptor errors") {
  CHECK_THROWS_AS(build_algebra("type5:so(2):n=2"), DescriptorError);
  CHECK_THROWS_AS(build_algebra("type3:u(1):n=2:c=0"), DescriptorError);
  CHECK_THROWS_AS(build_algebra("type3:so(2):n=2:c=1"), DescriptorError);
  CHECK_THROWS_AS(build_algebra("type1:so(4):n=3"), DescriptorError);
  CHECK_THROWS_AS(build_algebra("type1:so(2)"), DescriptorError);
  CHECK_THROWS_AS(build_algebra("full:n=5"), SizeCapError);
}

TEST_CASE("orthogonal parts kill p and q") {
  for (const auto &h : {OrthogonalPart::special_orthogonal(3, 3), OrthogonalPart::unitary(4, 2)}) {
    for (const auto &b : h.basis) {
      CHECK(b.apply(FrameVector::p(h.n)).components() == Vector(frame_dim(h.n)));
      CHECK(b.apply(FrameVector::q(h.n)).components() == Vector(frame_dim(h.n)));
    }
  }
  CHECK(OrthogonalPart::unitary(4, 2).dimension() == 4);
  CHECK(OrthogonalPart::special_orthogonal(4, 3).acting_dimension() == 3);
}

TEST_CASE("annihilators of V (x) nabla R vanish for types 1 and 3") {
  for (const char *d : {"type1:trivial:n=2", "type1:so(2):n=2", "type1:trivial:n=3", "type1:so(2):n=3",
                        "type1:so(3):n=3", "type3:u(1):n=2:c=1", "type3:u(1):n=2:c=2", "type3:u(1):n=2:c=-1"}) {
    CAPTURE(d);
    CHECK(annihilator(build_algebra(d), ModuleKind::v_nablaR).dimension() == 0);
  }
}

TEST_CASE("type 2 annihilators are parametrized by invariant symmetric tensors") {
  for (const char *d :
       {"type2:trivial:n=2", "type2:so(2):n=2", "type2:trivial:n=3", "type2:so(2):n=3", "type2:so(3):n=3"}) {
    CAPTURE(d);
    const HolonomyAlgebra g = build_algebra(d);
    const AnnihilatorResult r = annihilator(g, ModuleKind::pe_nablaR);
    const std::size_t s2 = invariant_symmetric_tensors(g.h, 2).dimension();
    const std::size_t s3 = invariant_symmetric_tensors(g.h, 3).dimension();
    CHECK(r.dimension() == s2 + s3);
    for (const auto &t : r.tensors) {
      CHECK(lt2_normal_form_check(t, g).passed());
    }
  }
  CHECK(annihilator(build_algebra("type2:trivial:n=2"), ModuleKind::pe_nablaR).dimension() == 7);
}

TEST_CASE("so(3) annihilator is the trace form") {
  const HolonomyAlgebra g = build_algebra("type2:so(3):n=3");
  const AnnihilatorResult r = annihilator(g, ModuleKind::pe_nablaR);
  REQUIRE(r.dimension() == 1);
  const Lt2Report rep = lt2_normal_form_check(r.tensors[0], g);
  REQUIRE(rep.passed());
  const Rational d = rep.t2[0];
  CHECK(!is_zero(d));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(rep.t2[i * 3 + j] == (i == j ? d : Rational(0)));
    }
  }
  for (const auto &x : rep.t3) {
    CHECK(is_zero(x));
  }
}

TEST_CASE("normal form check on the zero tensor") {
  const HolonomyAlgebra g = build_algebra("type2:trivial:n=2");
  const Lt2Report rep = lt2_normal_form_check({}, g);
  CHECK(rep.passed());
  for (const auto &x : rep.t2) {
    CHECK(is_zero(x));
  }
}

TEST_CASE("invariant symmetric tensors") {
  const auto so3 = OrthogonalPart::special_orthogonal(3, 3);
  CHECK(invariant_symmetric_tensors(so3, 2).dimension() == 1);
  CHECK(invariant_symmetric_tensors(so3, 3).dimension() == 0);
  CHECK(invariant_symmetric_tensors(OrthogonalPart::unitary(4, 2), 3).dimension() == 0);
  CHECK(invariant_symmetric_tensors(OrthogonalPart::trivial(2), 3).dimension() == 4);
  CHECK(invariant_symmetric_tensors(OrthogonalPart::special_orthogonal(3, 2), 2).dimension() == 2);
}

TEST_CASE("module constructions") {
  const HolonomyAlgebra g = build_algebra("full:n=1");
  const Module v = vector_module(g);
  CHECK(v.dim == 3);
  CHECK(annihilated_subspace(v).dimension() == 0);
  const Module vv = tensor_product(v, v);
  CHECK(vv.dim == 9);
  // The metric is the only invariant in V (x) V.
  CHECK(annihilated_subspace(vv).dimension() == 1);
  CHECK(hom_dimension(v, v) == 1);
  CHECK(hom_dimension(v, vv) == 1);

  const HolonomyAlgebra t2 = build_algebra("type2:trivial:n=2");
  const SubspaceBasis inv = annihilated_subspace(vector_module(t2));
  REQUIRE(inv.dimension() == 1);
  CHECK(vector_module(t2).embed(inv.vector(0)) == SparseVector{{0, inv.vector(0)[0]}});
}

}
