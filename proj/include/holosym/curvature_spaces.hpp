#pragma once

#include "holosym/frame.hpp"
#include "holosym/holonomy.hpp"

#include <string>
#include <vector>

namespace holosym {

/// Algebraic curvature tensors with values in g, as rank-4 tensors over V.
/// An element X satisfies g(R(u,v)w, z) = X^{abcd} u_a v_b w_c z_d.
SubspaceBasis space_R(const HolonomyAlgebra &g);

/// P in E* (x) h with the cyclic condition, as rank-3 tensors Q^{kcd} = g(P(e_k)e_c, e_d).
SubspaceBasis space_P(const OrthogonalPart &h);

/// Algebraic covariant derivatives of curvature tensors.
struct NablaRSpace {
  int n = 0;
  /// Basis of R(g) in rank-4 tensor coordinates.
  SubspaceBasis R;
  /// Basis inside V (x) R(g): coordinate e * dim R + beta multiplies e_e (x) R_beta.
  SubspaceBasis coords;

  std::size_t dimension() const { return coords.dimension(); }
  /// Element i as a rank-5 tensor, direction slot first.
  SparseVector tensor(std::size_t i) const;
  SparseVector tensor_of(std::span<const Rational> coordinates) const;
};

NablaRSpace space_nablaR(const HolonomyAlgebra &g);

/// Components R0^{ijkl}, P^{ijk}, T^{ij}, v^i, lambda of a curvature tensor of
/// type sim(n), with 1-based e-indices in the accessors.
template <typename S> struct CurvatureDecomposition {
  int n = 0;
  std::vector<S> r0; // n^4
  std::vector<S> p;  // n^3
  std::vector<S> t;  // n^2
  std::vector<S> v;  // n
  S lambda{};

  const S &R0(int i, int j, int k, int l) const { return r0[flat(i, j, k, l)]; }
  const S &P(int i, int j, int k) const { return p[flat(i, j, k)]; }
  const S &T(int i, int j) const { return t[flat(i, j)]; }
  const S &V(int i) const { return v[static_cast<std::size_t>(i - 1)]; }

  template <typename... I> std::size_t flat(I... idx) const {
    std::size_t f = 0;
    ((f = f * static_cast<std::size_t>(n) + static_cast<std::size_t>(idx - 1)), ...);
    return f;
  }
};

using RationalDecomposition = CurvatureDecomposition<Rational>;
using PolyDecomposition = CurvatureDecomposition<Poly>;

/// Reads the components off the frame entries; throws PreconditionError if the
/// input lacks the curvature symmetries and StructuralError if it is not of type sim(n).
RationalDecomposition decompose(const RationalTensor &r);
PolyDecomposition decompose(const PolyTensor &r);
RationalTensor reassemble(const RationalDecomposition &d);
PolyTensor reassemble(const PolyDecomposition &d);

/// The R0 piece of a decomposition as a rank-4 tensor.
RationalTensor r0_tensor(const RationalDecomposition &d);

struct RelationCheck {
  std::string name;
  bool holds = false;
  /// Number of index tuples where the relation fails.
  std::size_t violations = 0;
};

struct ThnabrReport {
  std::vector<RelationCheck> relations;
  /// Consequences of the cyclic identity that are not part of the relation list.
  std::vector<RelationCheck> supplementary;
  bool passed() const {
    for (const auto &r : relations) {
      if (!r.holds) {
        return false;
      }
    }
    return true;
  }
};

/// Verifies the structure relations of nabla R for g = Rp^q + h + p^E on
/// elements S = p(x)R^p + e_t(x)R^t + q(x)R^q given as rank-5 tensors.
class ThnabrChecker {
public:
  explicit ThnabrChecker(const HolonomyAlgebra &g);
  ThnabrReport check(const SparseVector &s) const;

private:
  int n_;
  NablaRSpace h_space_;
  SubspaceBasis h_tensors_;
};

ThnabrReport check_thnabr(const SparseVector &s, const HolonomyAlgebra &g);

/// dim Hom_g(V, target).
std::size_t equivariant_multiplicity(const HolonomyAlgebra &g, const Module &target);

/// The modules R(g), nabla R(g) and V (x) nabla R(g).
Module curvature_module(const HolonomyAlgebra &g, const SubspaceBasis &r_space);
Module nablaR_module(const HolonomyAlgebra &g, const NablaRSpace &space);

struct InvariantReport {
  SubspaceBasis kernel;
  /// Gram matrix of the metric pairing on the annihilated elements.
  ExactMatrix gram;
  bool nondegenerate = false;
  std::size_t dimension() const { return kernel.dimension(); }
};

/// Annihilated subspace of a module, with the induced metric pairing.
InvariantReport invariant_vectors(const HolonomyAlgebra &g, const Module &m);

/// Full metric pairing of two rank-r tensors: sum_A x^A y^{dual(A)}.
Rational tensor_pairing(const SparseVector &x, const SparseVector &y, int n, int rank);

} // namespace holosym
