#pragma once

#include "holosym/frame.hpp"
#include "holosym/linalg.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace holosym {

/// Largest transversal dimension accepted by algebra and space computations.
inline constexpr int kMaxAlgebraN = 4;

enum class OrthogonalKind { trivial, so, u };

/// Subalgebra h of so(E). so(k) acts on e_1..e_k and u(m) on e_1..e_2m; the
/// remaining coordinates form the trivial block E0.
struct OrthogonalPart {
  OrthogonalKind kind = OrthogonalKind::trivial;
  int n = 0;
  /// k for so(k), m for u(m), 0 for trivial.
  int size = 0;
  std::vector<Bivector> basis;
  /// Block sizes (E0, E1, ...).
  std::vector<int> blocks;

  static OrthogonalPart trivial(int n);
  static OrthogonalPart special_orthogonal(int n, int k);
  static OrthogonalPart unitary(int n, int m);
  /// "trivial", "so(k)" or "u(m)".
  static OrthogonalPart parse(std::string_view text, int n);

  std::string name() const;
  std::size_t dimension() const { return basis.size(); }
  /// Dimension of the block the algebra acts on.
  int acting_dimension() const;
};

enum class HolonomyType { full, sim, type1, type2, type3, type4, custom };

std::string to_string(HolonomyType t);

struct HolonomyAlgebra {
  int n = 0;
  HolonomyType type = HolonomyType::custom;
  OrthogonalPart h;
  /// Type 3: the algebra contains p^q + cJ.
  Rational c = 0;
  /// Type 4: psi(A) for each basis element A of h, valued in E2 = R e_n.
  std::vector<FrameVector> psi;
  std::vector<Bivector> basis;
  std::string descriptor;

  std::size_t dimension() const { return basis.size(); }
  /// A subset of the basis whose Lie closure is the whole algebra.
  std::vector<Bivector> generators() const;
  bool contains(const Bivector &b) const;
  /// Span of the basis in packed bivector coordinates.
  SubspaceBasis span() const;
};

/// Parses e.g. "full:n=2", "sim:n=3", "type1:so(2):n=2", "type2:trivial:n=3",
/// "type3:u(1):n=2:c=1", "type4:so(2):n=3". Closure is verified.
/// Throws DescriptorError, or SizeCapError beyond n = 4.
HolonomyAlgebra build_algebra(std::string_view descriptor);
HolonomyAlgebra build_algebra(HolonomyType type, const OrthogonalPart &h, const Rational &c = 1);
/// Algebra with an arbitrary basis; closure is verified.
HolonomyAlgebra algebra_from_basis(int n, std::vector<Bivector> basis, std::string label);
/// h viewed as a subalgebra of so(V).
HolonomyAlgebra orthogonal_algebra(const OrthogonalPart &h);

bool is_closed(const std::vector<Bivector> &basis);
/// Smallest bracket-closed span containing the given elements (basis in RREF).
std::vector<Bivector> lie_closure(int n, const std::vector<Bivector> &elements);
/// Projection of a bivector onto so(E).
Bivector orthogonal_projection(const Bivector &b);

/// Derivation action on a sparse tensor of the given rank.
SparseVector sparse_lie_action(const Bivector &xi, const SparseVector &t, int n, int rank);

/// Sparse matrix stored as a fixed number of rows (empty rows kept).
using SparseRows = std::vector<SparseVector>;

/// Finite-dimensional g-module with a fixed basis.
///
/// rho[i] is the matrix of the i-th generator of the algebra (row = output
/// coordinate). embedding[j] is basis vector j written as a contravariant
/// tensor of the given rank over V.
struct Module {
  int n = 0;
  int rank = 0;
  std::size_t dim = 0;
  std::vector<SparseRows> rho;
  std::vector<SparseVector> embedding;
  std::string label;

  SparseVector embed(std::span<const Rational> coords) const;
};

Module vector_module(const HolonomyAlgebra &g);
/// Invariant subspace of rank-r tensors over V; invariance is verified.
Module tensor_module(const HolonomyAlgebra &g, int rank, const SubspaceBasis &tensors, std::string label);
/// Same, acting through a generator list instead of a whole algebra.
Module tensor_module(const std::vector<Bivector> &generators, int n, int rank, const SubspaceBasis &tensors,
                     std::string label);
/// Tensor product A (x) B with rho = rho_A (x) 1 + 1 (x) rho_B.
Module tensor_product(const Module &a, const Module &b);
/// Submodule spanned by vectors given in module coordinates; invariance is verified.
Module submodule(const Module &m, const SubspaceBasis &coords, std::string label);
/// Submodule spanned by a subset of the module basis; invariance is verified.
Module coordinate_submodule(const Module &m, const std::vector<std::size_t> &coords, std::string label);

/// Elements killed by every generator, in module coordinates.
SubspaceBasis annihilated_subspace(const Module &m);
/// Dimension of the space of equivariant linear maps source -> target.
std::size_t hom_dimension(const Module &source, const Module &target);

enum class ModuleKind {
  /// V (x) nabla R(g)
  v_nablaR,
  /// (Rp + E) (x) nabla R(g)
  pe_nablaR,
  /// second symmetric power of E under the orthogonal part
  sym2E,
  /// third symmetric power of E under the orthogonal part
  sym3E,
};

struct AnnihilatorResult {
  Module module;
  /// Annihilated subspace in module coordinates.
  SubspaceBasis kernel;
  /// The same elements as tensors over V.
  std::vector<SparseVector> tensors;

  std::size_t dimension() const { return kernel.dimension(); }
};

AnnihilatorResult annihilator(const HolonomyAlgebra &g, ModuleKind kind);
/// Caller-supplied invariant subspace of rank-r tensors.
AnnihilatorResult annihilator(const HolonomyAlgebra &g, int rank, const SubspaceBasis &tensors);

/// h-invariant elements of the symmetric power of E of the given degree, as tensors over V.
SubspaceBasis invariant_symmetric_tensors(const OrthogonalPart &h, int degree);

struct Lt2Report {
  bool annihilated = false;
  /// Components outside the slots p(x)p, p(x)e_k, e_k(x)p vanish and each slot
  /// carries a combination of (p^e_i)(.)(p^e_j).
  bool normal_form = false;
  /// The e_k(x)p coefficients are minus the p(x)e_k ones.
  bool antisymmetric_pair = false;
  bool t2_symmetric = false;
  bool t3_symmetric = false;
  bool h_invariant = false;
  /// T2[i*n + j] = T^{pij}; T3[(k*n + i)*n + j] = T^{pkij} (0-based e-indices).
  std::vector<Rational> t2;
  std::vector<Rational> t3;

  bool passed() const {
    return annihilated && normal_form && antisymmetric_pair && t2_symmetric && t3_symmetric && h_invariant;
  }
};

/// Checks a rank-6 tensor S in (Rp + E) (x) nabla R(g) against the normal form
/// S = (T^{pij} p(x)p + T^{pkij} (p(x)e_k - e_k(x)p)) (x) (p^e_i)(.)(p^e_j).
Lt2Report lt2_normal_form_check(const SparseVector &s, const HolonomyAlgebra &g);

} // namespace holosym
