#pragma once

#include "holosym/curvature_spaces.hpp"
#include "holosym/geometry.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace holosym {

/// Largest transversal dimension accepted by the metric pipeline.
inline constexpr int kMaxGeometryN = 4;

/// H = sum (H2 u^2 + H1 u + H0)_ij x^i x^j + sum G_i(u) x^i + K(u).
struct MetricFamilyParams {
  int n = 0;
  ExactMatrix H2;
  ExactMatrix H1;
  ExactMatrix H0;
  /// Linear tail coefficients, empty or of length n; polynomials in u only.
  std::vector<Poly> G;
  std::optional<Poly> K;

  /// All three matrices zero, tails ignored.
  static MetricFamilyParams zero(int n);
};

bool is_symmetric(const ExactMatrix &m);

/// H = S_ij x^i x^j. Throws PreconditionError for S = 0 or S not symmetric.
MetricSpec make_cahen_wallach(const ExactMatrix &s);
/// Throws PreconditionError for non-symmetric matrices or tails depending on v or x.
MetricSpec make_order_k(const MetricFamilyParams &params);

/// Recovers F_ij(u) = (1/2) d_i d_j H when H is quadratic in x with
/// coefficients polynomial in u of degree at most two; nullopt otherwise.
std::optional<MetricFamilyParams> extract_family(const MetricSpec &spec);

/// Coefficients of det(t I - A), leading coefficient first.
std::vector<Rational> characteristic_polynomial(const ExactMatrix &a);

struct ResidualGroup {
  std::string name;
  /// Number of index tuples examined.
  std::size_t checked = 0;
  /// Nonzero residuals keyed by their comma-separated 1-based indices.
  std::map<std::string, Poly> nonzero;
  bool vanishes() const { return nonzero.empty(); }
};

struct ConstraintResiduals {
  std::vector<ResidualGroup> groups;
  bool all_zero() const;
};

/// Residuals whose joint vanishing is equivalent to nabla^3 R = 0 for a
/// pp-wave. Throws PreconditionError unless d_v H = 0.
ConstraintResiduals derive_h_constraints(const MetricSpec &spec);

struct CubicEliminationReport {
  /// sum_k C_kls C_ijk = 0 for all i, j, l, s.
  bool constraint_satisfied = false;
  /// Each slice M_i = (C_ijk)_jk is symmetric.
  bool slices_symmetric = false;
  /// Where the constraint holds, M_i^2 = 0 and trace(M_i^2) forces M_i = 0.
  bool squares_force_zero = false;
  bool tensor_zero = false;
  bool consistent() const { return slices_symmetric && (!constraint_satisfied || (squares_force_zero && tensor_zero)); }
};

/// C[(i*n + j)*n + k] = C_ijk, 0-based. Throws PreconditionError unless C is fully symmetric.
CubicEliminationReport cubic_elimination_report(const std::vector<Rational> &c, int n);
bool cubic_elimination_check(const std::vector<Rational> &c, int n);

enum class Check { symmetry_order, decomposition, constraints, holonomy, null_norm };

std::string to_string(Check c);
/// Throws DescriptorError for unknown names.
Check parse_check(std::string_view name);
std::vector<Check> all_checks();

struct AnalysisRequest {
  MetricSpec spec;
  std::string h_text;
  std::vector<Check> checks;
  /// Highest derivative order examined by the symmetry-order check.
  int k_max = 3;
};

struct FamilySummary {
  MetricFamilyParams params;
  std::size_t h2_rank = 0;
  std::vector<Rational> h2_charpoly;
  /// H carries terms beyond F_ij(u) x^i x^j.
  bool has_tail = false;
  /// R, nabla R, nabla^2 R agree with the tail-free normal form.
  bool normal_form_curvature_equal = false;
  /// 3, 2, 1 or 0 from the first nonzero of H2, H1, H0.
  int predicted_order = 0;
};

struct AnalysisReport {
  AnalysisRequest request;
  bool ppwave = false;
  RecurrenceForm recurrence;
  std::optional<SymmetryOrder> order;
  std::optional<PolyDecomposition> decomposition;
  /// R0, P, v and lambda vanish.
  std::optional<bool> decomposition_t_only;
  std::optional<bool> holonomy_in_pE;
  std::optional<Poly> nabla2_norm;
  std::optional<ConstraintResiduals> constraints;
  /// Residuals vanish exactly when nabla^3 R does.
  std::optional<bool> constraints_match_nabla3;
  std::optional<FamilySummary> family;
  std::map<std::string, bool> verdicts;

  bool passed() const;
};

AnalysisReport analyze(const AnalysisRequest &request);

/// Builds the metric of the family and runs every check.
AnalysisReport verify_theorem_main(const MetricFamilyParams &params);

} // namespace holosym
