#pragma once

#include "holosym/frame.hpp"
#include "holosym/poly.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace holosym {

/// Metric g = 2 dv du + sum (dx^i)^2 + H du^2 in coordinates (v, x^1..x^n, u).
/// Coordinate index mu matches the polynomial variable index.
struct MetricSpec {
  int n = 0;
  Poly H;

  MetricSpec() = default;
  MetricSpec(int n, Poly h);
  static MetricSpec parse(int n, std::string_view h);

  std::size_t var_v() const { return 0; }
  std::size_t var_x(int i) const { return static_cast<std::size_t>(i); }
  std::size_t var_u() const { return static_cast<std::size_t>(n) + 1; }
  std::size_t variable_count() const { return static_cast<std::size_t>(n) + 2; }
  Poly zero() const { return Poly(variable_count()); }

  bool is_ppwave() const { return H.derivative(var_v()).is_zero(); }
};

/// Levi-Civita symbols Gamma^a_{bc} in coordinates.
class ChristoffelTable {
public:
  ChristoffelTable() = default;
  ChristoffelTable(int n, std::vector<Poly> entries) : n_(n), g_(std::move(entries)) {}

  int n() const { return n_; }
  const Poly &operator()(std::size_t a, std::size_t b, std::size_t c) const {
    const std::size_t d = frame_dim(n_);
    return g_[(a * d + b) * d + c];
  }
  /// Coordinate triples (a,b,c) with a nonzero symbol.
  std::vector<std::array<std::size_t, 3>> support() const;

private:
  int n_ = 0;
  std::vector<Poly> g_;
};

/// Coordinate metric g_{mu nu} and its inverse, both polynomial.
std::vector<Poly> coordinate_metric(const MetricSpec &spec);
std::vector<Poly> inverse_coordinate_metric(const MetricSpec &spec);

ChristoffelTable christoffel(const MetricSpec &spec);
/// Exact check of nabla g = 0 in coordinates.
bool metricity_holds(const MetricSpec &spec, const ChristoffelTable &gamma);

/// p = d_v, e_i = d_i, q = d_u - H/2 d_v and the inverse change of basis.
struct FrameFields {
  int n = 0;
  /// frame[a * N + mu]: coordinate component mu of frame vector f_a.
  std::vector<Poly> frame;
  /// coframe[mu * N + a]: frame component a of the coordinate vector d_mu.
  std::vector<Poly> coframe;

  const Poly &vector(std::size_t a, std::size_t mu) const { return frame[a * frame_dim(n) + mu]; }
  const Poly &inverse(std::size_t mu, std::size_t a) const { return coframe[mu * frame_dim(n) + a]; }
  /// g(f_a, f_b) evaluated through the coordinate metric.
  Poly frame_metric(const MetricSpec &spec, std::size_t a, std::size_t b) const;
};

FrameFields frame_fields(const MetricSpec &spec);

/// Contravariant frame components of the curvature.
///
/// frame(a,b,c,d) = 2 g(R(f_A,f_B)f_C,f_D) with A the dual index of a and so on,
/// where R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]. The factor two makes a
/// pp-wave curvature equal (1/2) sum H_ij (p^e_i)(.)(p^e_j) entry by entry.
struct CurvatureField {
  PolyTensor frame;
  /// coordinate[((r*N+s)*N+m)*N+w] = g(R(d_m,d_w)d_s, d_r).
  std::vector<Poly> coordinate;
};

/// Metric, connection and curvature data of one spec, precomputed.
/// Immutable after construction.
class Spacetime {
public:
  explicit Spacetime(MetricSpec spec);

  const MetricSpec &spec() const { return spec_; }
  int n() const { return spec_.n; }
  const ChristoffelTable &christoffel() const { return gamma_; }
  const FrameFields &frame() const { return frame_; }
  const CurvatureField &curvature() const { return curvature_; }

  /// nabla_{f_a} f_b = sum_c connection(a,b,c) f_c.
  const Poly &connection(std::size_t a, std::size_t b, std::size_t c) const;
  /// Frame derivation f_a(phi).
  Poly derive(std::size_t a, const Poly &phi) const;

  /// nabla T with the new (direction) slot first, raised with the metric.
  /// Output entries are computed in parallel.
  PolyTensor covariant_derivative(const PolyTensor &t) const;
  /// Serial reference implementation by scattering input entries.
  PolyTensor covariant_derivative_serial(const PolyTensor &t) const;

  /// nabla^k R.
  PolyTensor nabla_k(int k) const;

  /// R(f_a, f_b) as a rank-2 polynomial bivector.
  PolyTensor curvature_operator(std::size_t a, std::size_t b) const;

private:
  struct Entry {
    std::size_t index;
    Poly value;
  };

  MetricSpec spec_;
  ChristoffelTable gamma_;
  FrameFields frame_;
  std::vector<Poly> conn_;
  // conn_lists_[d * N + a]: pairs (c, Gamma^a_{dc}) with nonzero value.
  std::vector<std::vector<Entry>> conn_lists_;
  // frame_lists_[a]: pairs (mu, F_a^mu) with nonzero value.
  std::vector<std::vector<Entry>> frame_lists_;
  CurvatureField curvature_;
};

CurvatureField riemann(const MetricSpec &spec);
PolyTensor covariant_derivative(const PolyTensor &t, const MetricSpec &spec);
PolyTensor nabla_k(const MetricSpec &spec, int k);

/// Derivation action of a rank-2 polynomial bivector on a contravariant tensor.
PolyTensor poly_lie_action(const PolyTensor &bivector, const PolyTensor &t);

/// Full contraction g(T,T) with the frame metric.
Poly metric_norm(const PolyTensor &t);

struct SymmetryOrder {
  /// Smallest k with nabla^k R = 0; flat metrics give 0.
  std::optional<int> order;
  bool exceeds() const { return !order.has_value(); }
};

SymmetryOrder symmetry_order(const MetricSpec &spec, int k_max);
SymmetryOrder symmetry_order(const Spacetime &st, int k_max);

struct ClosedForms {
  PolyTensor R;
  PolyTensor nablaR;
  PolyTensor nabla2R;
};

/// R, nabla R, nabla^2 R of a pp-wave assembled from partial derivatives of H.
/// Throws PreconditionError unless d_v H = 0.
ClosedForms closed_form_oracles(const MetricSpec &spec);

struct RecurrenceForm {
  /// theta = theta_u du with theta_u = (1/2) d_v H.
  Poly theta_u;
  /// theta = 0, i.e. nabla p = 0.
  bool p_parallel = false;
  /// d_v^2 H = d_i d_v H = 0: some function multiple of p is parallel.
  bool parallelizable = false;
  /// nabla p computed through the connection agrees with theta (x) p.
  bool recurrence_verified = false;
};

RecurrenceForm recurrence_form(const MetricSpec &spec);

/// nabla^2_{f_a;f_b} R - nabla^2_{f_b;f_a} R - R(f_a,f_b).R, which must vanish.
PolyTensor ricci_identity_check(const MetricSpec &spec, std::size_t a, std::size_t b);
/// Same residual from a precomputed nabla^2 R.
PolyTensor ricci_identity_residual(const Spacetime &st, const PolyTensor &nabla2R, std::size_t a, std::size_t b);
/// The two sides of the identity separately: (commutator, action).
std::pair<PolyTensor, PolyTensor> ricci_identity_sides(const Spacetime &st, const PolyTensor &nabla2R, std::size_t a,
                                                       std::size_t b);

/// Antisymmetry in both pairs, pair exchange and the cyclic identity on the first three slots.
bool curvature_symmetries_hold(const PolyTensor &r);
/// Cyclic sum over the direction slot and the first curvature pair of nabla R.
bool second_bianchi_holds(const PolyTensor &nablaR);
/// Every curvature value R(f_a, f_b) lies in the span of p^e_i.
bool curvature_in_p_wedge_E(const Spacetime &st);
/// nabla of the metric tensor vanishes in the frame.
bool frame_metricity_holds(const Spacetime &st);

} // namespace holosym
