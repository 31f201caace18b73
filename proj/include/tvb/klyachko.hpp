#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tvb/fan.hpp"
#include "tvb/lattice.hpp"

namespace tvb {

/// Linear subspace of k^r stored as a reduced row echelon basis, so equal
/// subspaces have identical representations.
class Subspace {
 public:
  Subspace() = default;
  /// The zero subspace of k^r.
  Subspace(Field field, std::size_t ambient);

  static Subspace span(Field field, std::size_t ambient, const std::vector<RatVector>& rows);
  static Subspace full(Field field, std::size_t ambient);

  const Field& field() const noexcept { return field_; }
  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  bool is_zero() const noexcept { return dim() == 0; }
  bool is_full() const noexcept { return dim() == ambient_; }
  const Matrix& basis() const noexcept { return basis_; }
  std::vector<RatVector> basis_rows() const { return basis_.row_list(); }

  bool contains(const RatVector& v) const;
  bool contains(const Subspace& other) const;
  Subspace operator+(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  /// Annihilator under the standard pairing.
  Subspace perp() const;

  std::string to_string() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  Field field_;
  std::size_t ambient_ = 0;
  Matrix basis_;
};

/// F^rho(k) = F for k <= shift, `subspace` for shift < k <= shift + step, and
/// 0 beyond. `subspace` is a proper subspace (possibly zero).
struct RayFiltration {
  Subspace subspace;
  unsigned step = 1;
  long shift = 0;

  Subspace at(long k) const;
  friend bool operator==(const RayFiltration& a, const RayFiltration& b) {
    return a.subspace == b.subspace && a.step == b.step && a.shift == b.shift;
  }
};

/// A toric vector bundle whose filtrations each have at most one proper
/// subspace, one filtration per ray in the fan's ray order.
struct ToricVectorBundle {
  Fan fan;
  std::size_t rank = 0;
  Field field;
  std::vector<RayFiltration> filtrations;

  bool shift_normalized() const;
  friend bool operator==(const ToricVectorBundle& a, const ToricVectorBundle& b) {
    return a.fan == b.fan && a.rank == b.rank && a.field == b.field &&
           a.filtrations == b.filtrations;
  }
};

/// `steps` may be empty (all 1). Throws for full subspaces, wrong counts or
/// ambient mismatches.
ToricVectorBundle standard_bundle(const Fan& fan, std::size_t rank, Field field,
                                  const std::vector<Subspace>& subspaces,
                                  const std::vector<unsigned>& steps = {});

/// Sets every shift to 0: tensoring by the line bundle sum_j shift_j D_j,
/// which leaves the projectivization unchanged. Returns the removed shifts.
std::vector<long> normalize_shifts(ToricVectorBundle& b);

struct Coincidence {
  std::size_t first;
  std::size_t second;
  bool opposite_rays;  // v_first = -v_second; otherwise a characteristic effect
};

struct CotangentBundle {
  ToricVectorBundle bundle;  // shifts -1, subspaces v_j^perp in M (x) k
  std::vector<Coincidence> coincidences;
};
CotangentBundle cotangent_bundle(const Fan& fan, Field field);

/// Subspaces k*v_j in N (x) k with shift 0.
ToricVectorBundle tangent_bundle(const Fan& fan, Field field);

enum class CompatibilityTier { Surface, TransverseHyperplanes, AdaptedBasis };
std::string to_string(CompatibilityTier t);

struct ConeCertificate {
  std::size_t cone_index = 0;
  CompatibilityTier tier = CompatibilityTier::AdaptedBasis;
  std::vector<RatVector> lines;     // r spanning vectors of L_1..L_r
  std::vector<IntVector> characters;  // u_1..u_r in M
};

struct CompatibilityResult {
  bool compatible = false;
  std::vector<ConeCertificate> cones;  // all cones when compatible
  std::optional<std::size_t> failing_cone;
  std::string reason;
};

CompatibilityResult check_compatibility(const ToricVectorBundle& b);

/// Re-derives every filtration value on every cone from the certificate.
bool verify_certificate(const ToricVectorBundle& b, const ConeCertificate& c);

/// Tier (ii) criterion on its own: the distinct hyperplanes on each maximal
/// cone have linearly independent normals. Requires a hyperplane-only bundle.
bool hyperplanes_transverse(const ToricVectorBundle& b, std::size_t cone_index);

/// Adapted line decomposition of F for a family of subspaces, if one exists.
std::optional<std::vector<RatVector>> adapted_basis(Field field, std::size_t r,
                                                    const std::vector<Subspace>& family);

/// F^sigma_u: intersection of F^{rho_j}(<u, v_j>) over the rays of `cone`.
Subspace isotypical_sections(const ToricVectorBundle& b, const Cone& cone, const IntVector& u);

struct SymPowerReport {
  std::size_t dimension = 0;
  /// level_dims[j][l]: dim of Image(Sym^l F_j (x) Sym^{m-l} F) for l = 0..m.
  std::vector<std::vector<std::size_t>> level_dims;
};
SymPowerReport sym_power_dimension(const ToricVectorBundle& b, unsigned m);

struct SingleRayFans {
  std::vector<RatVector> splitting;
  std::vector<long> weights;  // n_j
  Fan total;                  // in N x R^r/(1,...,1)
  Fan quotient;               // image fan in R^r/(1,...,1)
  std::optional<std::size_t> doubled_ray;  // 1-dim subspace: ray of the doubled hyperplane
};

/// Toric model of P(F) over the affine chart of one ray, and its projection
/// to R^r/(1,...,1) with basis e_1..e_{r-1}, e_r = -(e_1+...+e_{r-1}). The
/// splitting defaults to a basis of F_rho completed by standard vectors.
SingleRayFans single_ray_projectivization_fan(
    const IntVector& ray, const RayFiltration& filtration, std::size_t r,
    const std::optional<std::vector<RatVector>>& splitting = std::nullopt);

}  // namespace tvb
