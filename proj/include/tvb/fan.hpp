#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tvb/lattice.hpp"

namespace tvb {

/// Sorted, strictly increasing ray indices.
using Cone = std::vector<std::size_t>;

/// Simplicial rational fan given by primitive rays and maximal cones.
class Fan {
 public:
  Fan() = default;
  /// Cone index lists are sorted; no other checking (see validate_fan).
  Fan(std::size_t dim, std::vector<IntVector> rays, std::vector<Cone> max_cones);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t ray_count() const noexcept { return rays_.size(); }
  const std::vector<IntVector>& rays() const noexcept { return rays_; }
  const IntVector& ray(std::size_t i) const { return rays_.at(i); }
  const std::vector<Cone>& max_cones() const noexcept { return max_cones_; }

  /// Generators of `c` as rows.
  IntMatrix generators(const Cone& c) const;
  std::optional<std::size_t> ray_index(const IntVector& v) const;

  friend bool operator==(const Fan& a, const Fan& b) {
    return a.dim_ == b.dim_ && a.rays_ == b.rays_ && a.max_cones_ == b.max_cones_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<IntVector> rays_;
  std::vector<Cone> max_cones_;
};

struct Violation {
  std::string kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Ray primitivity/distinctness, simpliciality and face-to-face
/// intersections. Never throws for malformed fans; everything is reported.
/// Complete fans are certified by a degree-one covering argument unless
/// `pairwise_only` forces the exact pairwise LP test.
ValidationReport validate_fan(const Fan& f, bool pairwise_only = false);

/// Throws ErrorKind::Validation with the first violation.
void require_valid(const Fan& f);

struct SmoothnessResult {
  bool smooth = true;
  std::optional<Cone> witness;
};
SmoothnessResult is_smooth(const Fan& f);

/// Wall criterion: pure of dimension d, every (d-1)-face in exactly two
/// maximal cones, connected wall graph. Valid for simplicial fans only;
/// throws Unsupported when a maximal cone is not simplicial.
bool is_complete(const Fan& f);

struct ProjectivityResult {
  bool projective = false;
  /// One value per ray of a strictly convex support function.
  RatVector support;
};
/// Throws InvalidArgument for incomplete fans.
ProjectivityResult is_projective(const Fan& f);

struct ContainingCone {
  Cone cone;
  RatVector coefficients;  // aligned with `cone`
};
/// Throws InvalidArgument when v lies outside the support.
ContainingCone minimal_containing_cone(const Fan& f, const IntVector& v);

/// Stellar subdivision along v; v becomes the last ray.
Fan stellar_subdivide(const Fan& f, const IntVector& v);

/// True iff v is the sum of the generators of its minimal containing cone.
bool is_smooth_star_point(const Fan& f, const IntVector& v);

/// Rays are primitive sums over the nonempty faces of maximal cones;
/// maximal cones correspond to complete flags of faces.
Fan barycentric_subdivision(const Fan& f);

/// Embeds R^d as the last-coordinate-zero hyperplane and cones over the
/// input with (1,...,1) and with (1,...,1,-1). Requires smooth and complete.
Fan extend_fan_one_dimension(const Fan& f);

/// Fan with rays permuted: new ray k is old ray order[k].
Fan reorder_rays(const Fan& f, const std::vector<std::size_t>& order);

/// Maximal cones as sorted sets of ray vectors; independent of ray order.
std::set<std::vector<IntVector>> canonical_cones(const Fan& f);

// --- builders --------------------------------------------------------------

/// Rays e_1..e_d, -(e_1+...+e_d); maximal cones all d-subsets.
Fan projective_space_fan(std::size_t d);
/// Rays e_1, -e_1, ..., e_d, -e_d.
Fan product_p1_fan(std::size_t d);

/// P^1 x P^1 blown up successively at torus-fixed points until it has 11 rays
/// (1,0),(0,1),(1,1),(2,1),(1,2),(3,1),(3,2),(2,3),(1,3),(-1,0),(0,-1). The
/// last two rays span a maximal cone whose negative contains every other ray.
Fan p1xp1_blowup_fan();

struct SubdivisionStep {
  IntVector vector;
  ContainingCone center;
  bool smooth_star_point = false;
};

struct FanSequence {
  std::vector<Fan> fans;              // fans[0] is the starting fan
  std::vector<SubdivisionStep> steps;  // steps[i] turns fans[i] into fans[i+1]
};

/// The smooth threefold chain from P^3 (rays (0,0,1),(0,1,0),(1,1,1),
/// (-1,-2,-2)) through ten star subdivisions ending at 14 rays whose
/// cotangent arrangement contains a nine-point cubic-pencil base locus.
FanSequence cotangent_threefold_sequence();
/// The ten subdivision vectors of that chain, in order.
std::vector<IntVector> cotangent_threefold_vectors();

}  // namespace tvb
