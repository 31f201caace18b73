#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tvb/klyachko.hpp"
#include "tvb/polynomial.hpp"

namespace tvb {

/// P_{F/F_j} inside P_F. Points of P_F are hyperplanes of F, so the locus is
/// projectivized F_j^perp in dual coordinates; a hyperplane F_j gives the
/// point spanned by its normal vector.
struct ProjectiveSubspace {
  Subspace subspace;  // F_j
  Subspace locus;     // F_j^perp
  std::vector<std::size_t> rays;  // rays carrying this subspace
  std::string label;

  std::size_t projective_dim() const { return locus.dim() - 1; }
  std::size_t codim() const { return subspace.dim(); }
  /// Codimension one: a doubled hyperplane, not a blowup center.
  bool is_hyperplane() const { return codim() == 1; }
  std::size_t multiplicity() const { return rays.empty() ? 1 : rays.size(); }
};

struct Arrangement {
  Field field;
  std::size_t rank = 0;  // r; the ambient space is P^{r-1}
  std::vector<ProjectiveSubspace> members;  // pairwise distinct
  std::vector<std::size_t> zero_rays;

  bool point_only() const;
  /// Spanning vectors of the point members; throws OutOfScope otherwise.
  std::vector<RatVector> points() const;
  /// Indices of members of codimension >= 2 (the blowup centers S).
  std::vector<std::size_t> centers() const;
};

Arrangement from_bundle(const ToricVectorBundle& b);

struct PosetEntry {
  Subspace locus;
  std::size_t projective_dim = 0;
  std::optional<std::size_t> member;  // index into Arrangement::members
};

struct IntersectionPoset {
  /// Ascending dimension: the order in which strict transforms are blown up.
  std::vector<PosetEntry> entries;
  /// (i, j) with entries[i] a maximal proper sub-locus of entries[j].
  std::vector<std::pair<std::size_t, std::size_t>> covers;
};

/// Closure of the blowup centers (codim >= 2 members) under nonempty
/// intersection.
IntersectionPoset intersection_closure(const Arrangement& a);

struct PositionReport {
  std::size_t count = 0;
  bool distinct = true;
  bool general_position = true;  // every min(s, r) points independent
  std::optional<std::vector<std::size_t>> dependent_subset;
  bool collinear = false;
  bool on_rational_normal_curve = false;
  bool in_hyperplane = false;
  std::optional<RatVector> hyperplane;  // normal vector, in F coordinates
};

/// Points of P^{r-1} given by spanning vectors in k^r.
PositionReport position_report(Field field, std::size_t r, const std::vector<RatVector>& points);
/// Throws OutOfScope for arrangements with non-point members.
PositionReport position_report(const Arrangement& a);

/// Exact membership in a common rational normal curve of degree r-1. Points
/// not in linearly general position never lie on one; up to r+2 points in
/// general position always do.
bool on_rational_normal_curve(Field field, std::size_t r, const std::vector<RatVector>& points);

struct CubicPencilReport {
  std::size_t cubic_space_dim = 0;
  std::vector<Polynomial> cubics;  // a basis of the cubics through the points
  bool on_both = false;
  bool transverse = false;
  std::vector<std::size_t> non_transverse_points;
  /// Pencil whose two generators meet transversely at the nine points, which
  /// is then their whole intersection.
  bool complete_intersection = false;
};

/// Nine distinct points of P^2; characteristic 2 and 3 are rejected.
CubicPencilReport cubic_pencil_check(Field field, const std::vector<RatVector>& points);

/// Members spanned by at most r-2 of the r+1 frame points e_1..e_r, (1..1).
Arrangement kapranov_arrangement(std::size_t r, Field field = Field::rationals());

struct GeneralPoints {
  std::vector<RatVector> points;
  std::vector<std::string> verified;    // genericity conditions that hold
  std::vector<std::string> unchecked;   // conditions too large to enumerate
  std::size_t attempts = 0;
};

/// Seeded pseudo-random points, resampled until the listed conditions hold.
/// Only finitely many conditions are ever certified.
GeneralPoints very_general_points(std::size_t r, std::size_t s, std::uint64_t seed,
                                  Field field = Field::rationals());

struct LosevManinData {
  Fan fan;  // barycentric subdivision of the P^d fan
  std::vector<std::vector<std::size_t>> subsets;  // I for each ray, over v_0..v_d
  std::vector<Subspace> subspaces;                // M_I = span{v_i : i in I}^perp
};
LosevManinData losev_manin_subspaces(std::size_t d, Field field = Field::rationals());

}  // namespace tvb
