#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tvb/arrangement.hpp"
#include "tvb/klyachko.hpp"

namespace tvb {

/// Integer coordinates in a ClassGroup basis.
using DivisorClass = IntVector;

/// Free abelian group with named basis elements.
struct ClassGroup {
  std::vector<std::string> basis;  // e.g. "O(1)", "D3"
  /// Class of pi^{-1}(D_j) for every ray j (empty for blowup class groups).
  std::vector<DivisorClass> ray_classes;
  Cone sigma;  // maximal cone whose rays are dropped from the basis
  /// sigma carries only zero subspaces, so E_i -> D_i is a basis map.
  bool phi_star_available = false;

  std::size_t rank() const { return basis.size(); }
  DivisorClass zero() const { return DivisorClass(basis.size(), 0); }
  DivisorClass o1() const;  // first basis element
  std::string format(const DivisorClass& c) const;
};

/// Cl(P(F)): basis O(1) plus D_i for rays outside the chosen cone, which is
/// the lexicographically first maximal cone with only zero subspaces if there
/// is one, else the first maximal cone (and phi* is flagged unavailable).
ClassGroup class_group_projectivization(const ToricVectorBundle& b);

/// Cl(Bl_S P^{r-1}) for s points: basis L, E1..Es.
ClassGroup class_group_blowup(std::size_t s);

/// Formal product of named factors with a coefficient.
struct Term {
  Rational coefficient;
  std::vector<std::pair<std::string, unsigned>> factors;
};

struct Relation {
  std::vector<Term> terms;
  std::string tag;

  std::string to_string() const;
};

struct NamedDegree {
  std::string name;
  DivisorClass degree;
  std::string meaning;
};

struct CenterInfo {
  std::size_t member;  // index into the arrangement
  std::size_t projective_dim;
  std::vector<std::size_t> rays;
  std::string symbol;  // canonical-section symbol of its exceptional divisor
};

/// Symbolic description of R(Bl_S P_F), never expanded into generators.
struct BaseDescriptor {
  Field field;
  std::size_t rank = 0;  // P_F = P^{rank-1}
  Arrangement arrangement;
  std::vector<CenterInfo> centers;      // S
  std::vector<std::size_t> doubled_hyperplanes;  // members of codim 1
  IntersectionPoset blowup_order;       // closure S' in ascending dimension
  std::vector<std::string> annotations;

  std::string name() const;  // e.g. "R(Bl_S P^2), S = 9 points"
};

struct CoxPresentation {
  ClassGroup class_group;
  BaseDescriptor base;
  std::vector<NamedDegree> generators;
  std::vector<NamedDegree> symbols;  // 1_E..., 1_H...
  std::vector<Relation> relations;
  std::vector<std::string> warnings;

  /// Number of generators that appear in no relation.
  std::size_t free_variable_count() const;
  std::string summary() const;
};

/// Requires shift-normalized filtrations and a certified-compatible bundle on
/// a smooth complete fan.
CoxPresentation cox_presentation(const ToricVectorBundle& b);

struct HomogeneityFailure {
  std::size_t relation;
  std::string detail;
};
/// Every term of every relation has the same degree; returns the failures.
std::vector<HomogeneityFailure> check_homogeneity(const CoxPresentation& p);

/// k[x_1..x_n, y_1..y_n] / (sum_i lambda_i x_i y_i : lambda in the kernel of
/// the ray matrix). With opposite rays the generic presentation is returned
/// instead, with a warning.
struct TangentCoxRing {
  bool explicit_form = true;
  CoxPresentation presentation;
  std::vector<RatVector> kernel;  // lambda vectors, one per relation
};
TangentCoxRing tangent_cox_ring(const Fan& fan, Field field = Field::rationals());

struct ReductionStep {
  std::size_t ambient_dim = 0;  // d with P^d before the step
  std::size_t points = 0;
  RatVector hyperplane;  // normal vector
  std::size_t dropped_coordinate = 0;
};

struct ReducedBase {
  std::size_t rank = 0;  // final P^{rank-1}
  std::vector<RatVector> points;
  std::vector<ReductionStep> steps;
  std::string description;  // e.g. "R(Bl_S P^2)[t1, t2]"
};

/// Rewrites R(Bl_S P^d) as R(Bl_S H)[t] while all points lie in a hyperplane
/// and d > 2. Throws when the first step is impossible.
ReducedBase hyperplane_reduction(Field field, std::size_t r, const std::vector<RatVector>& points);

enum class Verdict { MDS, NotMDS, Unknown };
std::string to_string(Verdict v);

struct Citation {
  std::string id;
  std::string statement;
};
/// Registry lookup; throws for unknown ids.
Citation citation(const std::string& id);

struct PositionFlags {
  bool general_position = false;
  bool very_general = false;  // assumed, never certified
  bool collinear = false;
  bool on_rational_normal_curve = false;
};

struct MdsResult {
  Verdict verdict = Verdict::Unknown;
  bool conditional = false;  // depends on the very-general assumption
  std::vector<std::string> citations;
  std::vector<std::string> reasons;
  std::vector<std::string> annotations;
};

/// Blowup of P^{r-1} at s distinct points with the given position data.
MdsResult mds_classify(std::size_t r, std::size_t s, const PositionFlags& flags);

/// 1/r + 1/(s-r) <= 1/2 exactly; requires r < s.
bool below_threshold(std::size_t r, std::size_t s);
/// Agreement of the rational inequality with s >= r + 2 + 4/(r-2) for all
/// 3 <= r <= r_max and r < s <= s_max.
bool threshold_identity_holds(std::size_t r_max = 64, std::size_t s_max = 200);

struct TotaroMatch {
  std::vector<std::size_t> indices;  // positions in the point list
  CubicPencilReport pencil;
};
/// A nine-point subset projectively equivalent to the reference
/// configuration, whose blowup has a non-finitely generated Cox ring.
std::optional<TotaroMatch> find_totaro_subset(Field field, const std::vector<RatVector>& points);
/// The nine reference points in P^2.
std::vector<RatVector> totaro_points();

struct MdsOptions {
  bool assume_very_general = true;
};

struct BundleMdsReport {
  MdsResult result;
  Arrangement arrangement;
  std::optional<PositionReport> position;
  std::optional<TotaroMatch> totaro;
  std::vector<ReductionStep> reductions;
  std::vector<std::size_t> reduction_subset_sizes;  // points kept at each step
};
BundleMdsReport bundle_mds_report(const ToricVectorBundle& b, const MdsOptions& opts = {});

struct KapranovReport {
  std::size_t r = 0;
  Arrangement arrangement;
  MdsResult result;
};
KapranovReport kapranov_report(std::size_t r);

/// Cotangent filtrations M_I with shift -1 on the barycentric fan.
ToricVectorBundle losev_manin_bundle(const LosevManinData& data, Field field = Field::rationals());

}  // namespace tvb
