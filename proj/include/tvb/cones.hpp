#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tvb/coxring.hpp"

namespace tvb {

/// Element of Sym^m F as dense coefficients in the monomials_of_degree order.
struct HomogeneousForm {
  Field field;
  std::size_t rank = 0;  // number of variables r
  unsigned degree = 0;
  RatVector coefficients;

  static HomogeneousForm from_polynomial(const Polynomial& p);
  Polynomial polynomial() const;
  bool is_zero() const;
};

/// Blowup classes L, E_1..E_s are matched with O(1) and D_j for the nonzero
/// rays j in ray order.
struct PhiStar {
  ClassGroup source;  // class_group_blowup(s)
  ClassGroup target;  // class_group_projectivization
  std::vector<std::size_t> exceptional_rays;  // ray of E_i
  bool isomorphism = false;  // equal ranks, so the relabeling is bijective

  DivisorClass operator()(const DivisorClass& c) const;
};

/// Throws OutOfScope without an all-zero maximal cone or when two rays
/// share a subspace.
PhiStar phi_star(const ToricVectorBundle& b);

/// Vanishing order of h at the point p of P^{r-1}.
unsigned multiplicity_at(const HomogeneousForm& h, const RatVector& p);

/// m [O(1)] - sum_i m_i [D_i] over the nonzero rays, m_i the multiplicity of
/// {h = 0} at the point of ray i. Refuses non-point centers.
DivisorClass orbit_closure_class(const HomogeneousForm& h, const ToricVectorBundle& b);

struct TaggedClass {
  DivisorClass cls;
  std::string provenance;
};

/// phi* of the supplied classes on Bl_S P_F plus [D_i] for zero F_i,
/// deduplicated in first-seen order.
std::vector<TaggedClass> effective_generators(const ToricVectorBundle& b,
                                              const std::vector<DivisorClass>& supplied);

/// (d; m_1..m_s), standing for d L - sum m_i E_i.
struct CurveClass {
  Integer degree;
  std::vector<Integer> multiplicities;

  bool is_minus_one_class() const;  // d^2 - sum m^2 = -1 and 3d - sum m = 1
  /// Multiplicities sorted in decreasing order.
  CurveClass canonical() const;
  std::string to_string() const;

  friend bool operator==(const CurveClass& a, const CurveClass& b) {
    return a.degree == b.degree && a.multiplicities == b.multiplicities;
  }
  friend bool operator<(const CurveClass& a, const CurveClass& b);
};

/// Quadratic Cremona move centered at the three given positions.
CurveClass cremona(const CurveClass& c, std::size_t i, std::size_t j, std::size_t k);

struct EnumerationBudget {
  std::size_t max_depth = 5;
  std::optional<long> max_degree;  // classes above it are discarded
  std::size_t max_count = 100000;
};

struct MinusOneEnumeration {
  std::vector<CurveClass> classes;  // canonical forms in discovery order
  std::vector<std::size_t> level_sizes;
  std::vector<Integer> level_max_degree;
  bool truncated = false;  // stopped by max_count
  Integer with_permutations = 0;  // classes counted before sorting
};

/// Breadth-first closure of {E_i} and {L - E_i - E_j} under Cremona moves.
MinusOneEnumeration minus_one_classes(std::size_t s, const EnumerationBudget& budget = {});

struct NonpolyhedralityReport {
  bool fan_hypothesis = false;  // every ray in sigma or -sigma
  std::vector<std::size_t> rays_outside;
  std::optional<Rational> threshold_sum;  // 1/r + 1/(n-d-r), when n-d-r > 0
  bool threshold_ok = false;
  bool general_position = false;
  bool hypotheses_met = false;
  bool conditional = true;  // on very-generality of the points
  std::optional<MinusOneEnumeration> enumeration;
  std::vector<DivisorClass> images;  // phi* of the enumerated classes
  std::vector<std::string> notes;
};

NonpolyhedralityReport nonpolyhedrality_report(const ToricVectorBundle& b,
                                               const EnumerationBudget& budget = {});

}  // namespace tvb
