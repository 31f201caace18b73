#pragma once

// Dense two-phase simplex over the rationals with Bland's rule. Intended for
// desk-scale feasibility problems where exactness matters more than speed.

#include <cstddef>
#include <vector>

#include "tvb/lattice.hpp"

namespace tvb::lp {

struct Problem {
  std::size_t num_vars = 0;
  /// Rows a with a . x <= b.
  std::vector<RatVector> le_rows;
  RatVector le_rhs;
  /// Rows a with a . x == b.
  std::vector<RatVector> eq_rows;
  RatVector eq_rhs;
  /// Maximized.
  RatVector objective;
  /// Variables without a sign constraint; all others are >= 0.
  std::vector<bool> free;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  Rational value;
  RatVector x;
};

Solution maximize(const Problem& problem);

/// True iff the equality/inequality system has a solution.
bool feasible(const Problem& problem);

}  // namespace tvb::lp
