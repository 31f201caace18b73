#include "tvb/exact_lp.hpp"

#include <optional>

namespace tvb::lp {

namespace {

// Tableau over standard-form columns. Row 0..m-1 are constraints, the last
// column is the right-hand side.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows, RatVector(cols + 1)), basis_(rows) {}

  Rational& at(std::size_t i, std::size_t j) { return a_[i][j]; }
  Rational& rhs(std::size_t i) { return a_[i][cols_]; }
  std::size_t& basic(std::size_t i) { return basis_[i]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = a_[r][c];
    for (auto& x : a_[r]) x /= p;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || sgn(a_[i][c]) == 0) continue;
      const Rational f = a_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (sgn(a_[r][j]) != 0) a_[i][j] -= f * a_[r][j];
    }
    basis_[r] = c;
  }

  /// Maximizes cost . x over columns with allowed[j]. Bland's rule.
  Status optimize(const RatVector& cost, const std::vector<bool>& allowed) {
    for (;;) {
      // reduced cost: c_j - c_B B^-1 A_j
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < cols_ && !entering; ++j) {
        if (!allowed[j]) continue;
        Rational reduced = cost[j];
        for (std::size_t i = 0; i < rows_; ++i)
          if (sgn(a_[i][j]) != 0) reduced -= cost[basis_[i]] * a_[i][j];
        if (sgn(reduced) > 0) entering = j;
      }
      if (!entering) return Status::Optimal;
      const std::size_t c = *entering;
      std::optional<std::size_t> leaving;
      Rational best;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (sgn(a_[i][c]) <= 0) continue;
        const Rational ratio = a_[i][cols_] / a_[i][c];
        if (!leaving || ratio < best || (ratio == best && basis_[i] < basis_[*leaving])) {
          leaving = i;
          best = ratio;
        }
      }
      if (!leaving) return Status::Unbounded;
      pivot(*leaving, c);
    }
  }

  Rational value(const RatVector& cost) {
    Rational v = 0;
    for (std::size_t i = 0; i < rows_; ++i) v += cost[basis_[i]] * a_[i][cols_];
    return v;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<RatVector> a_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Solution maximize(const Problem& pr) {
  const std::size_t n = pr.num_vars;
  require(pr.le_rows.size() == pr.le_rhs.size() && pr.eq_rows.size() == pr.eq_rhs.size(),
          ErrorKind::InvalidArgument, "LP right-hand side size mismatch");
  std::vector<bool> is_free = pr.free;
  is_free.resize(n, false);
  RatVector objective = pr.objective;
  objective.resize(n, 0);

  // Standard-form columns: x+ for each var, x- for free vars, slack per <= row,
  // artificial per row that cannot start with its slack basic.
  std::vector<std::size_t> neg_col(n, 0);
  std::size_t col = n;
  for (std::size_t j = 0; j < n; ++j)
    if (is_free[j]) neg_col[j] = col++;
  const std::size_t slack_begin = col;
  col += pr.le_rows.size();
  const std::size_t m = pr.le_rows.size() + pr.eq_rows.size();

  struct RowSpec {
    const RatVector* a;
    Rational b;
    std::optional<std::size_t> slack;
  };
  std::vector<RowSpec> specs;
  for (std::size_t i = 0; i < pr.le_rows.size(); ++i)
    specs.push_back({&pr.le_rows[i], pr.le_rhs[i], slack_begin + i});
  for (std::size_t i = 0; i < pr.eq_rows.size(); ++i)
    specs.push_back({&pr.eq_rows[i], pr.eq_rhs[i], std::nullopt});

  std::vector<std::size_t> needs_artificial;
  for (std::size_t i = 0; i < m; ++i)
    if (!specs[i].slack || sgn(specs[i].b) < 0) needs_artificial.push_back(i);
  const std::size_t art_begin = col;
  const std::size_t total = col + needs_artificial.size();

  Tableau t(m, total);
  for (std::size_t i = 0; i < m; ++i) {
    const RatVector& a = *specs[i].a;
    require(a.size() == n, ErrorKind::InvalidArgument, "LP row has wrong length");
    const int s = sgn(specs[i].b) < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) {
      t.at(i, j) = s * a[j];
      if (is_free[j]) t.at(i, neg_col[j]) = -s * a[j];
    }
    if (specs[i].slack) t.at(i, *specs[i].slack) = s;
    t.rhs(i) = s * specs[i].b;
  }
  for (std::size_t k = 0; k < needs_artificial.size(); ++k) {
    const std::size_t i = needs_artificial[k];
    t.at(i, art_begin + k) = 1;
    t.basic(i) = art_begin + k;
  }
  for (std::size_t i = 0; i < m; ++i)
    if (specs[i].slack && sgn(specs[i].b) >= 0) t.basic(i) = *specs[i].slack;

  std::vector<bool> all(total, true);
  if (!needs_artificial.empty()) {
    RatVector phase1(total, 0);
    for (std::size_t k = 0; k < needs_artificial.size(); ++k) phase1[art_begin + k] = -1;
    t.optimize(phase1, all);
    if (sgn(t.value(phase1)) != 0) return Solution{Status::Infeasible, 0, {}};
    // Drive remaining artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basic(i) < art_begin) continue;
      for (std::size_t j = 0; j < art_begin; ++j)
        if (sgn(t.at(i, j)) != 0) {
          t.pivot(i, j);
          break;
        }
    }
  }

  RatVector cost(total, 0);
  for (std::size_t j = 0; j < n; ++j) {
    cost[j] = objective[j];
    if (is_free[j]) cost[neg_col[j]] = -objective[j];
  }
  std::vector<bool> allowed(total, true);
  for (std::size_t j = art_begin; j < total; ++j) allowed[j] = false;
  const Status status = t.optimize(cost, allowed);

  Solution sol;
  sol.status = status;
  RatVector full(total, 0);
  for (std::size_t i = 0; i < m; ++i) full[t.basic(i)] = t.rhs(i);
  sol.x.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    sol.x[j] = full[j];
    if (is_free[j]) sol.x[j] -= full[neg_col[j]];
  }
  sol.value = 0;
  for (std::size_t j = 0; j < n; ++j) sol.value += objective[j] * sol.x[j];
  return sol;
}

bool feasible(const Problem& problem) {
  Problem p = problem;
  p.objective.assign(p.num_vars, 0);
  return maximize(p).status != Status::Infeasible;
}

}  // namespace tvb::lp
