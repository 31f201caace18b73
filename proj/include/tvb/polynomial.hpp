#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tvb/lattice.hpp"

namespace tvb {

using Exponent = std::vector<unsigned>;

/// Exponent vectors of total degree `degree` in `nvars` variables, in
/// descending lexicographic order (z1^m first).
std::vector<Exponent> monomials_of_degree(std::size_t nvars, unsigned degree);

/// binom(n + k - 1, k): number of monomials of degree k in n variables.
std::size_t monomial_count(std::size_t nvars, unsigned degree);

/// Sparse multivariate polynomial over a Field.
class Polynomial {
 public:
  Polynomial(Field field, std::size_t nvars) : field_(field), nvars_(nvars) {}

  static Polynomial constant(Field field, std::size_t nvars, const Rational& c);
  static Polynomial variable(Field field, std::size_t nvars, std::size_t index);
  static Polynomial monomial(Field field, const Exponent& e, const Rational& c);
  /// Linear form sum_i coeffs[i] * z_i.
  static Polynomial linear_form(Field field, const RatVector& coeffs);
  /// Homogeneous form from dense coefficients in the monomials_of_degree order.
  static Polynomial from_dense(Field field, std::size_t nvars, unsigned degree,
                               const RatVector& coeffs);

  const Field& field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const std::map<Exponent, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Rational coefficient(const Exponent& e) const;
  /// Highest total degree; -1 for the zero polynomial.
  int total_degree() const;
  /// Lowest total degree of a nonzero term; -1 for the zero polynomial.
  int lowest_degree() const;
  bool is_homogeneous() const;

  RatVector dense(unsigned degree) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Rational& c) const;
  Polynomial pow(unsigned k) const;

  Rational evaluate(const RatVector& point) const;
  Polynomial derivative(std::size_t var) const;
  /// p(T z), i.e. z_i -> sum_j T(i, j) z_j.
  Polynomial linear_substitution(const Matrix& t) const;
  /// Substitute z_var = value and drop that variable's exponent (it becomes 0).
  Polynomial specialize(std::size_t var, const Rational& value) const;

  std::string to_string(const std::vector<std::string>& names) const;
  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  void add_term(const Exponent& e, const Rational& c);

  Field field_;
  std::size_t nvars_;
  std::map<Exponent, Rational> terms_;
};

/// Parses a plain polynomial such as "z1^2*z3 - 3/2 z2 z3 + 4". Variables are
/// z1..z<nvars>; products are written with '*' or juxtaposition.
Polynomial parse_polynomial(const std::string& text, Field field, std::size_t nvars);

}  // namespace tvb
