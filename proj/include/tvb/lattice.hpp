#pragma once

// Exact linear algebra over the rationals and prime fields.
//
// Every entry is an arbitrary-precision rational. Over F_p the stored
// representative is an integer in [0, p), so structural equality of
// matrices is equality of the underlying field elements.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tvb/error.hpp"

namespace tvb {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;
using RatVector = std::vector<Rational>;

/// Ground field: characteristic zero (the rationals) or a prime field.
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field(); }
  /// Throws InvalidArgument unless p is prime.
  static Field prime(std::uint64_t p);
  /// 0 selects the rationals, anything else must be prime.
  static Field of_characteristic(std::uint64_t p);

  std::uint64_t characteristic() const noexcept { return p_; }
  bool is_rational() const noexcept { return p_ == 0; }

  /// Explicit conversion of a rational into this field. Over F_p this
  /// fails when the denominator is divisible by p.
  Rational from_rational(const Rational& q) const;
  Rational from_integer(const Integer& z) const;

  Rational add(const Rational& a, const Rational& b) const;
  Rational sub(const Rational& a, const Rational& b) const;
  Rational mul(const Rational& a, const Rational& b) const;
  Rational neg(const Rational& a) const;
  Rational inv(const Rational& a) const;
  Rational div(const Rational& a, const Rational& b) const {
    return mul(a, inv(b));
  }

  std::string name() const;

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }
  friend bool operator!=(const Field& a, const Field& b) { return a.p_ != b.p_; }

 private:
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_ = 0;
};

void require_same_field(const Field& a, const Field& b);

/// A field element tagged with its field; arithmetic across fields throws.
class Scalar {
 public:
  Scalar() = default;
  Scalar(Field field, const Rational& value)
      : field_(field), value_(field.from_rational(value)) {}

  const Field& field() const noexcept { return field_; }
  const Rational& value() const noexcept { return value_; }
  bool is_zero() const { return sgn(value_) == 0; }

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

  std::string to_string() const { return value_.get_str(); }

 private:
  Field field_;
  Rational value_;
};

/// Dense row-major matrix over a Field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field field, std::size_t rows, std::size_t cols);

  /// Entries are converted into the field. `cols` is required when `rows`
  /// is empty.
  static Matrix from_rows(Field field, const std::vector<RatVector>& rows,
                          std::size_t cols);
  static Matrix from_rows(Field field, const std::vector<RatVector>& rows);
  static Matrix from_integer_rows(Field field, const IntMatrix& rows,
                                  std::size_t cols);
  static Matrix identity(Field field, std::size_t n);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  Rational& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  Scalar at(std::size_t i, std::size_t j) const {
    return Scalar(field_, (*this)(i, j));
  }

  RatVector row(std::size_t i) const;
  std::vector<RatVector> row_list() const;
  Matrix transpose() const;
  /// Rows of `this` followed by rows of `other`.
  Matrix stacked(const Matrix& other) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.data_ == b.data_;
  }

  std::string to_string() const;

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

std::size_t rank(const Matrix& m);

/// Right kernel in reduced row echelon form (one vector per row); empty when
/// the map is injective.
std::vector<RatVector> kernel_basis(const Matrix& m);

/// Fraction-free (Bareiss) over Q, Gaussian elimination over F_p.
Scalar determinant(const Matrix& m);

/// Reduced row echelon form with zero rows dropped.
Matrix row_space_canonical(const Matrix& m);

/// Pivot columns of the reduced row echelon form.
std::vector<std::size_t> pivot_columns(const Matrix& m);

std::optional<Matrix> inverse(const Matrix& m);

/// Some solution of m x = b, if one exists.
std::optional<RatVector> solve(const Matrix& m, const RatVector& b);

// --- integer lattice helpers ---------------------------------------------

Integer content(const IntVector& v);
/// v divided by the gcd of its entries. Throws on the zero vector.
IntVector primitive(const IntVector& v);
bool is_zero(const IntVector& v);
Integer dot(const IntVector& a, const IntVector& b);
IntVector negated(const IntVector& v);
IntVector add(const IntVector& a, const IntVector& b);
RatVector to_rational(const IntVector& v);

/// Unimodular U, W with U * A * W = D diagonal, d_1 | d_2 | ... and d_i >= 0.
struct SmithForm {
  IntMatrix left;
  IntMatrix diagonal;
  IntMatrix right;
};
SmithForm smith_form(const IntMatrix& a, std::size_t cols);

/// Nonzero diagonal entries of the Smith form.
std::vector<Integer> elementary_divisors(const IntMatrix& a, std::size_t cols);

/// Integer solution of A x = b, if any.
std::optional<IntVector> solve_integer(const IntMatrix& a, std::size_t cols,
                                       const IntVector& b);

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b, std::size_t inner);

std::string to_string(const IntVector& v);
std::string to_string(const RatVector& v);

}  // namespace tvb
