#include "tvb/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace tvb {

// --- Field ----------------------------------------------------------------

Field Field::prime(std::uint64_t p) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
  require(p >= 2 && mpz_probab_prime_p(z.get_mpz_t(), 40) > 0,
          ErrorKind::InvalidArgument,
          "characteristic " + z.get_str() + " is not prime");
  return Field(p);
}

Field Field::of_characteristic(std::uint64_t p) {
  return p == 0 ? rationals() : prime(p);
}

namespace {

Integer modulus_of(std::uint64_t p) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
  return z;
}

Integer reduce_mod(const Integer& a, const Integer& p) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return r;
}

}  // namespace

Rational Field::from_rational(const Rational& q) const {
  if (p_ == 0) return q;
  const Integer p = modulus_of(p_);
  const Integer den = reduce_mod(q.get_den(), p);
  require(den != 0, ErrorKind::InvalidArgument,
          "denominator of " + q.get_str() + " vanishes in characteristic " +
              p.get_str());
  Integer den_inv;
  mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  return Rational(reduce_mod(Integer(q.get_num() * den_inv), p));
}

Rational Field::from_integer(const Integer& z) const {
  if (p_ == 0) return Rational(z);
  return Rational(reduce_mod(z, modulus_of(p_)));
}

Rational Field::add(const Rational& a, const Rational& b) const {
  if (p_ == 0) return a + b;
  return Rational(reduce_mod(Integer(a.get_num() + b.get_num()), modulus_of(p_)));
}

Rational Field::sub(const Rational& a, const Rational& b) const {
  if (p_ == 0) return a - b;
  return Rational(reduce_mod(Integer(a.get_num() - b.get_num()), modulus_of(p_)));
}

Rational Field::mul(const Rational& a, const Rational& b) const {
  if (p_ == 0) return a * b;
  return Rational(reduce_mod(Integer(a.get_num() * b.get_num()), modulus_of(p_)));
}

Rational Field::neg(const Rational& a) const {
  if (p_ == 0) return -a;
  return Rational(reduce_mod(Integer(-a.get_num()), modulus_of(p_)));
}

Rational Field::inv(const Rational& a) const {
  require(sgn(a) != 0, ErrorKind::InvalidArgument, "division by zero");
  if (p_ == 0) return 1 / a;
  Integer r;
  const Integer p = modulus_of(p_);
  mpz_invert(r.get_mpz_t(), a.get_num().get_mpz_t(), p.get_mpz_t());
  return Rational(r);
}

std::string Field::name() const {
  if (p_ == 0) return "Q";
  return "F_" + modulus_of(p_).get_str();
}

void require_same_field(const Field& a, const Field& b) {
  require(a == b, ErrorKind::FieldMismatch,
          "field mismatch: " + a.name() + " vs " + b.name());
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same_field(a.field_, b.field_);
  Scalar r;
  r.field_ = a.field_;
  r.value_ = a.field_.add(a.value_, b.value_);
  return r;
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  require_same_field(a.field_, b.field_);
  Scalar r;
  r.field_ = a.field_;
  r.value_ = a.field_.sub(a.value_, b.value_);
  return r;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same_field(a.field_, b.field_);
  Scalar r;
  r.field_ = a.field_;
  r.value_ = a.field_.mul(a.value_, b.value_);
  return r;
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  require_same_field(a.field_, b.field_);
  Scalar r;
  r.field_ = a.field_;
  r.value_ = a.field_.div(a.value_, b.value_);
  return r;
}

// --- Matrix ---------------------------------------------------------------

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::from_rows(Field field, const std::vector<RatVector>& rows,
                         std::size_t cols) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == cols, ErrorKind::InvalidArgument,
            "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = field.from_rational(rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_rows(Field field, const std::vector<RatVector>& rows) {
  require(!rows.empty(), ErrorKind::InvalidArgument,
          "column count required for an empty matrix");
  return from_rows(field, rows, rows.front().size());
}

Matrix Matrix::from_integer_rows(Field field, const IntMatrix& rows,
                                 std::size_t cols) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == cols, ErrorKind::InvalidArgument,
            "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = field.from_integer(rows[i][j]);
  }
  return m;
}

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatVector Matrix::row(std::size_t i) const {
  return RatVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<RatVector> Matrix::row_list() const {
  std::vector<RatVector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::stacked(const Matrix& other) const {
  require_same_field(field_, other.field_);
  if (rows_ == 0) return other;
  if (other.rows_ == 0) return *this;
  require(cols_ == other.cols_, ErrorKind::InvalidArgument,
          "column mismatch when stacking");
  Matrix m(field_, rows_ + other.rows_, cols_);
  std::copy(data_.begin(), data_.end(), m.data_.begin());
  std::copy(other.data_.begin(), other.data_.end(),
            m.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(a.field_, b.field_);
  require(a.cols_ == b.rows_, ErrorKind::InvalidArgument,
          "dimension mismatch in matrix product");
  const Field& f = a.field_;
  Matrix c(f, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        c(i, j) = f.add(c(i, j), f.mul(aik, b(k, j)));
    }
  return c;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ", ";
    os << tvb::to_string(row(i));
  }
  os << ']';
  return os.str();
}

// --- elimination ----------------------------------------------------------

namespace {

/// In-place reduced row echelon form. Returns pivot columns.
std::vector<std::size_t> reduce_in_place(Matrix& m) {
  const Field& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Rational inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      const Rational factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Rows scaled to integers (rational case only).
IntMatrix integerized(const Matrix& m) {
  IntMatrix out(m.rows(), IntVector(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Integer& d = m(i, j).get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational scaled = m(i, j) * l;
      out[i][j] = scaled.get_num();
    }
  }
  return out;
}

/// Fraction-free elimination; returns rank and (for square input) the
/// determinant with sign.
std::pair<std::size_t, Integer> bareiss(IntMatrix a, std::size_t cols) {
  const std::size_t rows = a.size();
  Integer prev = 1;
  int sign = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer v = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = v;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  Integer det = 0;
  if (rows == cols && r == rows) det = rows == 0 ? Integer(1) : Integer(sign * prev);
  if (rows == 0 && cols == 0) det = 1;
  return {r, det};
}

}  // namespace

std::size_t rank(const Matrix& m) {
  if (m.empty()) return 0;
  if (m.field().is_rational()) return bareiss(integerized(m), m.cols()).first;
  Matrix copy = m;
  return reduce_in_place(copy).size();
}

std::vector<RatVector> kernel_basis(const Matrix& m) {
  Matrix r = m;
  const std::vector<std::size_t> pivots = reduce_in_place(r);
  const Field& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVector v(m.cols());
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = f.neg(r(k, free));
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return basis;
  return row_space_canonical(Matrix::from_rows(f, basis, m.cols())).row_list();
}

Scalar determinant(const Matrix& m) {
  require(m.rows() == m.cols(), ErrorKind::InvalidArgument,
          "determinant of a non-square matrix");
  const Field& f = m.field();
  if (m.rows() == 0) return Scalar(f, 1);
  if (f.is_rational()) {
    Rational scale = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Integer l = 1;
      for (std::size_t j = 0; j < m.cols(); ++j)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den().get_mpz_t());
      scale *= l;
    }
    const Integer det = bareiss(integerized(m), m.cols()).second;
    return Scalar(f, Rational(det) / scale);
  }
  Matrix a = m;
  Rational det = 1;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a(p, c)) == 0) ++p;
    if (p == n) return Scalar(f, 0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = f.neg(det);
    }
    det = f.mul(det, a(c, c));
    const Rational inv = f.inv(a(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(a(i, c)) == 0) continue;
      const Rational factor = f.mul(a(i, c), inv);
      for (std::size_t j = c; j < n; ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(c, j)));
    }
  }
  return Scalar(f, det);
}

Matrix row_space_canonical(const Matrix& m) {
  Matrix r = m;
  const std::size_t k = reduce_in_place(r).size();
  Matrix out(m.field(), k, m.cols());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = r(i, j);
  return out;
}

std::vector<std::size_t> pivot_columns(const Matrix& m) {
  Matrix r = m;
  return reduce_in_place(r);
}

std::optional<Matrix> inverse(const Matrix& m) {
  require(m.rows() == m.cols(), ErrorKind::InvalidArgument,
          "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = reduce_in_place(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::optional<RatVector> solve(const Matrix& m, const RatVector& b) {
  require(b.size() == m.rows(), ErrorKind::InvalidArgument,
          "right-hand side has wrong length");
  const Field& f = m.field();
  Matrix aug(f, m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = f.from_rational(b[i]);
  }
  const auto pivots = reduce_in_place(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  RatVector x(m.cols());
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug(k, m.cols());
  return x;
}

// --- integer helpers ------------------------------------------------------

Integer content(const IntVector& v) {
  Integer g = 0;
  for (const Integer& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

IntVector primitive(const IntVector& v) {
  const Integer g = content(v);
  require(g != 0, ErrorKind::InvalidArgument, "primitive of the zero vector");
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    mpz_divexact(out[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  }
  return out;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

Integer dot(const IntVector& a, const IntVector& b) {
  require(a.size() == b.size(), ErrorKind::InvalidArgument,
          "dot product of vectors of different length");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVector negated(const IntVector& v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

IntVector add(const IntVector& a, const IntVector& b) {
  require(a.size() == b.size(), ErrorKind::InvalidArgument,
          "sum of vectors of different length");
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVector to_rational(const IntVector& v) {
  RatVector out;
  out.reserve(v.size());
  for (const Integer& x : v) out.emplace_back(x);
  return out;
}

namespace {

IntMatrix integer_identity(std::size_t n) {
  IntMatrix m(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

// row_t -= q * row_s
void row_axpy(IntMatrix& m, std::size_t t, std::size_t s, const Integer& q) {
  for (std::size_t j = 0; j < m[t].size(); ++j) m[t][j] -= q * m[s][j];
}

void col_axpy(IntMatrix& m, std::size_t t, std::size_t s, const Integer& q) {
  for (auto& row : m) row[t] -= q * row[s];
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithForm smith_form(const IntMatrix& input, std::size_t cols) {
  const std::size_t rows = input.size();
  IntMatrix a = input;
  for (const auto& row : a)
    require(row.size() == cols, ErrorKind::InvalidArgument, "ragged integer matrix");
  IntMatrix u = integer_identity(rows);
  IntMatrix w = integer_identity(cols);

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    auto move_min_to_pivot = [&]() -> bool {
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (bi == rows || abs(a[i][j]) < abs(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == rows) return false;
      std::swap(a[t], a[bi]);
      std::swap(u[t], u[bi]);
      swap_cols(a, t, bj);
      swap_cols(w, t, bj);
      return true;
    };
    if (!move_min_to_pivot()) break;

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const Integer q = floor_div(a[i][t], a[t][t]);
        row_axpy(a, i, t, q);
        row_axpy(u, i, t, q);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const Integer q = floor_div(a[t][j], a[t][t]);
        col_axpy(a, j, t, q);
        col_axpy(w, j, t, q);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) {
        // Bring the smallest remainder in row/column t to the pivot.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (a[i][t] != 0 && abs(a[i][t]) < abs(a[bi][bj])) { bi = i; bj = t; }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[t][j] != 0 && abs(a[t][j]) < abs(a[bi][bj])) { bi = t; bj = j; }
        std::swap(a[t], a[bi]);
        std::swap(u[t], u[bi]);
        swap_cols(a, t, bj);
        swap_cols(w, t, bj);
        continue;
      }
      // Enforce divisibility of the remaining block by the pivot.
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
            row_axpy(a, t, i, Integer(-1));
            row_axpy(u, t, i, Integer(-1));
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (a[t][t] < 0) {
      for (auto& x : a[t]) x = -x;
      for (auto& x : u[t]) x = -x;
    }
  }
  return SmithForm{std::move(u), std::move(a), std::move(w)};
}

std::vector<Integer> elementary_divisors(const IntMatrix& a, std::size_t cols) {
  const SmithForm s = smith_form(a, cols);
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(a.size(), cols); ++i)
    if (s.diagonal[i][i] != 0) out.push_back(s.diagonal[i][i]);
  return out;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b, std::size_t inner) {
  const std::size_t cols = b.empty() ? 0 : b.front().size();
  IntMatrix c(a.size(), IntVector(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

std::optional<IntVector> solve_integer(const IntMatrix& a, std::size_t cols,
                                       const IntVector& b) {
  require(b.size() == a.size(), ErrorKind::InvalidArgument,
          "right-hand side has wrong length");
  const SmithForm s = smith_form(a, cols);
  const std::size_t rows = a.size();
  IntVector ub(rows, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < rows; ++k) ub[i] += s.left[i][k] * b[k];
  IntVector y(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    const Integer d = i < cols ? s.diagonal[i][i] : Integer(0);
    if (d == 0) {
      if (ub[i] != 0) return std::nullopt;
      continue;
    }
    if (!mpz_divisible_p(ub[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
    mpz_divexact(y[i].get_mpz_t(), ub[i].get_mpz_t(), d.get_mpz_t());
  }
  IntVector x(cols, 0);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t k = 0; k < cols; ++k) x[i] += s.right[i][k] * y[k];
  return x;
}

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

std::string to_string(const RatVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

}  // namespace tvb
