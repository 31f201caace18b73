#include <random>

#include "doctest.h"
#include "tvb/lattice.hpp"

using namespace tvb;

namespace {

// Laplace expansion along the first row; independent of the elimination code.
Rational cofactor_det(const std::vector<RatVector>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Rational total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<RatVector> minor;
    for (std::size_t i = 1; i < n; ++i) {
      RatVector r;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) r.push_back(m[i][k]);
      minor.push_back(r);
    }
    const Rational c = m[0][j] * cofactor_det(minor);
    total += (j % 2 == 0) ? c : Rational(-c);
  }
  return total;
}

std::vector<RatVector> random_rows(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo,
                                   int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<RatVector> rows(r, RatVector(c));
  for (auto& row : rows)
    for (auto& x : row) x = dist(rng);
  return rows;
}

IntMatrix to_int(const std::vector<RatVector>& rows) {
  IntMatrix out;
  for (const auto& r : rows) {
    IntVector v;
    for (const auto& x : r) v.push_back(x.get_num());
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("rank of small integer matrices") {
  const Field q = Field::rationals();
  CHECK(rank(Matrix::from_rows(q, {{1, 1, 1}, {1, 2, 3}, {2, 3, 4}})) == 2);
  CHECK(rank(Matrix::from_rows(q, {{1, 0}, {0, 1}})) == 2);
  CHECK(rank(Matrix(q, 0, 3)) == 0);
  // Over F_2 the rows (1,1) and (1,-1) coincide.
  CHECK(rank(Matrix::from_rows(Field::prime(2), {{1, 1}, {1, -1}})) == 1);
  CHECK(rank(Matrix::from_rows(q, {{1, 1}, {1, -1}})) == 2);
}

TEST_CASE("kernel basis") {
  const Field q = Field::rationals();
  const auto k = kernel_basis(Matrix::from_rows(q, {{1, 0, -1}, {0, 1, -1}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == RatVector{1, 1, 1});
  CHECK(kernel_basis(Matrix::identity(q, 3)).empty());
}

TEST_CASE("determinants of cones") {
  const Field q = Field::rationals();
  const auto d1 = determinant(Matrix::from_rows(q, {{0, 0, 1}, {1, 1, 1}, {-1, -2, -2}}));
  CHECK(abs(d1.value()) == 1);
  const auto d2 = determinant(Matrix::from_rows(q, {{0, -1, 1}, {1, 1, 1}, {-1, -2, -2}}));
  CHECK(abs(d2.value()) == 2);
}

TEST_CASE("field arithmetic") {
  const Field f5 = Field::prime(5);
  CHECK(f5.from_rational(Rational(1, 2)) == 3);
  CHECK(f5.inv(2) == 3);
  CHECK_THROWS_AS(f5.from_rational(Rational(1, 5)), Error);
  CHECK_THROWS_AS(Field::prime(4), Error);
  const Scalar a(f5, 2), b(Field::rationals(), 2);
  CHECK_THROWS_AS(a + b, Error);
  CHECK((a * a).value() == 4);
}

TEST_CASE("primitive vectors") {
  CHECK(primitive({2, 4, -6}) == IntVector{1, 2, -3});
  CHECK(primitive({0, -3}) == IntVector{0, -1});
  CHECK_THROWS_AS(primitive({0, 0}), Error);
}

TEST_CASE("property: determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const auto rows = random_rows(rng, n, n, -4, 4);
    const Rational expect = cofactor_det(rows);
    CHECK(determinant(Matrix::from_rows(Field::rationals(), rows)).value() == expect);
    const Field f7 = Field::prime(7);
    CHECK(determinant(Matrix::from_rows(f7, rows)).value() == f7.from_rational(expect));
  }
}

TEST_CASE("property: rank-nullity and kernel vectors") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 5;
    for (std::uint64_t p : {0u, 3u}) {
      const Field f = Field::of_characteristic(p);
      const Matrix m = Matrix::from_rows(f, random_rows(rng, r, c, -2, 2));
      const auto k = kernel_basis(m);
      CHECK(rank(m) + k.size() == c);
      for (const auto& v : k) {
        Matrix col = Matrix::from_rows(f, {v}).transpose();
        const Matrix prod = m * col;
        for (std::size_t i = 0; i < r; ++i) CHECK(sgn(prod(i, 0)) == 0);
      }
    }
  }
}

TEST_CASE("property: Smith form is a unimodular diagonalization") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = 1 + trial % 4, c = 1 + (trial / 3) % 4;
    const IntMatrix a = to_int(random_rows(rng, r, c, -6, 6));
    const SmithForm s = smith_form(a, c);
    const IntMatrix uaw = multiply(multiply(s.left, a, r), s.right, c);
    CHECK(uaw == s.diagonal);
    std::vector<RatVector> lq, rq;
    for (const auto& row : s.left) lq.push_back(to_rational(row));
    for (const auto& row : s.right) rq.push_back(to_rational(row));
    CHECK(abs(cofactor_det(lq)) == 1);
    CHECK(abs(cofactor_det(rq)) == 1);
    const auto divs = elementary_divisors(a, c);
    for (std::size_t i = 1; i < divs.size(); ++i) CHECK(divs[i] % divs[i - 1] == 0);
    // Product of elementary divisors equals |det| for square nonsingular input.
    if (r == c) {
      std::vector<RatVector> aq;
      for (const auto& row : a) aq.push_back(to_rational(row));
      const Rational d = cofactor_det(aq);
      if (sgn(d) != 0) {
        Integer prod = 1;
        for (const auto& x : divs) prod *= x;
        CHECK(Rational(prod) == abs(d));
      }
    }
  }
}

TEST_CASE("integer solve") {
  const IntMatrix a{{2, 0}, {0, 3}};
  CHECK(solve_integer(a, 2, {4, 9}) == IntVector{2, 3});
  CHECK_FALSE(solve_integer(a, 2, {1, 0}).has_value());
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const IntMatrix m = to_int(random_rows(rng, 3, 3, -3, 3));
    const IntVector x = {trial % 5 - 2, trial % 3 - 1, 1};
    IntVector b(3);
    for (int i = 0; i < 3; ++i) b[i] = dot(m[i], x);
    const auto sol = solve_integer(m, 3, b);
    REQUIRE(sol.has_value());
    for (int i = 0; i < 3; ++i) CHECK(dot(m[i], *sol) == b[i]);
  }
}
