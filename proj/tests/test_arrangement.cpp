#include <random>

#include "doctest.h"
#include "tvb/arrangement.hpp"

using namespace tvb;

namespace {

const Field Q = Field::rationals();

RatVector rv(std::initializer_list<long> xs) {
  RatVector v;
  for (long x : xs) v.push_back(Rational(x));
  return v;
}

ProjectiveSubspace member_spanned_by(std::size_t r, const std::vector<RatVector>& rows) {
  const Subspace locus = Subspace::span(Q, r, rows);
  return {locus.perp(), locus, {}, ""};
}

Integer det3(const IntVector& a, const IntVector& b, const IntVector& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

IntVector to_int(const RatVector& v) {
  IntVector out;
  for (const auto& x : v) {
    REQUIRE(x.get_den() == 1);
    out.push_back(x.get_num());
  }
  return out;
}

// Plain Gaussian elimination over Q, independent of the library's reducer.
std::size_t oracle_rank(std::vector<RatVector> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c] / m[r][c];
      for (std::size_t k = 0; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

std::size_t oracle_cubic_dim(const std::vector<RatVector>& pts) {
  std::vector<RatVector> rows;
  for (const auto& p : pts) {
    RatVector row;
    for (int a = 3; a >= 0; --a)
      for (int b = 3 - a; b >= 0; --b) {
        const int c = 3 - a - b;
        Rational v = 1;
        for (int i = 0; i < a; ++i) v *= p[0];
        for (int i = 0; i < b; ++i) v *= p[1];
        for (int i = 0; i < c; ++i) v *= p[2];
        row.push_back(v);
      }
    rows.push_back(row);
  }
  return 10 - oracle_rank(rows);
}

std::vector<RatVector> threefold_pencil_points() {
  const Fan x = cotangent_threefold_sequence().fans.back();
  std::vector<RatVector> pts;
  for (std::size_t i : {0, 2, 5, 6, 7, 10, 11, 12, 13}) pts.push_back(to_rational(x.ray(i)));
  return pts;
}

}  // namespace

TEST_CASE("arrangement from bundles") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> coef(-5, 5);
  std::vector<Subspace> subs;
  for (int i = 0; i < 9; ++i) {
    RatVector n = rv({coef(rng), coef(rng), coef(rng)});
    n[2] = 1;
    subs.push_back(Subspace::span(Q, 3, {n}).perp());
  }
  subs.push_back(Subspace(Q, 3));
  subs.push_back(Subspace(Q, 3));
  const auto b = standard_bundle(p1xp1_blowup_fan(), 3, Q, subs);
  const auto a = from_bundle(b);
  CHECK(a.zero_rays == std::vector<std::size_t>{9, 10});
  CHECK(a.point_only());
  CHECK(a.centers().size() == a.members.size());

  const auto p3 = from_bundle(cotangent_bundle(projective_space_fan(3), Q).bundle);
  REQUIRE(p3.members.size() == 4);
  const auto rep = position_report(p3);
  CHECK(rep.general_position);
  CHECK(rep.distinct);

  const auto t = from_bundle(tangent_bundle(projective_space_fan(2), Q));
  REQUIRE(t.members.size() == 3);
  for (const auto& m : t.members) CHECK(m.is_hyperplane());
  CHECK(t.centers().empty());

  const auto opp = from_bundle(cotangent_bundle(product_p1_fan(2), Q).bundle);
  REQUIRE(opp.members.size() == 2);
  CHECK(opp.members[0].multiplicity() == 2);
}

TEST_CASE("intersection closure of points and lines in 3-space") {
  const RatVector x1 = rv({1, 0, 0, 0}), x2 = rv({0, 1, 0, 0}), x3 = rv({0, 0, 1, 0});
  Arrangement a{Q, 4, {}, {}};
  a.members = {member_spanned_by(4, {x1}), member_spanned_by(4, {x1, x2}),
               member_spanned_by(4, {x1, x3}), member_spanned_by(4, {x2, x3})};
  const auto poset = intersection_closure(a);
  REQUIRE(poset.entries.size() == 6);
  std::size_t new_points = 0;
  for (const auto& e : poset.entries)
    if (!e.member) {
      CHECK(e.projective_dim == 0);
      ++new_points;
    }
  CHECK(new_points == 2);
  // Points come first in the blowup order.
  CHECK(poset.entries[0].projective_dim == 0);
  CHECK(poset.entries[5].projective_dim == 1);
  // Each line covers its two points.
  CHECK(poset.covers.size() == 6);

  Arrangement two{Q, 3, {member_spanned_by(3, {rv({1, 0, 0})}), member_spanned_by(3, {rv({0, 1, 0})})}, {}};
  CHECK(intersection_closure(two).entries.size() == 2);
}

TEST_CASE("Kapranov arrangements") {
  const std::size_t expected[] = {0, 0, 0, 4, 15, 41, 98, 218};
  for (std::size_t r = 3; r <= 7; ++r) {
    const auto a = kapranov_arrangement(r);
    CHECK(a.members.size() == expected[r]);
  }
  const auto k4 = kapranov_arrangement(4);
  CHECK(intersection_closure(k4).entries.size() == 15);
  CHECK_THROWS_AS(kapranov_arrangement(2), Error);
}

TEST_CASE("property: intersection closure is closed") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> coef(-2, 2);
  std::uniform_int_distribution<int> dim(1, 2);
  for (int trial = 0; trial < 20; ++trial) {
    Arrangement a{Q, 4, {}, {}};
    while (a.members.size() < 6) {
      std::vector<RatVector> rows;
      const int k = dim(rng);
      for (int i = 0; i < k; ++i) rows.push_back(rv({coef(rng), coef(rng), coef(rng), coef(rng)}));
      const auto m = member_spanned_by(4, rows);
      if (m.locus.dim() != static_cast<std::size_t>(k)) continue;
      bool dup = false;
      for (const auto& o : a.members) dup = dup || o.locus == m.locus;
      if (!dup) a.members.push_back(m);
    }
    const auto poset = intersection_closure(a);
    for (const auto& x : poset.entries)
      for (const auto& y : poset.entries) {
        const Subspace meet = x.locus.intersect(y.locus);
        if (meet.is_zero()) continue;
        bool found = false;
        for (const auto& z : poset.entries) found = found || z.locus == meet;
        CHECK(found);
      }
    for (std::size_t i = 1; i < poset.entries.size(); ++i)
      CHECK(poset.entries[i - 1].projective_dim <= poset.entries[i].projective_dim);
  }
}

TEST_CASE("position predicates") {
  const std::vector<RatVector> generic{rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1}), rv({1, 2, 5})};
  auto rep = position_report(Q, 3, generic);
  CHECK(rep.general_position);
  CHECK(rep.on_rational_normal_curve);
  CHECK_FALSE(rep.collinear);
  CHECK_FALSE(rep.in_hyperplane);

  const std::vector<RatVector> three_on_line{rv({1, 0, 0}), rv({0, 1, 0}), rv({1, 1, 0}),
                                             rv({0, 0, 1})};
  rep = position_report(Q, 3, three_on_line);
  CHECK_FALSE(rep.general_position);
  CHECK_FALSE(rep.collinear);
  REQUIRE(rep.dependent_subset.has_value());
  CHECK(*rep.dependent_subset == std::vector<std::size_t>{0, 1, 2});
  CHECK_FALSE(rep.on_rational_normal_curve);

  rep = position_report(Q, 3, {rv({1, 0, 1}), rv({2, 1, 2}), rv({0, 3, 0})});
  CHECK(rep.collinear);
  REQUIRE(rep.hyperplane.has_value());
  CHECK(dot(to_int(*rep.hyperplane), IntVector{1, 0, 1}) == 0);
}

TEST_CASE("rational normal curve membership") {
  for (std::size_t r : {3, 4, 5}) {
    std::vector<RatVector> pts;
    for (long t = -3; t <= 5; ++t) {
      RatVector p;
      Rational pw = 1;
      for (std::size_t i = 0; i < r; ++i) {
        p.push_back(pw);
        pw *= t;
      }
      pts.push_back(p);
    }
    RatVector inf(r, 0);
    inf[r - 1] = 1;
    pts.push_back(inf);
    CHECK(on_rational_normal_curve(Q, r, pts));
    // Random change of coordinates keeps the points on a curve.
    std::mt19937_64 rng(r);
    std::uniform_int_distribution<long> coef(-3, 3);
    Matrix g(Q, r, r);
    do {
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) g(i, j) = coef(rng);
    } while (rank(g) < r);
    std::vector<RatVector> moved;
    for (const auto& p : pts) {
      RatVector q(r, 0);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) q[i] += g(i, j) * p[j];
      moved.push_back(q);
    }
    CHECK(on_rational_normal_curve(Q, r, moved));
    CHECK(on_rational_normal_curve(Field::prime(101), r, moved));
    moved.back()[0] += 1;
    CHECK_FALSE(on_rational_normal_curve(Q, r, moved));
  }
}

TEST_CASE("cotangent points of the threefold chain") {
  const Fan x = cotangent_threefold_sequence().fans.back();
  for (std::uint64_t p : {0, 5, 7, 11, 13, 2, 3}) {
    const Field f = Field::of_characteristic(p);
    const auto a = from_bundle(cotangent_bundle(x, f).bundle);
    // Projective equality oracle: all 2x2 minors vanish in the field.
    std::size_t classes = 0;
    for (std::size_t i = 0; i < x.ray_count(); ++i) {
      bool first = true;
      for (std::size_t j = 0; j < i; ++j) {
        bool equal = true;
        for (std::size_t k = 0; k < 3; ++k)
          for (std::size_t l = k + 1; l < 3; ++l) {
            Integer m = x.ray(i)[k] * x.ray(j)[l] - x.ray(i)[l] * x.ray(j)[k];
            if (p == 0 ? m != 0 : mpz_divisible_ui_p(m.get_mpz_t(), p) == 0) equal = false;
          }
        if (equal) first = false;
      }
      if (first) ++classes;
    }
    CHECK(a.members.size() == classes);
    if (p == 0 || p == 5) CHECK(classes == 14);
    if (p == 2 || p == 3) CHECK(classes < 14);
  }
}

TEST_CASE("extended cotangent points lie in a hyperplane") {
  const Fan x = extend_fan_one_dimension(cotangent_threefold_sequence().fans.back());
  std::vector<RatVector> old_points;
  for (std::size_t i = 0; i < 14; ++i) old_points.push_back(to_rational(x.ray(i)));
  const auto rep = position_report(Q, 4, old_points);
  CHECK(rep.in_hyperplane);
  REQUIRE(rep.hyperplane.has_value());
  CHECK(Subspace::span(Q, 4, {*rep.hyperplane}) == Subspace::span(Q, 4, {rv({0, 0, 0, 1})}));
  std::vector<RatVector> all;
  for (const auto& v : x.rays()) all.push_back(to_rational(v));
  CHECK_FALSE(position_report(Q, 4, all).in_hyperplane);
}

TEST_CASE("cubic pencil through nine points") {
  const auto pts = threefold_pencil_points();
  for (std::uint64_t p : {0, 5, 7}) {
    const auto rep = cubic_pencil_check(Field::of_characteristic(p), pts);
    CHECK(rep.cubic_space_dim == 2);
    CHECK(rep.on_both);
    CHECK(rep.transverse);
    CHECK(rep.complete_intersection);
  }
  CHECK(oracle_cubic_dim(pts) == 2);

  std::vector<RatVector> line;
  for (long t = 0; t < 9; ++t) line.push_back(rv({1, t, 0}));
  auto rep = cubic_pencil_check(Q, line);
  CHECK(rep.cubic_space_dim >= 3);
  CHECK_FALSE(rep.complete_intersection);
  CHECK(rep.cubic_space_dim == oracle_cubic_dim(line));

  const auto gen = very_general_points(3, 9, 5);
  rep = cubic_pencil_check(Q, gen.points);
  CHECK(rep.cubic_space_dim == 1);
  CHECK_FALSE(rep.complete_intersection);

  CHECK_THROWS_AS(cubic_pencil_check(Field::prime(3), pts), Error);
  CHECK_THROWS_AS(cubic_pencil_check(Q, std::vector<RatVector>(pts.begin(), pts.end() - 1)), Error);
}

TEST_CASE("property: cubic space dimension matches the evaluation oracle") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> coef(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<RatVector> pts;
    // Mix of points on a conic, on a line and random ones.
    while (pts.size() < 9) {
      const int kind = static_cast<int>(rng() % 3);
      const long t = coef(rng);
      RatVector p = kind == 0 ? rv({1, t, t * t}) : kind == 1 ? rv({1, t, 2 * t + 1})
                                                               : rv({coef(rng), coef(rng), 1});
      bool dup = false;
      for (const auto& q : pts) dup = dup || Subspace::span(Q, 3, {q}) == Subspace::span(Q, 3, {p});
      if (!dup) pts.push_back(p);
    }
    CHECK(cubic_pencil_check(Q, pts).cubic_space_dim == oracle_cubic_dim(pts));
  }
}

TEST_CASE("very general points") {
  const auto g = very_general_points(3, 9, 42);
  REQUIRE(g.points.size() == 9);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = i + 1; j < 9; ++j)
      for (std::size_t k = j + 1; k < 9; ++k)
        CHECK(det3(to_int(g.points[i]), to_int(g.points[j]), to_int(g.points[k])) != 0);
  CHECK(g.verified.size() == 3);
  CHECK(very_general_points(3, 9, 42).points == g.points);
  CHECK(very_general_points(3, 9, 43).points != g.points);

  const auto two = very_general_points(3, 2, 1);
  CHECK(two.points.size() == 2);

  const auto h = very_general_points(4, 6, 9);
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = a + 1; b < 6; ++b)
      for (std::size_t c = b + 1; c < 6; ++c)
        for (std::size_t d = c + 1; d < 6; ++d) {
          Matrix m = Matrix::from_rows(Q, {h.points[a], h.points[b], h.points[c], h.points[d]});
          CHECK(determinant(m).value() != 0);
        }
}

TEST_CASE("Losev-Manin subspaces") {
  const auto d2 = losev_manin_subspaces(2);
  CHECK(d2.fan.ray_count() == 6);
  std::size_t lines = 0, zeros = 0;
  for (const auto& s : d2.subspaces) {
    if (s.dim() == 1) ++lines;
    if (s.dim() == 0) ++zeros;
  }
  CHECK(lines == 3);
  CHECK(zeros == 3);

  const auto d3 = losev_manin_subspaces(3);
  CHECK(d3.fan.ray_count() == 14);
  std::size_t count[3] = {0, 0, 0};
  for (const auto& s : d3.subspaces) ++count[s.dim()];
  CHECK(count[2] == 4);
  CHECK(count[1] == 6);
  CHECK(count[0] == 4);
  for (const auto& I : d3.subsets) CHECK(I.size() <= 3);
}
