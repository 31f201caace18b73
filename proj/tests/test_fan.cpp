#include <algorithm>
#include <random>

#include "doctest.h"
#include "tvb/fan.hpp"

using namespace tvb;

namespace {

Integer det3(const IntVector& a, const IntVector& b, const IntVector& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

// Strict wall inequalities checked directly from the support values, using
// only determinant ratios (Cramer) rather than the library's dual bases.
bool witness_is_strictly_convex_2d(const Fan& f, const RatVector& phi) {
  for (std::size_t a = 0; a < f.max_cones().size(); ++a)
    for (std::size_t b = 0; b < f.max_cones().size(); ++b) {
      if (a == b) continue;
      const Cone& s = f.max_cones()[a];
      const Cone& t = f.max_cones()[b];
      std::vector<std::size_t> shared;
      std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(shared));
      if (shared.size() != 1) continue;
      const std::size_t w = t[0] == shared[0] ? t[1] : t[0];
      const IntVector& v0 = f.ray(s[0]);
      const IntVector& v1 = f.ray(s[1]);
      const IntVector& x = f.ray(w);
      const Integer den = v0[0] * v1[1] - v0[1] * v1[0];
      const Rational c0 = Rational(x[0] * v1[1] - x[1] * v1[0]) / den;
      const Rational c1 = Rational(v0[0] * x[1] - v0[1] * x[0]) / den;
      if (!(c0 * phi[s[0]] + c1 * phi[s[1]] > phi[w])) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("projective plane fan") {
  const Fan p2 = projective_space_fan(2);
  CHECK(validate_fan(p2).ok());
  CHECK(is_smooth(p2).smooth);
  CHECK(is_complete(p2));
  const auto proj = is_projective(p2);
  CHECK(proj.projective);
  CHECK(witness_is_strictly_convex_2d(p2, proj.support));
  IntVector sum(3, 0);
  const Fan p3 = projective_space_fan(3);
  for (const auto& r : p3.rays()) sum = add(sum, r);
  CHECK(is_zero(sum));
  CHECK(projective_space_fan(3).ray_count() == 4);
}

TEST_CASE("validation violations") {
  Fan dup(2, {{1, 0}, {1, 0}, {0, 1}}, {{0, 2}, {1, 2}});
  const auto r1 = validate_fan(dup);
  REQUIRE_FALSE(r1.ok());
  CHECK(r1.violations[0].kind == "duplicate ray");

  Fan overlap(2, {{1, 0}, {1, 2}, {1, 1}, {0, 1}}, {{0, 1}, {2, 3}});
  const auto r2 = validate_fan(overlap);
  REQUIRE_FALSE(r2.ok());
  CHECK(r2.violations[0].kind == "intersection not a face");
  // Independent witness: (2,3) = (1,2)+(1,1) is in both cones' interiors.
  CHECK(minimal_containing_cone(Fan(2, {{1, 0}, {1, 2}}, {{0, 1}}), {2, 3}).cone.size() == 2);
  CHECK(minimal_containing_cone(Fan(2, {{1, 1}, {0, 1}}, {{0, 1}}), {2, 3}).cone.size() == 2);

  Fan nonprim(2, {{2, 4}, {0, 1}}, {{0, 1}});
  CHECK(validate_fan(nonprim).violations[0].kind == "non-primitive ray");
}

TEST_CASE("smoothness witness and completeness failures") {
  Fan bad(2, {{1, 0}, {1, 2}, {-1, -1}, {0, 1}}, {{0, 1}, {1, 3}, {2, 3}, {0, 2}});
  const auto s = is_smooth(bad);
  CHECK_FALSE(s.smooth);
  CHECK(*s.witness == Cone{0, 1});
  Fan p2 = projective_space_fan(2);
  std::vector<Cone> cones = p2.max_cones();
  cones.pop_back();
  CHECK_FALSE(is_complete(Fan(2, p2.rays(), cones)));
  CHECK_THROWS_AS(is_projective(Fan(2, p2.rays(), cones)), Error);
}

TEST_CASE("minimal containing cone") {
  const Fan p3(3, {{0, 0, 1}, {0, 1, 0}, {1, 1, 1}, {-1, -2, -2}},
               {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  const auto c = minimal_containing_cone(p3, {1, 1, 2});
  CHECK(c.cone == Cone{0, 2});
  CHECK(c.coefficients == RatVector{1, 1});
  const auto r = minimal_containing_cone(p3, {0, 1, 0});
  CHECK(r.cone == Cone{1});
  const Fan s5 = stellar_subdivide(p3, {1, 1, 2});
  const auto c6 = minimal_containing_cone(s5, {0, -1, 1});
  CHECK(c6.cone == Cone{0, 3, 4});
  CHECK(c6.coefficients == RatVector{1, 1, 1});
}

TEST_CASE("stellar subdivision") {
  const Fan p2 = projective_space_fan(2);
  const Fan bl = stellar_subdivide(p2, {1, 1});
  CHECK(bl.ray_count() == 4);
  CHECK(bl.max_cones().size() == 4);
  CHECK(is_smooth(bl).smooth);
  CHECK(is_complete(bl));
  CHECK_THROWS_AS(stellar_subdivide(p2, {1, 0}), Error);
  CHECK_FALSE(is_smooth_star_point(p2, {2, 1}));
  CHECK(is_smooth_star_point(product_p1_fan(2), {1, 1}));
}

TEST_CASE("p1xp1 blowup fan") {
  const Fan f = p1xp1_blowup_fan();
  const std::vector<IntVector> expect{{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}, {3, 1},
                                      {3, 2}, {2, 3}, {1, 3}, {-1, 0}, {0, -1}};
  CHECK(f.rays() == expect);
  CHECK(validate_fan(f).ok());
  CHECK(is_smooth(f).smooth);
  CHECK(is_complete(f));
  const auto proj = is_projective(f);
  CHECK(proj.projective);
  CHECK(witness_is_strictly_convex_2d(f, proj.support));
  CHECK(std::find(f.max_cones().begin(), f.max_cones().end(), Cone{9, 10}) != f.max_cones().end());
}

TEST_CASE("cotangent threefold sequence") {
  const FanSequence seq = cotangent_threefold_sequence();
  REQUIRE(seq.fans.size() == 11);
  REQUIRE(seq.steps.size() == 10);
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    CHECK(seq.steps[i].smooth_star_point);
    CHECK(is_smooth(seq.fans[i + 1]).smooth);
    CHECK(is_complete(seq.fans[i + 1]));
    CHECK(seq.fans[i + 1].ray_count() == seq.fans[i].ray_count() + 1);
    // cofactor oracle: every maximal cone unimodular
    for (const Cone& c : seq.fans[i + 1].max_cones())
      CHECK(abs(det3(seq.fans[i + 1].ray(c[0]), seq.fans[i + 1].ray(c[1]),
                     seq.fans[i + 1].ray(c[2]))) == 1);
  }
  const Fan& last = seq.fans.back();
  CHECK(last.ray_count() == 14);
  CHECK(is_projective(last).projective);
  CHECK(seq.steps[1].center.cone.size() == 3);
}

TEST_CASE("barycentric subdivision") {
  const Fan p1 = barycentric_subdivision(projective_space_fan(1));
  CHECK(p1.ray_count() == 2);
  for (std::size_t d = 2; d <= 4; ++d) {
    const Fan b = barycentric_subdivision(projective_space_fan(d));
    CHECK(b.ray_count() == (std::size_t{1} << (d + 1)) - 2);
    std::size_t fact = 1;
    for (std::size_t k = 2; k <= d + 1; ++k) fact *= k;
    CHECK(b.max_cones().size() == fact);
    CHECK(is_smooth(b).smooth);
    CHECK(is_complete(b));
  }
}

TEST_CASE("fan extension by one dimension") {
  const Fan e1 = extend_fan_one_dimension(projective_space_fan(1));
  CHECK(e1.ray_count() == 4);
  CHECK(is_smooth(e1).smooth);
  CHECK(is_complete(e1));
  Fan f = cotangent_threefold_sequence().fans.back();
  for (std::size_t d = 4; d <= 6; ++d) {
    const Fan g = extend_fan_one_dimension(f);
    CHECK(g.dim() == d);
    CHECK(g.ray_count() == f.ray_count() + 2);
    CHECK(g.max_cones().size() == 2 * f.max_cones().size());
    CHECK(is_smooth(g).smooth);
    CHECK(is_complete(g));
    f = g;
  }
  CHECK(f.ray_count() == 20);
}

TEST_CASE("property: random star subdivisions of smooth complete fans") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 20; ++trial) {
    Fan f = (trial % 2) ? projective_space_fan(3) : product_p1_fan(3);
    for (int step = 0; step < 4; ++step) {
      const Cone& c = f.max_cones()[rng() % f.max_cones().size()];
      const std::size_t k = 2 + rng() % 2;
      IntVector v(3, 0);
      for (std::size_t i = 0; i < k; ++i) v = add(v, f.ray(c[i]));
      CHECK(is_smooth_star_point(f, v));
      const Fan g = stellar_subdivide(f, v);
      CHECK(g.ray_count() == f.ray_count() + 1);
      CHECK(is_smooth(g).smooth);
      CHECK(is_complete(g));
      f = g;
    }
    CHECK(is_projective(f).projective);
  }
}

TEST_CASE("double-wrapped circle of cones is rejected") {
  // Eight rays winding twice around the origin; every wall has two cones on
  // opposite sides, but generic points are covered twice.
  const Fan f(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, 1}, {-1, -1}, {1, -1}},
              {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {0, 7}});
  CHECK_FALSE(validate_fan(f).ok());
  CHECK_FALSE(validate_fan(f, true).ok());
}

TEST_CASE("property: covering certificate agrees with pairwise test") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 15; ++trial) {
    Fan f = (trial % 3 == 0) ? projective_space_fan(3) : product_p1_fan(3);
    for (int step = 0; step < 3; ++step) {
      const Cone& c = f.max_cones()[rng() % f.max_cones().size()];
      IntVector v(3, 0);
      for (std::size_t i = 0; i < 3; ++i)
        if (i < 2 || rng() % 2) v = add(v, f.ray(c[i]));
      f = stellar_subdivide(f, v);
    }
    CHECK(validate_fan(f).ok() == validate_fan(f, true).ok());
    CHECK(validate_fan(f, true).ok());
    // Dropping a cone breaks completeness; both paths must still agree that
    // the remaining cones meet face to face.
    std::vector<Cone> cones = f.max_cones();
    cones.erase(cones.begin() + static_cast<long>(rng() % cones.size()));
    const Fan g(3, f.rays(), cones);
    CHECK(validate_fan(g).ok());
    CHECK(validate_fan(g, true).ok());
  }
}
