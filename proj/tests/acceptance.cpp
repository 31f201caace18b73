// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tvb/coxring.hpp"
#include "tvb/report.hpp"

using namespace tvb;

namespace {

const Field Q = Field::rationals();

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

ToricVectorBundle normalized(ToricVectorBundle b) {
  normalize_shifts(b);
  return b;
}

ToricVectorBundle normalized_cotangent(const Fan& f, Field field = Q) {
  return normalized(cotangent_bundle(f, field).bundle);
}

bool has(const std::vector<std::string>& xs, const std::string& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

Subspace random_subspace(std::mt19937_64& rng, std::size_t r, std::size_t dim) {
  std::uniform_int_distribution<long> coef(-4, 4);
  for (;;) {
    std::vector<RatVector> rows(dim, RatVector(r));
    for (auto& row : rows)
      for (auto& x : row) x = coef(rng);
    Subspace s = Subspace::span(Q, r, rows);
    if (s.dim() == dim) return s;
  }
}

Subspace coordinate_span(std::size_t r, const std::vector<std::size_t>& coords) {
  std::vector<RatVector> rows;
  for (std::size_t c : coords) {
    RatVector v(r, 0);
    v[c] = 1;
    rows.push_back(v);
  }
  return Subspace::span(Q, r, rows);
}

// --- criteria ----------------------------------------------------------------

void nine_point_surface(Check& c) {
  const Fan f = p1xp1_blowup_fan();
  const std::set<IntVector> expected{{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}, {3, 1},
                                     {3, 2}, {2, 3}, {1, 3}, {-1, 0}, {0, -1}};
  c.expect(f.ray_count() == 11, "fan has 11 rays");
  c.expect(std::set<IntVector>(f.rays().begin(), f.rays().end()) == expected, "ray vectors");
  c.expect(is_smooth(f).smooth, "smooth");
  c.expect(is_complete(f), "complete");
  c.expect(is_projective(f).projective, "projective");

  const ToricVectorBundle b = normalized(nine_point_surface_bundle(1));
  c.expect(check_compatibility(b).compatible, "bundle compatible");
  const CoxPresentation p = cox_presentation(b);
  c.expect(p.free_variable_count() == 2 && p.generators.size() == 2, "two free variables");
  c.expect(p.relations.empty(), "no relations");
  c.expect(p.base.name() == "R(Bl_S P^2), S = 9 points", "base is Bl_9 P^2");
  c.expect(p.class_group.rank() == 10, "class group rank 10");
}

void threefold_pipeline(Check& c) {
  const FanSequence seq = cotangent_threefold_sequence();
  c.expect(seq.steps.size() == 10, "ten subdivisions");
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    c.expect(is_smooth_star_point(seq.fans[i], seq.steps[i].vector),
             "step " + std::to_string(i + 1) + " is a smooth star point");
    c.expect(is_smooth(seq.fans[i + 1]).smooth, "step " + std::to_string(i + 1) + " keeps smoothness");
  }
  const Fan& x = seq.fans.back();
  c.expect(x.ray_count() == 14, "final fan has 14 rays");
  c.expect(is_smooth(x).smooth && is_complete(x) && is_projective(x).projective,
           "final fan smooth, complete, projective");
  for (std::uint64_t ch : {0, 5})
    c.expect(cotangent_bundle(x, Field::of_characteristic(ch)).coincidences.empty(),
             "distinct cotangent points in char " + std::to_string(ch));
  for (std::uint64_t ch : {2, 3})
    c.expect(!cotangent_bundle(x, Field::prime(ch)).coincidences.empty(),
             "coincidence detected in char " + std::to_string(ch));

  std::vector<RatVector> pts;
  for (std::size_t j : cotangent_threefold_pencil_subset()) pts.push_back(to_rational(x.ray(j)));
  for (std::uint64_t ch : {0, 5}) {
    const Field field = Field::of_characteristic(ch);
    const CubicPencilReport pencil = cubic_pencil_check(field, pts);
    c.expect(pencil.cubic_space_dim == 2, "cubic space dimension 2 in char " + std::to_string(ch));
    c.expect(pencil.transverse, "transverse base locus in char " + std::to_string(ch));
    const BundleMdsReport mds = bundle_mds_report(normalized_cotangent(x, field));
    c.expect(mds.result.verdict == Verdict::NotMDS && !mds.result.conditional,
             "unconditional NotMDS in char " + std::to_string(ch));
    c.expect(has(mds.result.citations, "totaro-cubic-pencil") &&
                 has(mds.result.citations, "point-subset-monotonicity"),
             "cubic pencil citation trail in char " + std::to_string(ch));
  }
}

void dimension_chain(Check& c) {
  const std::vector<Fan> chain = extension_chain(6);
  c.expect(chain.size() == 4, "chain reaches dimension 6");
  std::size_t previous_reductions = 0;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const Fan& f = chain[i];
    const std::string d = "dim " + std::to_string(f.dim());
    c.expect(f.dim() == 3 + i, d + " extends by one");
    c.expect(is_smooth(f).smooth && is_complete(f), d + " smooth and complete");
    const ToricVectorBundle b = normalized_cotangent(f);
    const Arrangement a = from_bundle(b);
    c.expect(a.point_only(), d + " cotangent arrangement is a point set");
    // Points inherited from the previous fan: its rays sit in the last
    // coordinate hyperplane, the two new rays do not.
    std::vector<RatVector> inherited;
    for (const auto& m : a.members)
      if (sgn(f.ray(m.rays.front()).back()) == 0) inherited.push_back(m.locus.basis_rows().front());
    c.expect(inherited.size() == a.members.size() - 2, d + " two new points");
    c.expect(position_report(Q, f.dim(), inherited).in_hyperplane, d + " inherited points in a hyperplane");
    c.expect(!position_report(a).in_hyperplane, d + " new points leave the hyperplane");
    c.expect(hyperplane_reduction(Q, f.dim(), inherited).steps.size() == 1, d + " reduction fires once");
    const BundleMdsReport mds = bundle_mds_report(b);
    c.expect(mds.reductions.size() == previous_reductions + 1, d + " one new reduction in the verdict");
    previous_reductions = mds.reductions.size();
    c.expect(mds.result.verdict == Verdict::NotMDS, d + " NotMDS");
  }
}

void threshold_identity(Check& c) {
  c.expect(threshold_identity_holds(64, 200), "library identity check");
  bool agree = true;
  for (long r = 3; r <= 64; ++r)
    for (long s = r + 1; s <= 200; ++s) {
      const bool lhs = Rational(1) / r + Rational(1) / (s - r) <= Rational(1) / 2;
      // s >= r + 2 + 4/(r-2), cleared of the denominator.
      const bool rhs = (s - r - 2) * (r - 2) >= 4;
      agree = agree && lhs == rhs &&
              below_threshold(static_cast<std::size_t>(r), static_cast<std::size_t>(s)) == lhs;
    }
  c.expect(agree, "predicate and bound agree for all 3 <= r <= 64, r < s <= 200");
}

void classifier_table(Check& c) {
  struct Row {
    std::size_t r, s;
    std::string position;
    Verdict expected;
  };
  const std::vector<Row> rows{{3, 8, "general", Verdict::MDS},
                              {3, 9, "very-general", Verdict::NotMDS},
                              {3, 9, "collinear", Verdict::MDS},
                              {3, 9, "on-rnc", Verdict::MDS},
                              {4, 7, "general", Verdict::MDS},
                              {4, 8, "very-general", Verdict::NotMDS}};
  for (const auto& row : rows) {
    PositionFlags flags;
    flags.general_position = row.position == "general" || row.position == "very-general";
    flags.very_general = row.position == "very-general";
    flags.collinear = row.position == "collinear";
    flags.on_rational_normal_curve = row.position == "on-rnc";
    const std::string label = "(" + std::to_string(row.r) + ", " + std::to_string(row.s) + ", " +
                              row.position + ")";
    c.expect(mds_classify(row.r, row.s, flags).verdict == row.expected, label);
    const Report rep = mds_params_report(row.r, row.s, row.position);
    c.expect(rep.doc["mds"]["verdict"] == to_string(row.expected), label + " through the report");
  }
}

void tangent_relations(Check& c) {
  for (std::size_t d = 2; d <= 4; ++d) {
    const TangentCoxRing t = tangent_cox_ring(projective_space_fan(d));
    std::string expected;
    for (std::size_t i = 1; i <= d + 1; ++i)
      expected += (i > 1 ? " + " : "") + ("x" + std::to_string(i)) + "*y" + std::to_string(i);
    c.expect(t.presentation.relations.size() == 1, "P^" + std::to_string(d) + " one relation");
    c.expect(!t.presentation.relations.empty() && t.presentation.relations[0].to_string() == expected,
             "P^" + std::to_string(d) + " relation is " + expected);
    c.expect(check_homogeneity(t.presentation).empty(), "P^" + std::to_string(d) + " homogeneous");
  }
  const Fan x = cotangent_threefold_sequence().fans.back();
  const TangentCoxRing t = tangent_cox_ring(x);
  c.expect(t.presentation.relations.size() == 11, "threefold has 11 relations");
  c.expect(check_homogeneity(t.presentation).empty(), "threefold relations homogeneous");
  for (const RatVector& lambda : t.kernel) {
    RatVector sum(x.dim(), 0);
    for (std::size_t i = 0; i < x.ray_count(); ++i)
      for (std::size_t k = 0; k < x.dim(); ++k) sum[k] += lambda[i] * Rational(x.ray(i)[k]);
    c.expect(std::all_of(sum.begin(), sum.end(), [](const Rational& q) { return sgn(q) == 0; }),
             "kernel vector is a linear relation among the rays");
  }
}

void sections_and_multiplicities(Check& c) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> any_dim(0, 4);
  for (std::size_t r = 1; r <= 4; ++r)
    for (unsigned m = 0; m <= 5; ++m)
      for (int trial = 0; trial < 3; ++trial) {
        std::vector<Subspace> subs;
        for (int j = 0; j < 3; ++j) {
          const std::size_t k = any_dim(rng) % r;
          subs.push_back(k == 0 ? Subspace(Q, r) : random_subspace(rng, r, k));
        }
        const auto rep = sym_power_dimension(standard_bundle(projective_space_fan(2), r, Q, subs), m);
        c.expect(rep.dimension == oracle::binom(r - 1 + m, m),
                 "Sym^" + std::to_string(m) + " of rank " + std::to_string(r));
      }

  for (std::uint64_t ch : {0, 5, 7}) {
    const Field fld = Field::of_characteristic(ch);
    std::mt19937_64 gen(9000 + ch);
    int agree = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const auto [h, p] = oracle::random_form_at_point(gen, fld, 2 + static_cast<std::size_t>(trial % 3));
      if (multiplicity_at(HomogeneousForm::from_polynomial(h), p) == oracle::multiplicity(h, p)) ++agree;
    }
    c.expect(agree == 200, "multiplicity oracle agreement in char " + std::to_string(ch));
  }

  const ToricVectorBundle b = nine_point_surface_bundle(1);
  const auto pts = from_bundle(b).points();
  std::mt19937_64 gen(4242);
  int additive = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Polynomial f = oracle::random_curve(gen, Q, pts), g = oracle::random_curve(gen, Q, pts);
    DivisorClass sum = orbit_closure_class(HomogeneousForm::from_polynomial(f), b);
    const DivisorClass gc = orbit_closure_class(HomogeneousForm::from_polynomial(g), b);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += gc[i];
    if (orbit_closure_class(HomogeneousForm::from_polynomial(f * g), b) == sum) ++additive;
  }
  c.expect(additive == 50, "orbit closure class additive on 50 pairs");
}

void minus_one_curves(Check& c) {
  EnumerationBudget small;
  small.max_depth = 100;
  small.max_degree = 6;
  const auto bfs = minus_one_classes(9, small);
  c.expect(std::set<CurveClass>(bfs.classes.begin(), bfs.classes.end()) ==
               oracle::minus_one_classes(9, 6),
           "BFS up to degree 6 equals the exhaustive oracle");

  const auto deep = minus_one_classes(9, EnumerationBudget{});
  const auto& degs = deep.level_max_degree;
  std::size_t run = 1, best = 1;
  for (std::size_t i = 1; i < degs.size(); ++i) {
    run = degs[i] > degs[i - 1] ? run + 1 : 1;
    best = std::max(best, run);
  }
  c.expect(best >= 5, "five consecutive levels of increasing maximal degree");
  for (const auto& cls : deep.classes) {
    Integer sum = 0, sq = 0;
    for (const auto& m : cls.multiplicities) {
      sum += m;
      sq += m * m;
    }
    c.expect(cls.degree * cls.degree - sq == -1 && 3 * cls.degree - sum == 1,
             "Diophantine checks for " + cls.to_string());
  }

  const auto rep = nonpolyhedrality_report(nine_point_surface_bundle(1));
  c.expect(rep.fan_hypothesis && rep.rays_outside.empty(), "every ray in sigma or -sigma");
  c.expect(rep.threshold_sum && *rep.threshold_sum == Rational(1) / 2, "threshold sum is 1/2");
  c.expect(Rational(1) / 3 + Rational(1) / 6 == Rational(1) / 2, "1/3 + 1/6 = 1/2");
}

void single_ray_quotient(Check& c) {
  const Fan p2 = projective_space_fan(2);
  {
    const RayFiltration f{coordinate_span(3, {0, 1}), 1, 0};
    const auto out = single_ray_projectivization_fan({1, 0}, f, 3);
    // e_1 + e_2 after projecting along (1,1,1).
    c.expect(canonical_cones(out.quotient) == canonical_cones(stellar_subdivide(p2, {1, 1})),
             "coordinate plane gives the subdivided P^2 fan");
  }
  {
    const Subspace plane = Subspace::span(Q, 3, {{1, 1, 0}, {0, 1, 1}});
    const RayFiltration f{plane, 1, 0};
    const std::vector<RatVector> split{{1, 1, 0}, {0, 0, 1}, {0, 1, 1}};
    const auto out = single_ray_projectivization_fan({0, 1}, f, 3, split);
    c.expect(canonical_cones(out.quotient) == canonical_cones(stellar_subdivide(p2, {0, -1})),
             "adapted splitting of a non-coordinate plane");
  }
  {
    const RayFiltration f{Subspace(Q, 3), 1, 0};
    const auto out = single_ray_projectivization_fan({1}, f, 3);
    c.expect(canonical_cones(out.quotient) == canonical_cones(p2), "zero subspace gives P^2");
  }
}

void losev_manin(Check& c) {
  const std::regex shape(R"(1_H\d+ - x\d+\*y\d+)");
  for (std::size_t d : {2, 3}) {
    const std::string label = "d = " + std::to_string(d);
    const LosevManinData data = losev_manin_subspaces(d);
    c.expect(data.fan.ray_count() == (d == 2 ? 6u : 14u), label + " barycentric ray count");
    const CoxPresentation p = cox_presentation(normalized(losev_manin_bundle(data)));
    c.expect(p.free_variable_count() == d + 1, label + " free variables");
    c.expect(p.relations.size() == oracle::binom(d + 1, 2), label + " relation count");
    for (const auto& rel : p.relations)
      c.expect(std::regex_match(rel.to_string(), shape), label + " relation " + rel.to_string());
  }
}

void kapranov(Check& c) {
  const std::vector<std::size_t> counts{4, 15, 41};
  for (std::size_t r = 3; r <= 5; ++r) {
    const std::string label = "r = " + std::to_string(r);
    const KapranovReport rep = kapranov_report(r);
    c.expect(rep.arrangement.members.size() == counts[r - 3], label + " member count");
    c.expect(rep.result.verdict == Verdict::Unknown, label + " verdict Unknown");
    ExampleArgs args;
    args.rank = r;
    const std::string text = render(example_report("kapranov", args, {}), false);
    c.expect(text.find("isomorphic to the Deligne-Mumford moduli space") != std::string::npos,
             label + " report cites the moduli space");
    c.expect(text.find("M̄_{0," + std::to_string(r + 2) + "}") != std::string::npos,
             label + " report carries the M0n annotation");
  }
}

void property_suites(Check& c) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> small(-2, 2);

  // Rank-nullity over Q and F_3.
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = 1 + trial % 4, cols = 1 + (trial / 4) % 5;
    for (std::uint64_t p : {0, 3}) {
      const Field f = Field::of_characteristic(p);
      std::vector<RatVector> m(rows, RatVector(cols));
      for (auto& row : m)
        for (auto& x : row) x = small(rng);
      const Matrix mat = Matrix::from_rows(f, m);
      const auto k = kernel_basis(mat);
      bool in_kernel = true;
      for (const auto& v : k) {
        const Matrix prod = mat * Matrix::from_rows(f, {v}).transpose();
        for (std::size_t i = 0; i < rows; ++i) in_kernel = in_kernel && sgn(prod(i, 0)) == 0;
      }
      c.expect(rank(mat) + k.size() == cols && in_kernel, "rank-nullity");
    }
  }

  // Compatibility certificates re-verify.
  std::uniform_int_distribution<std::size_t> dim(0, 3);
  const Fan p3 = projective_space_fan(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Subspace> subs;
    for (int j = 0; j < 4; ++j) {
      const std::size_t k = dim(rng);
      subs.push_back(k == 0 ? Subspace(Q, 4) : random_subspace(rng, 4, k));
    }
    const auto b = standard_bundle(p3, 4, Q, subs);
    const auto res = check_compatibility(b);
    if (res.compatible)
      for (const auto& cert : res.cones) c.expect(verify_certificate(b, cert), "certificate re-verifies");
    else
      c.expect(res.failing_cone.has_value(), "incompatibility names a cone");
  }

  // Closing an already closed arrangement adds nothing.
  for (int trial = 0; trial < 10; ++trial) {
    Arrangement a{Q, 4, {}, {}};
    while (a.members.size() < 5) {
      const Subspace locus = random_subspace(rng, 4, 1 + dim(rng) % 2);
      bool dup = false;
      for (const auto& o : a.members) dup = dup || o.locus == locus;
      if (!dup) a.members.push_back({locus.perp(), locus, {}, ""});
    }
    const auto once = intersection_closure(a);
    Arrangement closed{Q, 4, {}, {}};
    for (const auto& e : once.entries) closed.members.push_back({e.locus.perp(), e.locus, {}, ""});
    const auto twice = intersection_closure(closed);
    bool same = once.entries.size() == twice.entries.size();
    for (const auto& e : twice.entries)
      same = same && std::any_of(once.entries.begin(), once.entries.end(),
                                 [&](const PosetEntry& o) { return o.locus == e.locus; });
    c.expect(same, "closure of the closure");
  }

  // Cox presentations are homogeneous.
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Subspace> subs;
    for (int i = 0; i < 9; ++i) subs.push_back(random_subspace(rng, 3, 1 + dim(rng) % 2));
    subs.push_back(Subspace(Q, 3));
    subs.push_back(Subspace(Q, 3));
    const auto b = standard_bundle(p1xp1_blowup_fan(), 3, Q, subs);
    if (!check_compatibility(b).compatible) continue;
    c.expect(check_homogeneity(cox_presentation(b)).empty(), "random presentation homogeneous");
  }
  for (const Fan& f : extension_chain(5))
    c.expect(check_homogeneity(cox_presentation(normalized_cotangent(f))).empty(),
             "cotangent presentation homogeneous");

  // Cremona moves are involutions.
  std::uniform_int_distribution<long> v(-5, 20);
  std::uniform_int_distribution<std::size_t> pos(0, 8);
  for (int trial = 0; trial < 300; ++trial) {
    CurveClass cls{v(rng), std::vector<Integer>(9)};
    for (auto& m : cls.multiplicities) m = v(rng);
    const std::size_t i = pos(rng), j = pos(rng), k = pos(rng);
    if (i == j || j == k || i == k) continue;
    c.expect(cremona(cremona(cls, i, j, k), i, j, k) == cls, "Cremona involution");
  }

  // Reports are byte-deterministic.
  for (const auto& name : example_names()) {
    if (name == "tangent") continue;
    for (bool json : {false, true})
      c.expect(render(example_report(name, {}, {}), json) == render(example_report(name, {}, {}), json),
               name + " report deterministic");
  }
}

struct Criterion {
  const char* title;
  double limit_seconds;  // 0: no time bound
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"nine-point surface bundle pipeline", 5, nine_point_surface},
      {"cotangent threefold pipeline", 10, threefold_pipeline},
      {"dimension chain of cotangent bundles", 10, dimension_chain},
      {"threshold identity", 1, threshold_identity},
      {"MDS classifier table", 0, classifier_table},
      {"tangent bundle Cox rings", 0, tangent_relations},
      {"symmetric powers, multiplicities, orbit classes", 0, sections_and_multiplicities},
      {"(-1)-class enumeration", 30, minus_one_curves},
      {"single-ray quotient fan", 0, single_ray_quotient},
      {"Losev-Manin presentations", 0, losev_manin},
      {"Kapranov registry", 0, kapranov},
      {"property suites", 0, property_suites},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("threw: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].limit_seconds > 0 && secs >= criteria[i].limit_seconds) {
      std::ostringstream msg;
      msg << "took " << secs << " s, limit " << criteria[i].limit_seconds << " s";
      check.expect(false, msg.str());
    }
    std::printf("%s criterion %2zu: %s (%.2f s)\n", check.ok() ? "PASS" : "FAIL", i + 1,
                criteria[i].title, secs);
    for (const auto& f : check.failures()) std::printf("      failed: %s\n", f.c_str());
    if (!check.ok()) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
