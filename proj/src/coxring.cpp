#include "tvb/coxring.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tvb {

namespace {

std::string ray_name(std::size_t j) { return std::to_string(j + 1); }

std::string ray_list(const std::vector<std::size_t>& rays) {
  std::string s;
  for (std::size_t j : rays) s += (s.empty() ? "" : ", ") + ray_name(j);
  return s;
}

std::string coefficient_prefix(const Rational& c, bool leading) {
  std::string s;
  Rational a = c;
  if (sgn(a) < 0) {
    s = leading ? "-" : " - ";
    a = -a;
  } else if (!leading) {
    s = " + ";
  }
  if (a != 1) s += a.get_str() + "*";
  return s;
}

DivisorClass scaled_add(const DivisorClass& acc, const DivisorClass& v, long k) {
  DivisorClass out = acc;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] += v[i] * k;
  return out;
}

std::string count_phrase(std::size_t n, const std::string& noun) {
  return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

std::string flat_name(std::size_t dim) {
  if (dim == 0) return "point";
  if (dim == 1) return "line";
  if (dim == 2) return "plane";
  return std::to_string(dim) + "-plane";
}

// Scales a rational vector to a primitive integer vector (same direction).
IntVector integral_direction(const RatVector& v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, x.get_den());
  IntVector out;
  for (const auto& x : v) out.push_back(Rational(x * l).get_num());
  return is_zero(out) ? out : primitive(out);
}

}  // namespace

// --- class groups -----------------------------------------------------------

DivisorClass ClassGroup::o1() const {
  DivisorClass c = zero();
  c[0] = 1;
  return c;
}

std::string ClassGroup::format(const DivisorClass& c) const {
  require(c.size() == basis.size(), ErrorKind::InvalidArgument, "class has wrong length");
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    const bool leading = s.empty();
    Integer a = c[i];
    if (a < 0) {
      s += leading ? "-" : " - ";
      a = -a;
    } else if (!leading) {
      s += " + ";
    }
    if (a != 1) s += a.get_str() + " ";
    s += basis[i];
  }
  return s.empty() ? "0" : s;
}

ClassGroup class_group_projectivization(const ToricVectorBundle& b) {
  const Fan& f = b.fan;
  require(is_smooth(f).smooth, ErrorKind::InvalidArgument, "class group needs a smooth fan");
  require(is_complete(f), ErrorKind::InvalidArgument, "class group needs a complete fan");
  require(b.filtrations.size() == f.ray_count(), ErrorKind::InvalidArgument,
          "filtration count does not match the ray count");
  const std::size_t n = f.ray_count();
  const std::size_t d = f.dim();
  {
    IntMatrix rel(d, IntVector(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < d; ++k) rel[k][i] = f.ray(i)[k];
    const auto divisors = elementary_divisors(rel, n);
    require(divisors.size() == d &&
                std::all_of(divisors.begin(), divisors.end(), [](const Integer& x) { return x == 1; }),
            ErrorKind::Internal, "class group has torsion");
  }
  ClassGroup g;
  for (const Cone& c : f.max_cones()) {
    const bool all_zero = std::all_of(c.begin(), c.end(), [&](std::size_t j) {
      return b.filtrations[j].subspace.is_zero();
    });
    if (all_zero) {
      g.sigma = c;
      g.phi_star_available = true;
      break;
    }
  }
  if (g.sigma.empty()) g.sigma = f.max_cones().front();

  g.basis.push_back("O(1)");
  std::vector<std::size_t> position(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    if (!std::binary_search(g.sigma.begin(), g.sigma.end(), j)) {
      position[j] = g.basis.size();
      g.basis.push_back("D" + ray_name(j));
    }
  g.ray_classes.assign(n, g.zero());
  for (std::size_t j = 0; j < n; ++j)
    if (position[j]) g.ray_classes[j][position[j]] = 1;
  // D_{sigma_k} = -sum_{i not in sigma} <u_k, v_i> D_i with u_k dual to sigma.
  std::vector<RatVector> rows;
  for (std::size_t j : g.sigma) rows.push_back(to_rational(f.ray(j)));
  const auto inv = inverse(Matrix::from_rows(Field::rationals(), rows, d));
  require(inv.has_value(), ErrorKind::Internal, "maximal cone is not full-dimensional");
  for (std::size_t k = 0; k < g.sigma.size(); ++k) {
    DivisorClass c = g.zero();
    for (std::size_t i = 0; i < n; ++i) {
      if (!position[i]) continue;
      Rational pairing = 0;
      for (std::size_t t = 0; t < d; ++t) pairing += (*inv)(t, k) * Rational(f.ray(i)[t]);
      require(pairing.get_den() == 1, ErrorKind::Internal, "non-integral dual pairing");
      c[position[i]] -= pairing.get_num();
    }
    g.ray_classes[g.sigma[k]] = c;
  }
  return g;
}

ClassGroup class_group_blowup(std::size_t s) {
  ClassGroup g;
  g.basis.push_back("L");
  for (std::size_t i = 0; i < s; ++i) g.basis.push_back("E" + std::to_string(i + 1));
  return g;
}

// --- presentations ----------------------------------------------------------

std::string Relation::to_string() const {
  std::string s;
  for (const Term& t : terms) {
    s += coefficient_prefix(t.coefficient, s.empty());
    if (t.factors.empty()) {
      if (t.coefficient == 1 || t.coefficient == -1) s += "1";
      else s.pop_back();  // drop the '*'
      continue;
    }
    for (std::size_t i = 0; i < t.factors.size(); ++i) {
      if (i) s += "*";
      s += t.factors[i].first;
      if (t.factors[i].second != 1) s += "^" + std::to_string(t.factors[i].second);
    }
  }
  return s.empty() ? "0" : s;
}

std::string BaseDescriptor::name() const {
  const std::string ambient = "P^" + std::to_string(rank - 1);
  if (centers.empty()) return "R(" + ambient + ") = Sym(F)";
  std::map<std::size_t, std::size_t> by_dim;
  for (const auto& c : centers) ++by_dim[c.projective_dim];
  std::string s = "R(Bl_S " + ambient + "), S = ";
  bool first = true;
  for (const auto& [dim, count] : by_dim) {
    if (!first) s += " + ";
    first = false;
    s += count_phrase(count, flat_name(dim));
  }
  return s;
}

std::size_t CoxPresentation::free_variable_count() const {
  std::set<std::string> used;
  for (const auto& r : relations)
    for (const auto& t : r.terms)
      for (const auto& f : t.factors) used.insert(f.first);
  std::size_t n = 0;
  for (const auto& g : generators)
    if (!used.count(g.name)) ++n;
  return n;
}

std::string CoxPresentation::summary() const {
  std::string vars;
  for (const auto& g : generators) vars += (vars.empty() ? "" : ", ") + g.name;
  if (relations.empty())
    return "polynomial ring in " + std::to_string(generators.size()) + " variable" +
           (generators.size() == 1 ? "" : "s") + " over " + base.name() +
           (vars.empty() ? "" : ": [" + vars + "]");
  std::string rels;
  for (const auto& r : relations) rels += (rels.empty() ? "" : ", ") + r.to_string();
  return base.name() + " [" + vars + "] / (" + rels + ")";
}

CoxPresentation cox_presentation(const ToricVectorBundle& b) {
  require(b.shift_normalized(), ErrorKind::InvalidArgument,
          "Cox presentation needs shift-normalized filtrations (normalize the shifts first)");
  const auto compat = check_compatibility(b);
  require(compat.compatible, ErrorKind::Validation,
          "bundle fails the compatibility condition: " + compat.reason);
  CoxPresentation p;
  p.class_group = class_group_projectivization(b);
  const ClassGroup& cg = p.class_group;
  if (!cg.phi_star_available)
    p.warnings.push_back("no maximal cone carries only zero subspaces; the class group basis uses "
                         "maximal cone " + to_string(IntVector(cg.sigma.begin(), cg.sigma.end())) +
                         " and E_i -> D_i is not a basis map");

  BaseDescriptor& base = p.base;
  base.field = b.field;
  base.rank = b.rank;
  base.arrangement = from_bundle(b);
  base.blowup_order = intersection_closure(base.arrangement);
  const auto& members = base.arrangement.members;

  for (std::size_t j : base.arrangement.zero_rays)
    p.generators.push_back({"x" + ray_name(j), cg.ray_classes[j], "free variable, zero subspace"});

  auto weighted_rays = [&](const std::vector<std::size_t>& rays) {
    DivisorClass deg = cg.zero();
    for (std::size_t j : rays) deg = scaled_add(deg, cg.ray_classes[j], b.filtrations[j].step);
    return deg;
  };
  auto ray_product = [&](const std::vector<std::size_t>& rays) {
    Term t{Rational(-1), {}};
    for (std::size_t j : rays) t.factors.push_back({"x" + ray_name(j), b.filtrations[j].step});
    return t;
  };

  std::map<std::size_t, DivisorClass> exceptional_degree;
  for (std::size_t m = 0; m < members.size(); ++m) {
    const auto& mem = members[m];
    if (mem.is_hyperplane()) continue;
    const std::string symbol = "1_E" + ray_name(mem.rays.front());
    base.centers.push_back({m, mem.projective_dim(), mem.rays, symbol});
    const DivisorClass deg = weighted_rays(mem.rays);
    exceptional_degree[m] = deg;
    const bool repeated = mem.rays.size() > 1;
    if (!repeated && b.filtrations[mem.rays.front()].step == 1) continue;
    for (std::size_t j : mem.rays)
      p.generators.push_back({"x" + ray_name(j), cg.ray_classes[j],
                              repeated ? "ray with repeated subspace" : "ray with longer step"});
    p.symbols.push_back({symbol, deg, "canonical section of the exceptional divisor over " +
                                          flat_name(mem.projective_dim()) + " of rays " +
                                          ray_list(mem.rays)});
    Relation rel{{Term{Rational(1), {{symbol, 1}}}, ray_product(mem.rays)},
                 repeated ? "repeated subspace (derived gluing encoding)" : "longer step"};
    p.relations.push_back(rel);
    if (repeated)
      base.annotations.push_back("nonseparated quotient: one exceptional divisor over the " +
                                 flat_name(mem.projective_dim()) + " of rays " +
                                 ray_list(mem.rays) + " per ray");
  }

  for (std::size_t m = 0; m < members.size(); ++m) {
    const auto& mem = members[m];
    if (!mem.is_hyperplane()) continue;
    base.doubled_hyperplanes.push_back(m);
    const std::string tag = ray_name(mem.rays.front());
    // Strict transform of H: L minus the exceptional divisors of centers in H.
    DivisorClass h = cg.o1();
    for (const auto& c : base.centers)
      if (mem.locus.contains(members[c.member].locus))
        h = scaled_add(h, exceptional_degree.at(c.member), -1);
    const DivisorClass xs = weighted_rays(mem.rays);
    DivisorClass y = scaled_add(h, xs, -1);
    for (std::size_t j : mem.rays)
      p.generators.push_back({"x" + ray_name(j), cg.ray_classes[j], "ray with 1-dimensional subspace"});
    p.generators.push_back({"y" + tag, y, "second variable of the doubled hyperplane"});
    p.symbols.push_back({"1_H" + tag, h, "canonical section of the strict transform of the hyperplane of rays " +
                                             ray_list(mem.rays)});
    Term prod = ray_product(mem.rays);
    prod.factors.push_back({"y" + tag, 1});
    const bool repeated = mem.rays.size() > 1;
    p.relations.push_back({{Term{Rational(1), {{"1_H" + tag, 1}}}, prod},
                           repeated ? "repeated hyperplane (derived gluing encoding)" : "hyperplane"});
    base.annotations.push_back("base doubled along the hyperplane of rays " + ray_list(mem.rays));
  }

  // Order generators by ray so output is stable and readable.
  std::stable_sort(p.generators.begin(), p.generators.end(),
                   [](const NamedDegree& a, const NamedDegree& c) {
                     auto key = [](const std::string& s) {
                       return std::make_pair(std::stoul(s.substr(1)), s[0]);
                     };
                     return key(a.name) < key(c.name);
                   });
  return p;
}

std::vector<HomogeneityFailure> check_homogeneity(const CoxPresentation& p) {
  std::map<std::string, DivisorClass> deg;
  for (const auto& g : p.generators) deg[g.name] = g.degree;
  for (const auto& s : p.symbols) deg[s.name] = s.degree;
  std::vector<HomogeneityFailure> out;
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    std::optional<DivisorClass> first;
    for (const auto& t : p.relations[i].terms) {
      DivisorClass d = p.class_group.zero();
      bool known = true;
      for (const auto& [name, e] : t.factors) {
        auto it = deg.find(name);
        if (it == deg.end()) {
          out.push_back({i, "unknown symbol " + name});
          known = false;
          break;
        }
        d = scaled_add(d, it->second, e);
      }
      if (!known) break;
      if (!first) {
        first = d;
      } else if (d != *first) {
        out.push_back({i, "term degree " + p.class_group.format(d) + " differs from " +
                              p.class_group.format(*first)});
        break;
      }
    }
  }
  return out;
}

TangentCoxRing tangent_cox_ring(const Fan& fan, Field field) {
  require(is_smooth(fan).smooth && is_complete(fan), ErrorKind::InvalidArgument,
          "tangent Cox ring needs a smooth complete fan");
  const ToricVectorBundle t = tangent_bundle(fan, field);
  TangentCoxRing out;
  bool opposite = false;
  for (std::size_t i = 0; i < fan.ray_count(); ++i)
    for (std::size_t j = i + 1; j < fan.ray_count(); ++j)
      if (fan.ray(i) == negated(fan.ray(j))) opposite = true;
  if (opposite) {
    out.explicit_form = false;
    out.presentation = cox_presentation(t);
    out.presentation.warnings.push_back(
        "fan has opposite rays; the explicit sum x_i*y_i form does not apply, repeated-subspace "
        "presentation used instead");
    return out;
  }
  CoxPresentation& p = out.presentation;
  p.class_group = class_group_projectivization(t);
  const ClassGroup& cg = p.class_group;
  p.base.field = field;
  p.base.rank = fan.dim();
  p.base.arrangement = from_bundle(t);
  p.base.blowup_order = intersection_closure(p.base.arrangement);
  for (std::size_t m = 0; m < p.base.arrangement.members.size(); ++m)
    p.base.doubled_hyperplanes.push_back(m);
  for (std::size_t i = 0; i < fan.ray_count(); ++i) {
    p.generators.push_back({"x" + ray_name(i), cg.ray_classes[i], "ray divisor"});
    p.generators.push_back({"y" + ray_name(i), scaled_add(cg.o1(), cg.ray_classes[i], -1),
                            "orbit closure of the hyperplane of ray " + ray_name(i)});
  }
  std::vector<RatVector> rows(fan.dim(), RatVector(fan.ray_count()));
  for (std::size_t i = 0; i < fan.ray_count(); ++i)
    for (std::size_t k = 0; k < fan.dim(); ++k) rows[k][i] = Rational(fan.ray(i)[k]);
  out.kernel = kernel_basis(Matrix::from_rows(field, rows, fan.ray_count()));
  for (const auto& lambda : out.kernel) {
    Relation rel{{}, "tangent"};
    const IntVector c = field.is_rational() ? integral_direction(lambda) : IntVector{};
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      const Rational coeff = field.is_rational() ? Rational(c[i]) : lambda[i];
      if (sgn(coeff) == 0) continue;
      rel.terms.push_back({coeff, {{"x" + ray_name(i), 1}, {"y" + ray_name(i), 1}}});
    }
    p.relations.push_back(rel);
  }
  return out;
}

// --- hyperplane reduction ---------------------------------------------------

namespace {

std::optional<ReductionStep> reduction_step(Field field, std::size_t r,
                                            std::vector<RatVector>& points) {
  if (r < 4 || points.empty()) return std::nullopt;  // needs P^d with d > 2
  const Matrix m = Matrix::from_rows(field, points, r);
  if (rank(m) >= r) return std::nullopt;
  ReductionStep step;
  step.ambient_dim = r - 1;
  step.points = points.size();
  step.hyperplane = kernel_basis(m).front();
  std::size_t k = r;
  while (k > 0 && sgn(step.hyperplane[k - 1]) == 0) --k;
  step.dropped_coordinate = k - 1;
  for (auto& p : points) p.erase(p.begin() + static_cast<long>(step.dropped_coordinate));
  return step;
}

std::string reduced_description(std::size_t start_rank, std::size_t final_rank) {
  std::string s = "R(Bl_S P^" + std::to_string(start_rank - 1) + ") = R(Bl_S P^" +
                  std::to_string(final_rank - 1) + ")[";
  for (std::size_t i = 1; i <= start_rank - final_rank; ++i)
    s += (i > 1 ? ", t" : "t") + std::to_string(i);
  return s + "]";
}

}  // namespace

ReducedBase hyperplane_reduction(Field field, std::size_t r, const std::vector<RatVector>& points) {
  for (const auto& p : points)
    require(p.size() == r, ErrorKind::InvalidArgument, "point has the wrong number of coordinates");
  require(r >= 4, ErrorKind::InvalidArgument,
          "hyperplane reduction needs P^d with d > 2, got P^" + std::to_string(r - 1));
  ReducedBase out;
  out.points = points;
  out.rank = r;
  while (auto step = reduction_step(field, out.rank, out.points)) {
    out.steps.push_back(*step);
    --out.rank;
  }
  require(!out.steps.empty(), ErrorKind::InvalidArgument,
          "no containing hyperplane: the points span P^" + std::to_string(r - 1));
  out.description = reduced_description(r, out.rank);
  return out;
}

// --- classification ---------------------------------------------------------

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::MDS: return "MDS";
    case Verdict::NotMDS: return "NotMDS";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

Citation citation(const std::string& id) {
  static const std::vector<Citation> registry = {
      {"castravet-tevelev-general-points",
       "Blowups of P^{r-1} at s points in general position are Mori dream spaces when "
       "1/r + 1/(s-r) > 1/2."},
      {"castravet-tevelev-rnc",
       "Blowups of P^{r-1} at points on a rational normal curve are Mori dream spaces; "
       "at most r+2 points in general position always lie on one."},
      {"collinear-torus-complexity-one",
       "Blowups of projective space at collinear points carry a torus action with "
       "codimension-one orbits and are Mori dream spaces."},
      {"mukai-very-general-points",
       "Blowups of P^{r-1} at s very general points have non-finitely generated Cox rings "
       "when 1/r + 1/(s-r) <= 1/2."},
      {"totaro-cubic-pencil",
       "The blowup of P^2 at the nine reference points, the transverse base locus of a cubic "
       "pencil, is not a Mori dream space in characteristic other than 2 and 3."},
      {"point-subset-monotonicity",
       "If the blowup at a subset of the points is not a Mori dream space, neither is the "
       "blowup at all of them."},
      {"hyperplane-reduction",
       "For finitely many points in a hyperplane H of P^d with d > 2, R(Bl_S P^d) is a "
       "polynomial ring in one variable over R(Bl_S H)."},
      {"cox-ring-transfer",
       "R(P(F)) is finitely generated if and only if R(Bl_S P_F) is, for filtrations with at "
       "most one proper subspace per ray."},
      {"nonpolyhedral-effective-cone",
       "If every ray lies in sigma or -sigma and the points are very general with "
       "1/r + 1/(s-r) <= 1/2, the pseudoeffective cone of P(F) is not polyhedral."},
      {"projective-space-toric",
       "With no blowup centers the base is projective space, a toric variety."},
      {"kapranov-m0n",
       "Blowing up P^{r-1} along all spans of at most r-2 of r+1 general points gives a "
       "variety isomorphic to the Deligne-Mumford moduli space of (r+2)-pointed stable "
       "rational curves."},
  };
  for (const auto& c : registry)
    if (c.id == id) return c;
  fail(ErrorKind::Internal, "unknown citation id " + id);
}

bool below_threshold(std::size_t r, std::size_t s) {
  require(r >= 1 && s > r, ErrorKind::InvalidArgument, "threshold needs 1 <= r < s");
  const Rational lhs = Rational(1) / static_cast<long>(r) + Rational(1) / static_cast<long>(s - r);
  return lhs <= Rational(1, 2);
}

bool threshold_identity_holds(std::size_t r_max, std::size_t s_max) {
  for (std::size_t r = 3; r <= r_max; ++r)
    for (std::size_t s = r + 1; s <= s_max; ++s) {
      const Rational bound = Rational(static_cast<long>(r) + 2) +
                             Rational(4) / static_cast<long>(r - 2);
      if (below_threshold(r, s) != (Rational(static_cast<long>(s)) >= bound)) return false;
    }
  return true;
}

MdsResult mds_classify(std::size_t r, std::size_t s, const PositionFlags& flags) {
  require(r >= 1, ErrorKind::InvalidArgument, "rank must be positive");
  MdsResult out;
  auto decide = [&](Verdict v, const std::string& cite, const std::string& reason) {
    out.verdict = v;
    if (!cite.empty()) out.citations.push_back(cite);
    out.reasons.push_back(reason);
    return out;
  };
  const std::string where = std::to_string(s) + " points in P^" + std::to_string(r - 1);
  if (s == 0) return decide(Verdict::MDS, "projective-space-toric", "no points to blow up");
  if (r <= 2)
    return decide(Verdict::MDS, "projective-space-toric",
                  "points of P^1 are divisors; blowing them up changes nothing");
  if (flags.collinear)
    return decide(Verdict::MDS, "collinear-torus-complexity-one", where + " are collinear");
  if (flags.on_rational_normal_curve)
    return decide(Verdict::MDS, "castravet-tevelev-rnc", where + " lie on a rational normal curve");
  if (flags.general_position || flags.very_general) {
    if (s <= r + 2)
      return decide(Verdict::MDS, "castravet-tevelev-rnc",
                    where + " in general position, at most r+2 = " + std::to_string(r + 2));
    const std::string ineq = "1/" + std::to_string(r) + " + 1/" + std::to_string(s - r);
    if (!below_threshold(r, s))
      return decide(Verdict::MDS, "castravet-tevelev-general-points",
                    where + " in general position and " + ineq + " > 1/2");
    if (flags.very_general) {
      out.conditional = true;
      return decide(Verdict::NotMDS, "mukai-very-general-points",
                    where + " assumed very general and " + ineq + " <= 1/2");
    }
    return decide(Verdict::Unknown, "",
                  where + " in general position with " + ineq +
                      " <= 1/2, but very-generality is not assumed");
  }
  return decide(Verdict::Unknown, "", where + " are not in general position and no rule applies");
}

// --- certificates -----------------------------------------------------------

std::vector<RatVector> totaro_points() {
  const IntMatrix v = {{0, 0, 1},  {1, 1, 1},  {0, -1, 1}, {1, 0, 1}, {1, -1, 1},
                       {-1, -1, 1}, {-1, 0, 1}, {-1, 1, 1}, {0, 1, 1}};
  std::vector<RatVector> out;
  for (const auto& p : v) out.push_back(to_rational(p));
  return out;
}

namespace {

RatVector normalized(Field field, const RatVector& p) {
  RatVector q;
  for (const auto& x : p) q.push_back(field.from_rational(x));
  std::size_t k = 0;
  while (k < q.size() && sgn(q[k]) == 0) ++k;
  require(k < q.size(), ErrorKind::InvalidArgument, "zero vector is not a point");
  const Rational inv = field.inv(q[k]);
  for (auto& x : q) x = field.mul(x, inv);
  return q;
}

// Matrix with columns a, b, c.
Matrix columns(Field field, const RatVector& a, const RatVector& b, const RatVector& c) {
  return Matrix::from_rows(field, {a, b, c}, 3).transpose();
}

RatVector apply(Field field, const Matrix& m, const RatVector& x) {
  RatVector y(3, 0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) y[i] = field.add(y[i], field.mul(m(i, j), x[j]));
  return y;
}

// Projective map sending the standard frame e1, e2, e3, (1,1,1) to a..d.
std::optional<Matrix> frame_map(Field field, const RatVector& a, const RatVector& b,
                                const RatVector& c, const RatVector& d) {
  const Matrix t = columns(field, a, b, c);
  const auto inv = inverse(t);
  if (!inv) return std::nullopt;
  const RatVector e = apply(field, *inv, d);
  Matrix out(field, 3, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    if (sgn(e[j]) == 0) return std::nullopt;
    for (std::size_t i = 0; i < 3; ++i) out(i, j) = field.mul(t(i, j), e[j]);
  }
  return out;
}

}  // namespace

std::optional<TotaroMatch> find_totaro_subset(Field field, const std::vector<RatVector>& points) {
  if (field.characteristic() == 2 || field.characteristic() == 3) return std::nullopt;
  if (points.size() < 9) return std::nullopt;
  for (const auto& p : points)
    require(p.size() == 3, ErrorKind::InvalidArgument, "Totaro search works in P^2");
  std::map<RatVector, std::size_t> index;
  std::vector<RatVector> pts;
  for (std::size_t i = 0; i < points.size(); ++i) {
    pts.push_back(normalized(field, points[i]));
    index.emplace(pts.back(), i);
  }
  const auto ref = totaro_points();
  // Reference frame: first four reference points, normalized to the standard
  // frame, so any match is target_map * ref_frame_inverse.
  const auto ref_map = frame_map(field, ref[0], ref[1], ref[2], ref[3]);
  require(ref_map.has_value(), ErrorKind::Internal, "reference frame is degenerate");
  const auto ref_inv = inverse(*ref_map);
  std::vector<RatVector> ref_std;
  for (std::size_t k = 4; k < ref.size(); ++k) ref_std.push_back(apply(field, *ref_inv, ref[k]));

  const std::size_t n = pts.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        if (!inverse(columns(field, pts[a], pts[b], pts[c]))) continue;
        for (std::size_t d = 0; d < n; ++d) {
          if (d == a || d == b || d == c) continue;
          const auto m = frame_map(field, pts[a], pts[b], pts[c], pts[d]);
          if (!m) continue;
          std::vector<std::size_t> hit{a, b, c, d};
          for (const auto& q : ref_std) {
            auto it = index.find(normalized(field, apply(field, *m, q)));
            if (it == index.end()) break;
            hit.push_back(it->second);
          }
          if (hit.size() != ref.size()) continue;
          std::sort(hit.begin(), hit.end());
          if (std::adjacent_find(hit.begin(), hit.end()) != hit.end()) continue;
          std::vector<RatVector> subset;
          for (std::size_t i : hit) subset.push_back(points[i]);
          auto pencil = cubic_pencil_check(field, subset);
          if (!pencil.complete_intersection) continue;
          return TotaroMatch{hit, std::move(pencil)};
        }
      }
    }
  return std::nullopt;
}

namespace {

struct Certificate {
  std::optional<TotaroMatch> totaro;
  std::vector<ReductionStep> reductions;
  std::vector<std::size_t> kept;  // subset sizes after each step
  bool used_subset = false;
};

template <typename Fn>
bool each_subset(std::size_t n, std::size_t k, Fn fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return false;
  for (;;) {
    if (fn(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

constexpr std::size_t kMaxExcluded = 3;

// Non-finite-generation certificate for Bl_S P^{r-1}: the reference nine
// points inside P^2, reached through hyperplane subsets in higher dimension.
std::optional<Certificate> certify_not_mds(Field field, std::size_t r,
                                           const std::vector<RatVector>& points) {
  if (points.size() < 9) return std::nullopt;
  if (r == 3) {
    auto match = find_totaro_subset(field, points);
    if (!match) return std::nullopt;
    Certificate c;
    c.totaro = std::move(match);
    c.used_subset = points.size() > 9;
    return c;
  }
  if (r < 3) return std::nullopt;
  for (std::size_t k = 0; k <= kMaxExcluded && points.size() - k >= 9; ++k) {
    std::optional<Certificate> found;
    each_subset(points.size(), k, [&](const std::vector<std::size_t>& excluded) {
      std::vector<RatVector> kept;
      for (std::size_t i = 0; i < points.size(); ++i)
        if (!std::binary_search(excluded.begin(), excluded.end(), i)) kept.push_back(points[i]);
      const auto step = reduction_step(field, r, kept);
      if (!step) return false;
      auto rest = certify_not_mds(field, r - 1, kept);
      if (!rest) return false;
      rest->reductions.insert(rest->reductions.begin(), *step);
      rest->kept.insert(rest->kept.begin(), kept.size());
      rest->used_subset = rest->used_subset || k > 0;
      found = std::move(rest);
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

bool is_kapranov_type(const Arrangement& a) {
  const std::size_t r = a.rank;
  if (r < 4) return false;
  std::vector<RatVector> pts;
  std::vector<Subspace> others;
  for (std::size_t i : a.centers()) {
    const auto& m = a.members[i];
    if (m.projective_dim() == 0) pts.push_back(m.locus.basis_rows().front());
    else others.push_back(m.locus);
  }
  if (pts.size() != r + 1) return false;
  if (!position_report(a.field, r, pts).general_position) return false;
  std::vector<Subspace> expected;
  for (std::size_t k = 2; k + 2 <= r; ++k)
    each_subset(pts.size(), k, [&](const std::vector<std::size_t>& idx) {
      std::vector<RatVector> rows;
      for (std::size_t i : idx) rows.push_back(pts[i]);
      expected.push_back(Subspace::span(a.field, r, rows));
      return false;
    });
  if (expected.size() != others.size()) return false;
  for (const auto& e : expected)
    if (std::find(others.begin(), others.end(), e) == others.end()) return false;
  return true;
}

std::string m0n(std::size_t n) { return "M̄_{0," + std::to_string(n) + "}"; }

}  // namespace

BundleMdsReport bundle_mds_report(const ToricVectorBundle& b, const MdsOptions& opts) {
  BundleMdsReport rep;
  rep.arrangement = from_bundle(b);
  const Arrangement& a = rep.arrangement;
  MdsResult& res = rep.result;
  res.citations.push_back("cox-ring-transfer");
  for (const auto& m : a.members) {
    if (m.is_hyperplane())
      res.annotations.push_back("hyperplane of rays " + ray_list(m.rays) +
                                " doubles the base; finite generation is unaffected");
    else if (m.rays.size() > 1)
      res.annotations.push_back("repeated subspace on rays " + ray_list(m.rays) +
                                " gives a nonseparated base; finite generation is unaffected");
  }
  const auto centers = a.centers();
  auto merge = [&](const MdsResult& r) {
    res.verdict = r.verdict;
    res.conditional = r.conditional;
    for (const auto& c : r.citations) res.citations.push_back(c);
    for (const auto& s : r.reasons) res.reasons.push_back(s);
    for (const auto& s : r.annotations) res.annotations.push_back(s);
  };
  if (centers.empty()) {
    merge(mds_classify(a.rank, 0, {}));
    return rep;
  }
  bool points_only = true;
  for (std::size_t i : centers) points_only = points_only && a.members[i].projective_dim() == 0;
  if (!points_only) {
    res.verdict = Verdict::Unknown;
    if (is_kapranov_type(a)) {
      res.citations.push_back("kapranov-m0n");
      res.annotations.push_back("Bl_S P^" + std::to_string(a.rank - 1) +
                                " is isomorphic to the Deligne-Mumford moduli space " +
                                m0n(a.rank + 2));
      res.reasons.push_back("finite generation is equivalent to finite generation of R(" +
                            m0n(a.rank + 2) + ")");
    } else {
      res.reasons.push_back("arrangement has centers of positive dimension; no rule applies");
    }
    return rep;
  }
  std::vector<RatVector> pts;
  for (std::size_t i : centers) pts.push_back(a.members[i].locus.basis_rows().front());
  rep.position = position_report(a.field, a.rank, pts);
  const auto& pos = *rep.position;
  PositionFlags flags{pos.general_position, false, pos.collinear, pos.on_rational_normal_curve};
  const MdsResult unconditional = mds_classify(a.rank, pts.size(), flags);
  if (pos.general_position && pts.size() == a.rank + 1)
    res.annotations.push_back("Cox ring of the base is the Plücker coordinate ring of Grass(2, " +
                              std::to_string(a.rank + 2) + ") (annotation only)");
  if (unconditional.verdict == Verdict::MDS) {
    merge(unconditional);
    return rep;
  }
  if (auto cert = certify_not_mds(a.field, a.rank, pts)) {
    res.verdict = Verdict::NotMDS;
    rep.totaro = cert->totaro;
    rep.reductions = cert->reductions;
    rep.reduction_subset_sizes = cert->kept;
    for (std::size_t i = 0; i < cert->reductions.size(); ++i) {
      res.citations.push_back("hyperplane-reduction");
      res.reasons.push_back(std::to_string(cert->kept[i]) + " of the points lie in a hyperplane of P^" +
                            std::to_string(cert->reductions[i].ambient_dim) +
                            "; reduced to P^" + std::to_string(cert->reductions[i].ambient_dim - 1));
    }
    res.citations.push_back("totaro-cubic-pencil");
    res.reasons.push_back("nine of the points are projectively equivalent to the reference "
                          "configuration; cubics through them form a pencil with transverse "
                          "base locus");
    if (cert->used_subset) res.citations.push_back("point-subset-monotonicity");
    return rep;
  }
  flags.very_general = opts.assume_very_general && pos.general_position;
  merge(mds_classify(a.rank, pts.size(), flags));
  return rep;
}

KapranovReport kapranov_report(std::size_t r) {
  KapranovReport rep;
  rep.r = r;
  rep.arrangement = kapranov_arrangement(r);
  rep.result.verdict = Verdict::Unknown;
  rep.result.citations = {"cox-ring-transfer", "kapranov-m0n"};
  rep.result.annotations.push_back("Bl_S P^" + std::to_string(r - 1) +
                                   " is isomorphic to the Deligne-Mumford moduli space " +
                                   m0n(r + 2));
  rep.result.reasons.push_back("finite generation of R(P(F)) is equivalent to finite generation of R(" +
                               m0n(r + 2) + "), which is not decided here");
  if (r == 3)
    rep.result.annotations.push_back(
        "for r = 3 the arrangement is 4 points in general position, which the point rules "
        "alone classify as MDS");
  return rep;
}

ToricVectorBundle losev_manin_bundle(const LosevManinData& data, Field field) {
  const std::size_t d = data.fan.dim();
  ToricVectorBundle b{data.fan, d, field, {}};
  for (const auto& s : data.subspaces) {
    require(s.field() == field, ErrorKind::FieldMismatch, "Losev-Manin data built over another field");
    b.filtrations.push_back({s, 1, -1});
  }
  return b;
}

}  // namespace tvb
