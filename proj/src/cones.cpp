#include "tvb/cones.hpp"

#include <algorithm>
#include <set>

#include "tvb/error.hpp"

namespace tvb {

namespace {

void add_scaled(DivisorClass& acc, const DivisorClass& v, const Integer& k) {
  for (std::size_t i = 0; i < v.size(); ++i) acc[i] += v[i] * k;
}

// Coordinates of v in the basis given by the rays of a simplicial cone.
RatVector cone_coordinates(const Fan& f, const Cone& sigma, const IntVector& v) {
  std::vector<RatVector> cols;
  for (std::size_t j : sigma) cols.push_back(to_rational(f.ray(j)));
  const Matrix m = Matrix::from_rows(Field::rationals(), cols, f.dim()).transpose();
  const auto x = solve(m, to_rational(v));
  require(x.has_value(), ErrorKind::Internal, "cone rays do not span");
  return *x;
}

// Number of distinct orderings of a sorted vector.
Integer arrangements_of(const std::vector<Integer>& sorted) {
  Integer n;
  mpz_fac_ui(n.get_mpz_t(), sorted.size());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), j - i);
    n /= f;
    i = j;
  }
  return n;
}

}  // namespace

// --- forms and multiplicities ------------------------------------------------

HomogeneousForm HomogeneousForm::from_polynomial(const Polynomial& p) {
  require(p.is_homogeneous(), ErrorKind::InvalidArgument, "form is not homogeneous");
  HomogeneousForm h;
  h.field = p.field();
  h.rank = p.nvars();
  h.degree = p.is_zero() ? 0 : static_cast<unsigned>(p.total_degree());
  h.coefficients = p.dense(h.degree);
  return h;
}

Polynomial HomogeneousForm::polynomial() const {
  require(coefficients.size() == monomial_count(rank, degree), ErrorKind::InvalidArgument,
          "coefficient count does not match the degree");
  return Polynomial::from_dense(field, rank, degree, coefficients);
}

bool HomogeneousForm::is_zero() const {
  return std::all_of(coefficients.begin(), coefficients.end(),
                     [&](const Rational& c) { return sgn(field.from_rational(c)) == 0; });
}

unsigned multiplicity_at(const HomogeneousForm& h, const RatVector& p) {
  const Polynomial poly = h.polynomial();
  require(!poly.is_zero(), ErrorKind::InvalidArgument, "multiplicity of the zero form");
  require(p.size() == h.rank, ErrorKind::InvalidArgument, "point has the wrong length");
  std::size_t k = p.size();
  for (std::size_t i = 0; i < p.size(); ++i)
    if (sgn(h.field.from_rational(p[i])) != 0) {
      k = i;
      break;
    }
  require(k < p.size(), ErrorKind::InvalidArgument, "point vector is zero");
  // Column k of t is p, so t sends e_k to p; then look at the chart z_k = 1.
  Matrix t = Matrix::identity(h.field, h.rank);
  for (std::size_t i = 0; i < h.rank; ++i) t(i, k) = h.field.from_rational(p[i]);
  const Polynomial local = poly.linear_substitution(t).specialize(k, 1);
  return static_cast<unsigned>(local.lowest_degree());
}

DivisorClass orbit_closure_class(const HomogeneousForm& h, const ToricVectorBundle& b) {
  require(b.shift_normalized(), ErrorKind::InvalidArgument, "bundle shifts are not normalized");
  require_same_field(h.field, b.field);
  require(h.rank == b.rank, ErrorKind::InvalidArgument, "form and bundle ranks differ");
  require(!h.is_zero(), ErrorKind::InvalidArgument, "zero form defines no hypersurface");
  const ClassGroup g = class_group_projectivization(b);
  DivisorClass c = g.zero();
  add_scaled(c, g.o1(), Integer(h.degree));
  for (std::size_t j = 0; j < b.filtrations.size(); ++j) {
    const Subspace& w = b.filtrations[j].subspace;
    if (w.is_zero()) continue;
    require(w.dim() + 1 == b.rank, ErrorKind::OutOfScope,
            "ray " + std::to_string(j + 1) + " has a center that is not a point");
    const RatVector p = w.perp().basis_rows().front();
    add_scaled(c, g.ray_classes[j], -Integer(multiplicity_at(h, p)));
  }
  return c;
}

// --- phi* and effective generators -----------------------------------------

DivisorClass PhiStar::operator()(const DivisorClass& c) const {
  require(c.size() == source.rank(), ErrorKind::InvalidArgument, "class has wrong length");
  DivisorClass out = target.zero();
  add_scaled(out, target.o1(), c[0]);
  for (std::size_t i = 0; i < exceptional_rays.size(); ++i)
    add_scaled(out, target.ray_classes[exceptional_rays[i]], c[i + 1]);
  return out;
}

PhiStar phi_star(const ToricVectorBundle& b) {
  PhiStar phi;
  phi.target = class_group_projectivization(b);
  require(phi.target.phi_star_available, ErrorKind::OutOfScope,
          "phi* needs a maximal cone whose rays all carry the zero subspace");
  std::vector<Subspace> seen;
  for (std::size_t j = 0; j < b.filtrations.size(); ++j) {
    const Subspace& w = b.filtrations[j].subspace;
    if (w.is_zero()) continue;
    require(std::find(seen.begin(), seen.end(), w) == seen.end(), ErrorKind::OutOfScope,
            "phi* needs pairwise distinct subspaces; ray " + std::to_string(j + 1) + " repeats one");
    seen.push_back(w);
    phi.exceptional_rays.push_back(j);
  }
  phi.source = class_group_blowup(phi.exceptional_rays.size());
  phi.isomorphism = phi.source.rank() == phi.target.rank();
  return phi;
}

std::vector<TaggedClass> effective_generators(const ToricVectorBundle& b,
                                              const std::vector<DivisorClass>& supplied) {
  const PhiStar phi = phi_star(b);
  std::vector<TaggedClass> out;
  auto push = [&](DivisorClass c, std::string why) {
    for (const auto& t : out)
      if (t.cls == c) return;
    out.push_back({std::move(c), std::move(why)});
  };
  for (const auto& c : supplied) push(phi(c), "phi*(" + phi.source.format(c) + ")");
  for (std::size_t j = 0; j < b.filtrations.size(); ++j)
    if (b.filtrations[j].subspace.is_zero())
      push(phi.target.ray_classes[j], "D" + std::to_string(j + 1) + ", zero subspace");
  return out;
}

// --- (-1)-classes -------------------------------------------------------------

bool CurveClass::is_minus_one_class() const {
  Integer sq = degree * degree, lin = 3 * degree;
  for (const auto& m : multiplicities) {
    sq -= m * m;
    lin -= m;
  }
  return sq == -1 && lin == 1;
}

CurveClass CurveClass::canonical() const {
  CurveClass c = *this;
  std::sort(c.multiplicities.begin(), c.multiplicities.end(), std::greater<Integer>());
  return c;
}

std::string CurveClass::to_string() const {
  std::string s = "(" + degree.get_str() + ";";
  for (std::size_t i = 0; i < multiplicities.size(); ++i)
    s += (i ? "," : " ") + multiplicities[i].get_str();
  return s + ")";
}

bool operator<(const CurveClass& a, const CurveClass& b) {
  if (a.degree != b.degree) return a.degree < b.degree;
  return a.multiplicities < b.multiplicities;
}

CurveClass cremona(const CurveClass& c, std::size_t i, std::size_t j, std::size_t k) {
  const std::size_t s = c.multiplicities.size();
  require(i < s && j < s && k < s && i != j && j != k && i != k, ErrorKind::InvalidArgument,
          "Cremona move needs three distinct positions");
  const auto& m = c.multiplicities;
  CurveClass out = c;
  out.degree = 2 * c.degree - m[i] - m[j] - m[k];
  out.multiplicities[i] = c.degree - m[j] - m[k];
  out.multiplicities[j] = c.degree - m[i] - m[k];
  out.multiplicities[k] = c.degree - m[i] - m[j];
  return out;
}

MinusOneEnumeration minus_one_classes(std::size_t s, const EnumerationBudget& budget) {
  require(s >= 3, ErrorKind::InvalidArgument, "need at least three points");
  MinusOneEnumeration out;
  std::set<CurveClass> seen;
  std::vector<CurveClass> frontier;
  auto admit = [&](const CurveClass& c, std::vector<CurveClass>& level) {
    if (budget.max_degree && c.degree > *budget.max_degree) return;
    if (seen.count(c)) return;
    if (out.classes.size() >= budget.max_count) {
      out.truncated = true;
      return;
    }
    seen.insert(c);
    require(c.is_minus_one_class(), ErrorKind::Internal, "Cremona image " + c.to_string() +
                                                             " is not a (-1)-class");
    out.classes.push_back(c);
    out.with_permutations += arrangements_of(c.multiplicities);
    level.push_back(c);
  };
  auto close_level = [&](std::vector<CurveClass>& level) {
    std::sort(level.begin(), level.end());
    out.level_sizes.push_back(level.size());
    Integer top = level.empty() ? Integer(-1) : level.back().degree;
    out.level_max_degree.push_back(top);
  };

  CurveClass exceptional{0, std::vector<Integer>(s, 0)};
  exceptional.multiplicities[0] = -1;
  CurveClass line{1, std::vector<Integer>(s, 0)};
  line.multiplicities[0] = line.multiplicities[1] = 1;
  admit(exceptional.canonical(), frontier);
  admit(line.canonical(), frontier);
  close_level(frontier);

  for (std::size_t depth = 1; depth <= budget.max_depth && !frontier.empty(); ++depth) {
    std::vector<CurveClass> next;
    for (const CurveClass& c : frontier)
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j)
          for (std::size_t k = j + 1; k < s; ++k) admit(cremona(c, i, j, k).canonical(), next);
    close_level(next);
    frontier = std::move(next);
  }
  return out;
}

// --- non-polyhedrality evidence ----------------------------------------------

NonpolyhedralityReport nonpolyhedrality_report(const ToricVectorBundle& b,
                                               const EnumerationBudget& budget) {
  require(b.shift_normalized(), ErrorKind::InvalidArgument, "bundle shifts are not normalized");
  const PhiStar phi = phi_star(b);
  const Fan& f = b.fan;
  const Cone& sigma = phi.target.sigma;
  NonpolyhedralityReport rep;

  for (std::size_t j = 0; j < f.ray_count(); ++j) {
    const RatVector x = cone_coordinates(f, sigma, f.ray(j));
    const bool in = std::all_of(x.begin(), x.end(), [](const Rational& q) { return sgn(q) >= 0; });
    const bool in_neg = std::all_of(x.begin(), x.end(), [](const Rational& q) { return sgn(q) <= 0; });
    if (!in && !in_neg) rep.rays_outside.push_back(j);
  }
  rep.fan_hypothesis = rep.rays_outside.empty();
  if (!rep.fan_hypothesis)
    rep.notes.push_back(std::to_string(rep.rays_outside.size()) +
                        " rays lie in neither sigma nor -sigma");

  const long gap = static_cast<long>(f.ray_count()) - static_cast<long>(f.dim()) -
                   static_cast<long>(b.rank);
  if (gap > 0) {
    rep.threshold_sum = Rational(1) / Integer(b.rank) + Rational(1) / Integer(gap);
    rep.threshold_ok = *rep.threshold_sum <= Rational(1, 2);
    if (!rep.threshold_ok)
      rep.notes.push_back("1/r + 1/(n-d-r) = " + rep.threshold_sum->get_str() + " exceeds 1/2");
  } else {
    rep.notes.push_back("n - d - r = " + std::to_string(gap) + " is not positive");
  }

  const Arrangement a = from_bundle(b);
  if (a.point_only()) {
    rep.general_position = position_report(a).general_position;
    if (!rep.general_position) rep.notes.push_back("points are not in general position");
  } else {
    rep.notes.push_back("arrangement has centers that are not points");
  }
  rep.hypotheses_met = rep.fan_hypothesis && rep.threshold_ok && rep.general_position;
  if (!rep.hypotheses_met) {
    rep.notes.push_back("hypotheses not met");
    return rep;
  }
  if (b.rank != 3) {
    rep.notes.push_back("(-1)-class enumeration is only run for rank 3");
    return rep;
  }
  rep.enumeration = minus_one_classes(phi.exceptional_rays.size(), budget);
  for (const CurveClass& c : rep.enumeration->classes) {
    DivisorClass src = phi.source.zero();
    src[0] = c.degree;
    for (std::size_t i = 0; i < c.multiplicities.size(); ++i) src[i + 1] = -c.multiplicities[i];
    rep.images.push_back(phi(src));
  }
  rep.notes.push_back("evidence only: non-polyhedrality is proved for very general points");
  return rep;
}

}  // namespace tvb
