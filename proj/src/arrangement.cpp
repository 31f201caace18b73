#include "tvb/arrangement.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace tvb {

namespace {

Matrix matrix_of(Field field, std::size_t r, const std::vector<RatVector>& rows) {
  return Matrix::from_rows(field, rows, r);
}

std::size_t binom_capped(std::size_t n, std::size_t k, std::size_t cap) {
  if (k > n) return 0;
  std::size_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    out = out * (n - k + i) / i;
    if (out > cap) return cap + 1;
  }
  return out;
}

// Calls fn on every k-subset of {0..n-1} in lex order until fn returns false.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (!fn(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

constexpr std::size_t kSubsetCap = 2000000;

std::string join(const std::vector<std::size_t>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

std::optional<std::vector<std::size_t>> first_dependent_subset(Field field, std::size_t r,
                                                               const std::vector<RatVector>& pts) {
  const std::size_t k = std::min(pts.size(), r);
  require(binom_capped(pts.size(), k, kSubsetCap) <= kSubsetCap, ErrorKind::Unsupported,
          "too many subsets for the general position test");
  std::optional<std::vector<std::size_t>> witness;
  for_each_subset(pts.size(), k, [&](const std::vector<std::size_t>& idx) {
    std::vector<RatVector> rows;
    for (std::size_t i : idx) rows.push_back(pts[i]);
    if (rank(matrix_of(field, r, rows)) < k) {
      witness = idx;
      return false;
    }
    return true;
  });
  return witness;
}

// Coordinates of x in the basis given by the columns `cols`.
RatVector coordinates(Field field, std::size_t r, const std::vector<RatVector>& cols,
                      const RatVector& x) {
  const Matrix m = matrix_of(field, r, cols).transpose();
  auto sol = solve(m, x);
  require(sol.has_value(), ErrorKind::InvalidArgument, "frame vectors are not a basis");
  return *sol;
}

std::vector<RatVector> in_field(Field field, const std::vector<RatVector>& pts) {
  std::vector<RatVector> out;
  for (const auto& p : pts) {
    RatVector q;
    for (const auto& x : p) q.push_back(field.from_rational(x));
    out.push_back(q);
  }
  return out;
}

}  // namespace

// --- arrangements -----------------------------------------------------------

bool Arrangement::point_only() const {
  return std::all_of(members.begin(), members.end(),
                     [](const ProjectiveSubspace& m) { return m.projective_dim() == 0; });
}

std::vector<RatVector> Arrangement::points() const {
  require(point_only(), ErrorKind::OutOfScope, "arrangement has members that are not points");
  std::vector<RatVector> out;
  for (const auto& m : members) out.push_back(m.locus.basis_rows().front());
  return out;
}

std::vector<std::size_t> Arrangement::centers() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < members.size(); ++i)
    if (members[i].codim() >= 2) out.push_back(i);
  return out;
}

Arrangement from_bundle(const ToricVectorBundle& b) {
  Arrangement a{b.field, b.rank, {}, {}};
  for (std::size_t j = 0; j < b.filtrations.size(); ++j) {
    const Subspace& w = b.filtrations[j].subspace;
    if (w.is_zero()) {
      a.zero_rays.push_back(j);
      continue;
    }
    auto it = std::find_if(a.members.begin(), a.members.end(),
                           [&](const ProjectiveSubspace& m) { return m.subspace == w; });
    if (it != a.members.end()) {
      it->rays.push_back(j);
      it->label += "," + std::to_string(j + 1);
    } else {
      a.members.push_back({w, w.perp(), {j}, "ray " + std::to_string(j + 1)});
    }
  }
  return a;
}

IntersectionPoset intersection_closure(const Arrangement& a) {
  std::vector<Subspace> loci;
  std::vector<std::optional<std::size_t>> member_of;
  for (std::size_t i : a.centers()) {
    loci.push_back(a.members[i].locus);
    member_of.push_back(i);
  }
  // Pairwise meets until nothing new appears; new loci are pushed at the end,
  // so a single forward sweep over all pairs (i, j < current size) suffices.
  for (std::size_t j = 0; j < loci.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      Subspace meet = loci[i].intersect(loci[j]);
      if (meet.is_zero()) continue;
      if (std::find(loci.begin(), loci.end(), meet) == loci.end()) {
        loci.push_back(meet);
        member_of.push_back(std::nullopt);
      }
    }
  std::vector<std::size_t> order(loci.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return loci[x].dim() < loci[y].dim(); });
  IntersectionPoset out;
  for (std::size_t i : order) out.entries.push_back({loci[i], loci[i].dim() - 1, member_of[i]});
  const auto& e = out.entries;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (i == j || e[i].projective_dim >= e[j].projective_dim) continue;
      if (!e[j].locus.contains(e[i].locus)) continue;
      bool cover = true;
      for (std::size_t k = 0; k < e.size() && cover; ++k)
        if (k != i && k != j && e[k].projective_dim > e[i].projective_dim &&
            e[k].projective_dim < e[j].projective_dim && e[k].locus.contains(e[i].locus) &&
            e[j].locus.contains(e[k].locus))
          cover = false;
      if (cover) out.covers.emplace_back(i, j);
    }
  return out;
}

// --- position predicates ----------------------------------------------------

bool on_rational_normal_curve(Field field, std::size_t r, const std::vector<RatVector>& raw) {
  const auto pts = in_field(field, raw);
  const std::size_t s = pts.size();
  if (first_dependent_subset(field, r, pts)) return false;
  if (r <= 2 || s <= r + 2) return true;
  // Normalize so p_0..p_{r-1} are the coordinate points and p_r = (1,...,1).
  // Every rational normal curve through that frame is t -> (1/(t - a_i))_i;
  // p_{r+1} fixes a_i = -1/y_i at t = 0.
  std::vector<RatVector> basis(pts.begin(), pts.begin() + static_cast<long>(r));
  const RatVector c = coordinates(field, r, basis, pts[r]);
  for (std::size_t i = 0; i < r; ++i) {
    require(sgn(c[i]) != 0, ErrorKind::Internal, "degenerate frame");
    for (auto& x : basis[i]) x = field.mul(x, c[i]);
  }
  const RatVector y = coordinates(field, r, basis, pts[r + 1]);
  RatVector a;
  for (const auto& yi : y) a.push_back(field.neg(field.inv(yi)));
  const RatVector ones(r, Rational(1));
  for (std::size_t k = r + 2; k < s; ++k) {
    const RatVector z = coordinates(field, r, basis, pts[k]);
    // General position with the frame forces all coordinates nonzero.
    RatVector w;
    for (const auto& zi : z) w.push_back(field.inv(zi));
    if (rank(matrix_of(field, r, {w, ones, a})) > 2) return false;
  }
  return true;
}

PositionReport position_report(Field field, std::size_t r, const std::vector<RatVector>& raw) {
  for (const auto& p : raw)
    require(p.size() == r, ErrorKind::InvalidArgument, "point has the wrong number of coordinates");
  const auto pts = in_field(field, raw);
  PositionReport rep;
  rep.count = pts.size();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    require(rank(matrix_of(field, r, {pts[i]})) == 1, ErrorKind::InvalidArgument,
            "zero vector is not a point");
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (rank(matrix_of(field, r, {pts[i], pts[j]})) < 2) rep.distinct = false;
  }
  rep.dependent_subset = first_dependent_subset(field, r, pts);
  rep.general_position = !rep.dependent_subset.has_value();
  const std::size_t span = pts.empty() ? 0 : rank(matrix_of(field, r, pts));
  rep.collinear = span <= 2;
  rep.in_hyperplane = span < r;
  if (rep.in_hyperplane) {
    const auto normals = pts.empty() ? std::vector<RatVector>{RatVector(r, 0)}
                                     : kernel_basis(matrix_of(field, r, pts));
    RatVector n = normals.front();
    if (pts.empty()) n[0] = 1;
    rep.hyperplane = n;
  }
  rep.on_rational_normal_curve = rep.distinct && on_rational_normal_curve(field, r, pts);
  return rep;
}

PositionReport position_report(const Arrangement& a) {
  return position_report(a.field, a.rank, a.points());
}

// --- cubics through nine points ---------------------------------------------

CubicPencilReport cubic_pencil_check(Field field, const std::vector<RatVector>& raw) {
  require(raw.size() == 9, ErrorKind::InvalidArgument,
          "cubic pencil check needs exactly 9 points, got " + std::to_string(raw.size()));
  require(field.characteristic() != 2 && field.characteristic() != 3, ErrorKind::OutOfScope,
          "cubic pencil check excludes characteristic 2 and 3");
  const auto pts = in_field(field, raw);
  for (const auto& p : pts)
    require(p.size() == 3, ErrorKind::InvalidArgument, "points must lie in P^2");
  const auto pos = position_report(field, 3, pts);
  require(pos.distinct, ErrorKind::InvalidArgument, "the nine points are not distinct");

  const auto monos = monomials_of_degree(3, 3);
  std::vector<RatVector> rows;
  for (const auto& p : pts) {
    RatVector row;
    for (const auto& e : monos) row.push_back(Polynomial::monomial(field, e, 1).evaluate(p));
    rows.push_back(row);
  }
  const auto kernel = kernel_basis(matrix_of(field, monos.size(), rows));
  CubicPencilReport rep;
  rep.cubic_space_dim = kernel.size();
  for (const auto& k : kernel) rep.cubics.push_back(Polynomial::from_dense(field, 3, 3, k));
  if (rep.cubic_space_dim != 2) return rep;

  const Polynomial& f = rep.cubics[0];
  const Polynomial& g = rep.cubics[1];
  rep.on_both = true;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (sgn(f.evaluate(pts[i])) != 0 || sgn(g.evaluate(pts[i])) != 0) rep.on_both = false;
    RatVector gf, gg;
    for (std::size_t v = 0; v < 3; ++v) {
      gf.push_back(f.derivative(v).evaluate(pts[i]));
      gg.push_back(g.derivative(v).evaluate(pts[i]));
    }
    if (rank(matrix_of(field, 3, {gf, gg})) < 2) rep.non_transverse_points.push_back(i);
  }
  rep.transverse = rep.non_transverse_points.empty();
  // A common component would pass through some of the points (the residual
  // intersection has fewer than 9 points) and make the gradients dependent
  // there, so transversality at all nine rules it out.
  rep.complete_intersection = rep.on_both && rep.transverse;
  return rep;
}

// --- named configurations ---------------------------------------------------

Arrangement kapranov_arrangement(std::size_t r, Field field) {
  require(r >= 3, ErrorKind::InvalidArgument, "Kapranov arrangement needs r >= 3");
  std::vector<RatVector> frame;
  for (std::size_t i = 0; i < r; ++i) {
    RatVector e(r, 0);
    e[i] = 1;
    frame.push_back(e);
  }
  frame.push_back(RatVector(r, 1));
  Arrangement a{field, r, {}, {}};
  for (std::size_t k = 1; k + 2 <= r; ++k)
    for_each_subset(r + 1, k, [&](const std::vector<std::size_t>& idx) {
      std::vector<RatVector> rows;
      for (std::size_t i : idx) rows.push_back(frame[i]);
      const Subspace locus = Subspace::span(field, r, rows);
      a.members.push_back({locus.perp(), locus, {}, "p" + join(idx, ",p")});
      return true;
    });
  return a;
}

GeneralPoints very_general_points(std::size_t r, std::size_t s, std::uint64_t seed, Field field) {
  require(r >= 2 && s >= 1, ErrorKind::InvalidArgument, "need r >= 2 and s >= 1");
  std::mt19937_64 rng(seed);
  const long bound = field.is_rational() ? 20 : static_cast<long>(field.characteristic()) - 1;
  std::uniform_int_distribution<long> coef(field.is_rational() ? -bound : 0, bound);
  const bool curves = s >= r + 3 && r >= 3;
  const bool curves_checkable =
      curves && binom_capped(s, r + 3, 5000) <= 5000 &&
      binom_capped(s, std::min(s, r), kSubsetCap) <= kSubsetCap;
  GeneralPoints out;
  for (out.attempts = 1; out.attempts <= 10000; ++out.attempts) {
    std::vector<RatVector> pts;
    for (std::size_t i = 0; i < s; ++i) {
      RatVector p;
      do {
        p.clear();
        for (std::size_t j = 0; j < r; ++j) p.push_back(field.from_integer(Integer(coef(rng))));
      } while (std::all_of(p.begin(), p.end(), [](const Rational& x) { return sgn(x) == 0; }));
      pts.push_back(p);
    }
    const auto rep = position_report(field, r, pts);
    if (!rep.distinct || !rep.general_position) continue;
    bool curve_ok = true;
    if (curves_checkable)
      for_each_subset(s, r + 3, [&](const std::vector<std::size_t>& idx) {
        std::vector<RatVector> sub;
        for (std::size_t i : idx) sub.push_back(pts[i]);
        curve_ok = !on_rational_normal_curve(field, r, sub);
        return curve_ok;
      });
    if (!curve_ok) continue;
    out.points = pts;
    out.verified = {"pairwise distinct",
                    "linearly general position (every " + std::to_string(std::min(s, r)) +
                        " points independent)"};
    if (curves_checkable)
      out.verified.push_back("no " + std::to_string(r + 3) +
                             " points on a common rational normal curve");
    else if (curves)
      out.unchecked.push_back("no " + std::to_string(r + 3) +
                              " points on a common rational normal curve");
    out.unchecked.push_back("avoidance of the remaining countably many special loci");
    return out;
  }
  fail(ErrorKind::Unsupported, "no sufficiently general points found in " +
                                   std::to_string(out.attempts - 1) + " attempts over " +
                                   field.name());
}

LosevManinData losev_manin_subspaces(std::size_t d, Field field) {
  require(d >= 2, ErrorKind::InvalidArgument, "Losev-Manin example needs d >= 2");
  const Fan base = projective_space_fan(d);
  LosevManinData out;
  out.fan = barycentric_subdivision(base);
  // The barycentric rays follow the faces of the base fan ordered by size,
  // then lexicographically: every nonempty subset of {0..d} of size <= d.
  for (std::size_t k = 1; k <= d; ++k)
    for_each_subset(d + 1, k, [&](const std::vector<std::size_t>& idx) {
      out.subsets.push_back(idx);
      return true;
    });
  require(out.subsets.size() == out.fan.ray_count(), ErrorKind::Internal,
          "barycentric ray count mismatch");
  for (std::size_t j = 0; j < out.subsets.size(); ++j) {
    std::vector<RatVector> rows;
    IntVector sum(d, 0);
    for (std::size_t i : out.subsets[j]) {
      rows.push_back(to_rational(base.ray(i)));
      sum = add(sum, base.ray(i));
    }
    require(primitive(sum) == out.fan.ray(j), ErrorKind::Internal, "barycentric ray order mismatch");
    out.subspaces.push_back(Subspace::span(field, d, rows).perp());
  }
  return out;
}

}  // namespace tvb
