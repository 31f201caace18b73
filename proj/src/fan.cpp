#include "tvb/fan.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

#include "tvb/exact_lp.hpp"

namespace tvb {

namespace {

const Field kQ = Field::rationals();

std::string cone_name(const Cone& c) {
  std::string s = "cone{";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + "}";
}

Matrix column_matrix(const Fan& f, const Cone& c) {
  Matrix m(kQ, f.dim(), c.size());
  for (std::size_t j = 0; j < c.size(); ++j)
    for (std::size_t i = 0; i < f.dim(); ++i) m(i, j) = f.ray(c[j])[i];
  return m;
}

bool independent(const Fan& f, const Cone& c) {
  return c.size() <= f.dim() && rank(column_matrix(f, c)) == c.size();
}

// Exact coefficients of v in the generators of a simplicial cone, if v lies
// in their span.
std::optional<RatVector> coefficients_in(const Fan& f, const Cone& c, const IntVector& v) {
  return solve(column_matrix(f, c), to_rational(v));
}

// Rows u_k with <u_k, v_j> = delta_kj for a full-dimensional simplicial cone.
std::vector<RatVector> dual_basis(const Fan& f, const Cone& c) {
  Matrix g(kQ, c.size(), f.dim());
  for (std::size_t k = 0; k < c.size(); ++k)
    for (std::size_t i = 0; i < f.dim(); ++i) g(k, i) = f.ray(c[k])[i];
  auto inv = inverse(g.transpose());
  require(inv.has_value(), ErrorKind::InvalidArgument, "cone is not full-dimensional simplicial");
  return inv->row_list();
}

Rational eval(const RatVector& u, const IntVector& v) {
  Rational s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

bool contains(const Cone& big, std::size_t i) {
  return std::binary_search(big.begin(), big.end(), i);
}

Cone intersect(const Cone& a, const Cone& b) {
  Cone out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Sum of the dual vectors of a's rays outside `shared`: vanishes on shared
// rays and equals 1 on a's others.
RatVector dual_sum(const Fan& f, const Cone& a, const std::vector<RatVector>& duals,
                   const Cone& shared) {
  RatVector func(f.dim(), 0);
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!contains(shared, a[k]))
      for (std::size_t i = 0; i < f.dim(); ++i) func[i] += duals[k][i];
  return func;
}

// True if `func` vanishes on shared rays (by construction), is positive on
// a's other rays and negative on b's other rays.
bool separates(const Fan& f, const RatVector& func, const Cone& a, const Cone& b,
               const Cone& shared) {
  for (std::size_t j : a)
    if (!contains(shared, j) && sgn(eval(func, f.ray(j))) <= 0) return false;
  for (std::size_t j : b)
    if (!contains(shared, j) && sgn(eval(func, f.ray(j))) >= 0) return false;
  return true;
}

// Exact LP: is there a point of a ∩ b outside the cone on the shared rays?
bool meets_outside_shared(const Fan& f, const Cone& a, const Cone& b, const Cone& shared) {
  lp::Problem p;
  p.num_vars = a.size() + b.size();
  for (std::size_t i = 0; i < f.dim(); ++i) {
    RatVector row(p.num_vars, 0);
    for (std::size_t k = 0; k < a.size(); ++k) row[k] = f.ray(a[k])[i];
    for (std::size_t k = 0; k < b.size(); ++k) row[a.size() + k] = -Rational(f.ray(b[k])[i]);
    p.eq_rows.push_back(row);
    p.eq_rhs.push_back(0);
  }
  RatVector norm(p.num_vars, 0);
  bool any = false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!contains(shared, a[k])) {
      norm[k] = 1;
      any = true;
    }
  if (!any) return false;  // a is a face of b's shared part already
  p.eq_rows.push_back(norm);
  p.eq_rhs.push_back(1);
  return lp::feasible(p);
}

// `da`, `db` are dual bases of full-dimensional cones, or empty.
bool intersection_is_face(const Fan& f, const Cone& a, const std::vector<RatVector>& da,
                          const Cone& b, const std::vector<RatVector>& db) {
  const Cone shared = intersect(a, b);
  if (!da.empty() && !db.empty()) {
    // Cheap separating functionals first; the LP is the exact fallback.
    const RatVector fa = dual_sum(f, a, da, shared);
    const RatVector fb = dual_sum(f, b, db, shared);
    RatVector diff(f.dim());
    for (std::size_t i = 0; i < f.dim(); ++i) diff[i] = fa[i] - fb[i];
    if (separates(f, fa, a, b, shared) || separates(f, diff, a, b, shared)) return true;
    RatVector neg_fb(f.dim());
    for (std::size_t i = 0; i < f.dim(); ++i) neg_fb[i] = -fb[i];
    if (separates(f, neg_fb, a, b, shared)) return true;
  }
  return !meets_outside_shared(f, a, b, shared) && !meets_outside_shared(f, b, a, shared);
}

// Face-to-face certificate for complete fans: every cone full-dimensional,
// every wall in exactly two cones lying on opposite sides of it, and a generic
// point covered exactly once. Local convexity at walls makes the covering
// multiplicity constant off the walls, and multiplicity one forces every
// pairwise intersection to be a common face.
bool complete_degree_one(const Fan& f, const std::vector<std::vector<RatVector>>& duals) {
  const auto& cones = f.max_cones();
  for (const auto& d : duals)
    if (d.empty()) return false;
  std::map<Cone, std::vector<std::pair<std::size_t, std::size_t>>> walls;
  for (std::size_t c = 0; c < cones.size(); ++c)
    for (std::size_t skip = 0; skip < cones[c].size(); ++skip) {
      Cone facet = cones[c];
      facet.erase(facet.begin() + static_cast<long>(skip));
      walls[facet].emplace_back(c, skip);
    }
  for (const auto& [facet, owners] : walls) {
    if (owners.size() != 2) return false;
    // Dual vector of sigma's opposite ray is the wall normal pointing into
    // sigma; tau's opposite ray must lie strictly on the other side.
    const auto [s, ks] = owners[0];
    const auto [t, kt] = owners[1];
    if (sgn(eval(duals[s][ks], f.ray(cones[t][kt]))) >= 0) return false;
  }
  // Generic point: moment-curve coordinates avoiding every facet hyperplane.
  for (long base = 7; base < 7 + 64; ++base) {
    IntVector p(f.dim());
    Integer x = 1;
    for (std::size_t i = 0; i < f.dim(); ++i) {
      p[i] = x;
      x *= base;
      if (i % 2) p[i] = -p[i];
    }
    bool generic = true;
    std::size_t covered = 0;
    for (std::size_t c = 0; c < cones.size() && generic; ++c) {
      bool inside = true;
      for (const auto& u : duals[c]) {
        const int sg = sgn(eval(u, p));
        if (sg == 0) generic = false;
        if (sg < 0) inside = false;
      }
      if (inside) ++covered;
    }
    if (generic) return covered == 1;
  }
  return false;
}

std::vector<Cone> combinations(std::size_t n, std::size_t k) {
  std::vector<Cone> out;
  Cone cur(k);
  std::iota(cur.begin(), cur.end(), 0);
  if (k > n) return out;
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

IntVector unit(std::size_t d, std::size_t i, int sign = 1) {
  IntVector v(d, 0);
  v[i] = sign;
  return v;
}

}  // namespace

Fan::Fan(std::size_t dim, std::vector<IntVector> rays, std::vector<Cone> max_cones)
    : dim_(dim), rays_(std::move(rays)), max_cones_(std::move(max_cones)) {
  for (auto& c : max_cones_) std::sort(c.begin(), c.end());
}

IntMatrix Fan::generators(const Cone& c) const {
  IntMatrix out;
  for (std::size_t i : c) out.push_back(rays_.at(i));
  return out;
}

std::optional<std::size_t> Fan::ray_index(const IntVector& v) const {
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (rays_[i] == v) return i;
  return std::nullopt;
}

ValidationReport validate_fan(const Fan& f, bool pairwise_only) {
  ValidationReport rep;
  auto add = [&](std::string kind, std::string detail) {
    rep.violations.push_back({std::move(kind), std::move(detail)});
  };
  if (f.dim() == 0) add("dimension", "lattice dimension must be positive");
  bool rays_ok = true;
  for (std::size_t i = 0; i < f.ray_count(); ++i) {
    const IntVector& v = f.ray(i);
    if (v.size() != f.dim()) {
      add("ray dimension", "ray " + std::to_string(i) + " has " + std::to_string(v.size()) +
                               " coordinates, expected " + std::to_string(f.dim()));
      rays_ok = false;
      continue;
    }
    if (is_zero(v)) {
      add("zero ray", "ray " + std::to_string(i) + " is zero");
      rays_ok = false;
      continue;
    }
    if (content(v) != 1)
      add("non-primitive ray", "ray " + std::to_string(i) + " " + to_string(v) +
                                   " is not primitive");
    for (std::size_t j = 0; j < i; ++j)
      if (f.ray(j) == v)
        add("duplicate ray", "rays " + std::to_string(j) + " and " + std::to_string(i) +
                                 " are both " + to_string(v));
  }
  if (!rays_ok) return rep;

  std::vector<bool> usable(f.max_cones().size(), true);
  std::set<Cone> seen;
  for (std::size_t c = 0; c < f.max_cones().size(); ++c) {
    const Cone& cone = f.max_cones()[c];
    const std::string name = "maximal cone " + std::to_string(c) + " " + cone_name(cone);
    if (cone.empty()) {
      add("empty cone", name + " has no rays");
      usable[c] = false;
      continue;
    }
    if (std::adjacent_find(cone.begin(), cone.end()) != cone.end()) {
      add("repeated index", name + " lists a ray twice");
      usable[c] = false;
      continue;
    }
    if (cone.back() >= f.ray_count()) {
      add("index out of range", name + " refers to a missing ray");
      usable[c] = false;
      continue;
    }
    if (!seen.insert(cone).second) {
      add("duplicate cone", name + " is listed twice");
      usable[c] = false;
      continue;
    }
    if (!independent(f, cone)) {
      add("non-simplicial cone", name + " has linearly dependent generators");
      usable[c] = false;
    }
  }
  std::vector<std::vector<RatVector>> duals(f.max_cones().size());
  for (std::size_t c = 0; c < f.max_cones().size(); ++c)
    if (usable[c] && f.max_cones()[c].size() == f.dim()) duals[c] = dual_basis(f, f.max_cones()[c]);
  const bool all_usable = std::all_of(usable.begin(), usable.end(), [](bool b) { return b; });
  if (!pairwise_only && all_usable && !f.max_cones().empty() && complete_degree_one(f, duals))
    return rep;
  for (std::size_t a = 0; a < f.max_cones().size(); ++a) {
    if (!usable[a]) continue;
    for (std::size_t b = a + 1; b < f.max_cones().size(); ++b) {
      if (!usable[b]) continue;
      const Cone& ca = f.max_cones()[a];
      const Cone& cb = f.max_cones()[b];
      const Cone shared = intersect(ca, cb);
      if (shared == ca || shared == cb) {
        add("nested cones", cone_name(ca) + " and " + cone_name(cb) +
                                " are not both maximal");
        continue;
      }
      if (!intersection_is_face(f, ca, duals[a], cb, duals[b]))
        add("intersection not a face", cone_name(ca) + " and " + cone_name(cb) +
                                           " meet outside their common face");
    }
  }
  return rep;
}

void require_valid(const Fan& f) {
  const auto rep = validate_fan(f);
  if (!rep.ok())
    fail(ErrorKind::Validation,
         "invalid fan: " + rep.violations.front().kind + ": " + rep.violations.front().detail);
}

SmoothnessResult is_smooth(const Fan& f) {
  for (const Cone& c : f.max_cones()) {
    const auto divisors = elementary_divisors(f.generators(c), f.dim());
    const bool unimodular =
        divisors.size() == c.size() &&
        std::all_of(divisors.begin(), divisors.end(), [](const Integer& x) { return x == 1; });
    if (!unimodular) return {false, c};
  }
  return {true, std::nullopt};
}

bool is_complete(const Fan& f) {
  const std::size_t d = f.dim();
  if (f.max_cones().empty()) return false;
  for (const Cone& c : f.max_cones()) {
    if (c.size() > d || !independent(f, c))
      fail(ErrorKind::Unsupported, "completeness test requires a simplicial fan; " +
                                       cone_name(c) + " is not simplicial");
    if (c.size() != d) return false;
  }
  std::map<Cone, std::vector<std::size_t>> walls;
  for (std::size_t c = 0; c < f.max_cones().size(); ++c) {
    const Cone& cone = f.max_cones()[c];
    for (std::size_t skip = 0; skip < cone.size(); ++skip) {
      Cone facet;
      for (std::size_t k = 0; k < cone.size(); ++k)
        if (k != skip) facet.push_back(cone[k]);
      walls[facet].push_back(c);
    }
  }
  std::vector<std::vector<std::size_t>> adj(f.max_cones().size());
  for (const auto& [facet, owners] : walls) {
    if (owners.size() != 2) return false;
    adj[owners[0]].push_back(owners[1]);
    adj[owners[1]].push_back(owners[0]);
  }
  std::vector<bool> reached(f.max_cones().size(), false);
  std::queue<std::size_t> todo;
  todo.push(0);
  reached[0] = true;
  std::size_t count = 1;
  while (!todo.empty()) {
    const std::size_t c = todo.front();
    todo.pop();
    for (std::size_t n : adj[c])
      if (!reached[n]) {
        reached[n] = true;
        ++count;
        todo.push(n);
      }
  }
  return count == f.max_cones().size();
}

ProjectivityResult is_projective(const Fan& f) {
  require(is_complete(f), ErrorKind::InvalidArgument, "projectivity test requires a complete fan");
  const std::size_t n = f.ray_count();
  // Variables: one support value per ray (free), then the slack t.
  lp::Problem p;
  p.num_vars = n + 1;
  p.free.assign(n + 1, true);
  p.free[n] = false;
  std::map<Cone, std::vector<std::size_t>> walls;
  for (std::size_t c = 0; c < f.max_cones().size(); ++c) {
    const Cone& cone = f.max_cones()[c];
    for (std::size_t skip = 0; skip < cone.size(); ++skip) {
      Cone facet = cone;
      facet.erase(facet.begin() + static_cast<long>(skip));
      walls[facet].push_back(c);
    }
  }
  std::vector<std::vector<RatVector>> duals;
  for (const Cone& c : f.max_cones()) duals.push_back(dual_basis(f, c));
  for (const auto& [facet, owners] : walls) {
    const Cone& sigma = f.max_cones()[owners[0]];
    const Cone& tau = f.max_cones()[owners[1]];
    std::size_t opposite = 0;
    for (std::size_t j : tau)
      if (!contains(facet, j)) opposite = j;
    // Linear extension of the sigma values, evaluated at the opposite ray,
    // must exceed that ray's value by at least t:  t + phi_w - sum c_k phi_k <= 0.
    RatVector row(n + 1, 0);
    for (std::size_t k = 0; k < sigma.size(); ++k)
      row[sigma[k]] -= eval(duals[owners[0]][k], f.ray(opposite));
    row[opposite] += 1;
    row[n] = 1;
    p.le_rows.push_back(row);
    p.le_rhs.push_back(0);
  }
  RatVector cap(n + 1, 0);
  cap[n] = 1;
  p.le_rows.push_back(cap);
  p.le_rhs.push_back(1);
  p.objective = cap;
  const lp::Solution s = lp::maximize(p);
  ProjectivityResult out;
  if (s.status == lp::Status::Optimal && sgn(s.value) > 0) {
    out.projective = true;
    out.support.assign(s.x.begin(), s.x.begin() + static_cast<long>(n));
  }
  return out;
}

ContainingCone minimal_containing_cone(const Fan& f, const IntVector& v) {
  require(v.size() == f.dim(), ErrorKind::InvalidArgument, "vector has wrong dimension");
  require(!is_zero(v), ErrorKind::InvalidArgument, "vector must be nonzero");
  for (const Cone& c : f.max_cones()) {
    const auto coeffs = coefficients_in(f, c, v);
    if (!coeffs) continue;
    if (std::any_of(coeffs->begin(), coeffs->end(), [](const Rational& x) { return sgn(x) < 0; }))
      continue;
    ContainingCone out;
    for (std::size_t k = 0; k < c.size(); ++k)
      if (sgn((*coeffs)[k]) > 0) {
        out.cone.push_back(c[k]);
        out.coefficients.push_back((*coeffs)[k]);
      }
    return out;
  }
  fail(ErrorKind::InvalidArgument, "vector " + to_string(v) + " lies outside the fan's support");
}

Fan stellar_subdivide(const Fan& f, const IntVector& v) {
  require(v.size() == f.dim() && !is_zero(v) && content(v) == 1, ErrorKind::InvalidArgument,
          "subdivision vector must be primitive of the fan's dimension");
  require(!f.ray_index(v).has_value(), ErrorKind::InvalidArgument,
          "vector " + to_string(v) + " is already a ray");
  const Cone tau = minimal_containing_cone(f, v).cone;
  const std::size_t fresh = f.ray_count();
  std::vector<IntVector> rays = f.rays();
  rays.push_back(v);
  std::vector<Cone> cones;
  for (const Cone& sigma : f.max_cones()) {
    if (!std::includes(sigma.begin(), sigma.end(), tau.begin(), tau.end())) {
      cones.push_back(sigma);
      continue;
    }
    for (std::size_t i : tau) {
      Cone c;
      for (std::size_t j : sigma)
        if (j != i) c.push_back(j);
      c.push_back(fresh);
      cones.push_back(c);
    }
  }
  Fan out(f.dim(), std::move(rays), std::move(cones));
  require_valid(out);
  return out;
}

bool is_smooth_star_point(const Fan& f, const IntVector& v) {
  const ContainingCone c = minimal_containing_cone(f, v);
  return std::all_of(c.coefficients.begin(), c.coefficients.end(),
                     [](const Rational& x) { return x == 1; });
}

Fan barycentric_subdivision(const Fan& f) {
  std::set<Cone> face_set;
  for (const Cone& c : f.max_cones()) {
    const std::size_t k = c.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
      Cone face;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (std::size_t{1} << i)) face.push_back(c[i]);
      face_set.insert(face);
    }
  }
  std::vector<Cone> faces(face_set.begin(), face_set.end());
  std::stable_sort(faces.begin(), faces.end(),
                   [](const Cone& a, const Cone& b) { return a.size() < b.size(); });
  std::map<Cone, std::size_t> index;
  std::vector<IntVector> rays;
  for (const Cone& face : faces) {
    IntVector sum(f.dim(), 0);
    for (std::size_t i : face) sum = add(sum, f.ray(i));
    index[face] = rays.size();
    rays.push_back(primitive(sum));
  }
  std::vector<Cone> cones;
  std::set<Cone> emitted;
  for (const Cone& c : f.max_cones()) {
    Cone order = c;
    do {
      Cone flag_cone;
      Cone prefix;
      for (std::size_t i : order) {
        prefix.push_back(i);
        Cone sorted = prefix;
        std::sort(sorted.begin(), sorted.end());
        flag_cone.push_back(index.at(sorted));
      }
      std::sort(flag_cone.begin(), flag_cone.end());
      if (emitted.insert(flag_cone).second) cones.push_back(flag_cone);
    } while (std::next_permutation(order.begin(), order.end()));
  }
  Fan out(f.dim(), std::move(rays), std::move(cones));
  require_valid(out);
  return out;
}

Fan extend_fan_one_dimension(const Fan& f) {
  require(is_smooth(f).smooth, ErrorKind::InvalidArgument, "fan extension requires a smooth fan");
  require(is_complete(f), ErrorKind::InvalidArgument, "fan extension requires a complete fan");
  const std::size_t d = f.dim();
  std::vector<IntVector> rays;
  for (const IntVector& v : f.rays()) {
    IntVector w = v;
    w.push_back(0);
    rays.push_back(w);
  }
  const std::size_t up = rays.size();
  rays.push_back(IntVector(d + 1, 1));
  IntVector down(d + 1, 1);
  down[d] = -1;
  rays.push_back(down);
  std::vector<Cone> cones;
  for (std::size_t apex : {up, up + 1})
    for (const Cone& c : f.max_cones()) {
      Cone joined = c;
      joined.push_back(apex);
      cones.push_back(joined);
    }
  Fan out(d + 1, std::move(rays), std::move(cones));
  require_valid(out);
  return out;
}

Fan reorder_rays(const Fan& f, const std::vector<std::size_t>& order) {
  require(order.size() == f.ray_count(), ErrorKind::InvalidArgument,
          "ray permutation has wrong length");
  std::vector<std::size_t> where(f.ray_count(), f.ray_count());
  std::vector<IntVector> rays;
  for (std::size_t k = 0; k < order.size(); ++k) {
    require(order[k] < f.ray_count() && where[order[k]] == f.ray_count(),
            ErrorKind::InvalidArgument, "ray permutation is not a permutation");
    where[order[k]] = k;
    rays.push_back(f.ray(order[k]));
  }
  std::vector<Cone> cones;
  for (const Cone& c : f.max_cones()) {
    Cone m;
    for (std::size_t i : c) m.push_back(where[i]);
    std::sort(m.begin(), m.end());
    cones.push_back(m);
  }
  std::sort(cones.begin(), cones.end());
  return Fan(f.dim(), std::move(rays), std::move(cones));
}

std::set<std::vector<IntVector>> canonical_cones(const Fan& f) {
  std::set<std::vector<IntVector>> out;
  for (const Cone& c : f.max_cones()) {
    std::vector<IntVector> g = f.generators(c);
    std::sort(g.begin(), g.end());
    out.insert(g);
  }
  return out;
}

Fan projective_space_fan(std::size_t d) {
  require(d >= 1, ErrorKind::InvalidArgument, "projective space needs dimension >= 1");
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < d; ++i) rays.push_back(unit(d, i));
  rays.push_back(IntVector(d, -1));
  Fan out(d, std::move(rays), combinations(d + 1, d));
  require_valid(out);
  return out;
}

Fan product_p1_fan(std::size_t d) {
  require(d >= 1, ErrorKind::InvalidArgument, "product needs at least one factor");
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < d; ++i) {
    rays.push_back(unit(d, i, 1));
    rays.push_back(unit(d, i, -1));
  }
  std::vector<Cone> cones;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    Cone c;
    for (std::size_t i = 0; i < d; ++i) c.push_back(2 * i + ((mask >> (d - 1 - i)) & 1u));
    cones.push_back(c);
  }
  Fan out(d, std::move(rays), std::move(cones));
  require_valid(out);
  return out;
}

Fan p1xp1_blowup_fan() {
  Fan f = product_p1_fan(2);  // (1,0),(-1,0),(0,1),(0,-1)
  for (const IntVector& v : std::vector<IntVector>{
           {1, 1}, {2, 1}, {1, 2}, {3, 1}, {3, 2}, {2, 3}, {1, 3}})
    f = stellar_subdivide(f, v);
  return reorder_rays(f, {0, 2, 4, 5, 6, 7, 8, 9, 10, 1, 3});
}

std::vector<IntVector> cotangent_threefold_vectors() {
  return {{1, 1, 2},   {0, -1, 1}, {1, 0, 1},   {1, -1, 1}, {-1, -2, -1},
          {-1, -1, 0}, {-1, -1, 1}, {-1, 0, 1}, {-1, 1, 1}, {0, 1, 1}};
}

FanSequence cotangent_threefold_sequence() {
  FanSequence seq;
  Fan start(3, {{0, 0, 1}, {0, 1, 0}, {1, 1, 1}, {-1, -2, -2}}, combinations(4, 3));
  require_valid(start);
  seq.fans.push_back(start);
  for (const IntVector& v : cotangent_threefold_vectors()) {
    const Fan& prev = seq.fans.back();
    SubdivisionStep step;
    step.vector = v;
    step.center = minimal_containing_cone(prev, v);
    step.smooth_star_point = is_smooth_star_point(prev, v);
    seq.steps.push_back(step);
    seq.fans.push_back(stellar_subdivide(prev, v));
  }
  return seq;
}

}  // namespace tvb
