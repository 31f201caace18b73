#include "tvb/klyachko.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tvb/polynomial.hpp"

namespace tvb {

// --- Subspace ---------------------------------------------------------------

Subspace::Subspace(Field field, std::size_t ambient)
    : field_(field), ambient_(ambient), basis_(field, 0, ambient) {}

Subspace Subspace::span(Field field, std::size_t ambient, const std::vector<RatVector>& rows) {
  for (const auto& r : rows)
    require(r.size() == ambient, ErrorKind::InvalidArgument,
            "spanning vector has " + std::to_string(r.size()) + " entries, expected " +
                std::to_string(ambient));
  Subspace s(field, ambient);
  s.basis_ = row_space_canonical(Matrix::from_rows(field, rows, ambient));
  return s;
}

Subspace Subspace::full(Field field, std::size_t ambient) {
  Subspace s(field, ambient);
  s.basis_ = Matrix::identity(field, ambient);
  return s;
}

bool Subspace::contains(const RatVector& v) const {
  std::vector<RatVector> rows = basis_rows();
  rows.push_back(v);
  return rank(Matrix::from_rows(field_, rows, ambient_)) == dim();
}

bool Subspace::contains(const Subspace& other) const {
  require_same_field(field_, other.field_);
  return (*this + other).dim() == dim();
}

Subspace Subspace::operator+(const Subspace& other) const {
  require_same_field(field_, other.field_);
  require(ambient_ == other.ambient_, ErrorKind::InvalidArgument, "ambient dimension mismatch");
  std::vector<RatVector> rows = basis_rows();
  for (auto& r : other.basis_rows()) rows.push_back(r);
  return span(field_, ambient_, rows);
}

Subspace Subspace::perp() const {
  if (is_zero()) return full(field_, ambient_);
  return span(field_, ambient_, kernel_basis(basis_));
}

Subspace Subspace::intersect(const Subspace& other) const {
  return (perp() + other.perp()).perp();
}

std::string Subspace::to_string() const {
  std::string s = "span{";
  const auto rows = basis_rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) s += ", ";
    s += tvb::to_string(rows[i]);
  }
  return s + "}";
}

// --- filtrations and bundles ------------------------------------------------

Subspace RayFiltration::at(long k) const {
  if (k <= shift) return Subspace::full(subspace.field(), subspace.ambient());
  if (k <= shift + static_cast<long>(step)) return subspace;
  return Subspace(subspace.field(), subspace.ambient());
}

bool ToricVectorBundle::shift_normalized() const {
  return std::all_of(filtrations.begin(), filtrations.end(),
                     [](const RayFiltration& f) { return f.shift == 0; });
}

ToricVectorBundle standard_bundle(const Fan& fan, std::size_t rank, Field field,
                                  const std::vector<Subspace>& subspaces,
                                  const std::vector<unsigned>& steps) {
  require(rank >= 1, ErrorKind::InvalidArgument, "bundle rank must be positive");
  require(subspaces.size() == fan.ray_count(), ErrorKind::InvalidArgument,
          "expected " + std::to_string(fan.ray_count()) + " filtrations, got " +
              std::to_string(subspaces.size()));
  require(steps.empty() || steps.size() == fan.ray_count(), ErrorKind::InvalidArgument,
          "step list length does not match the ray count");
  ToricVectorBundle b{fan, rank, field, {}};
  for (std::size_t j = 0; j < subspaces.size(); ++j) {
    const Subspace& s = subspaces[j];
    require(s.field() == field, ErrorKind::FieldMismatch,
            "filtration " + std::to_string(j) + " is over " + s.field().name() +
                ", bundle is over " + field.name());
    require(s.ambient() == rank, ErrorKind::InvalidArgument,
            "filtration " + std::to_string(j) + " lives in dimension " +
                std::to_string(s.ambient()) + ", bundle rank is " + std::to_string(rank));
    require(s.dim() < rank, ErrorKind::InvalidArgument,
            "filtration " + std::to_string(j) +
                " uses the full space; express it as a shift instead");
    const unsigned a = steps.empty() ? 1u : steps[j];
    require(a >= 1, ErrorKind::InvalidArgument, "step lengths must be positive");
    b.filtrations.push_back({s, a, 0});
  }
  return b;
}

std::vector<long> normalize_shifts(ToricVectorBundle& b) {
  std::vector<long> removed;
  for (auto& f : b.filtrations) {
    removed.push_back(f.shift);
    f.shift = 0;
  }
  return removed;
}

CotangentBundle cotangent_bundle(const Fan& fan, Field field) {
  require(is_smooth(fan).smooth, ErrorKind::InvalidArgument, "cotangent bundle needs a smooth fan");
  const std::size_t d = fan.dim();
  CotangentBundle out;
  out.bundle = ToricVectorBundle{fan, d, field, {}};
  for (const IntVector& v : fan.rays()) {
    const Subspace normal = Subspace::span(field, d, {to_rational(v)});
    out.bundle.filtrations.push_back({normal.perp(), 1, -1});
  }
  for (std::size_t i = 0; i < fan.ray_count(); ++i)
    for (std::size_t j = i + 1; j < fan.ray_count(); ++j)
      if (out.bundle.filtrations[i].subspace == out.bundle.filtrations[j].subspace)
        out.coincidences.push_back({i, j, fan.ray(i) == negated(fan.ray(j))});
  return out;
}

ToricVectorBundle tangent_bundle(const Fan& fan, Field field) {
  require(is_smooth(fan).smooth, ErrorKind::InvalidArgument, "tangent bundle needs a smooth fan");
  const std::size_t d = fan.dim();
  ToricVectorBundle b{fan, d, field, {}};
  for (const IntVector& v : fan.rays()) {
    const Subspace line = Subspace::span(field, d, {to_rational(v)});
    // In rank 1 the line is all of F: F^rho(1) = F becomes a shift.
    if (line.is_full())
      b.filtrations.push_back({Subspace(field, d), 1, 1});
    else
      b.filtrations.push_back({line, 1, 0});
  }
  return b;
}

// --- compatibility ----------------------------------------------------------

std::string to_string(CompatibilityTier t) {
  switch (t) {
    case CompatibilityTier::Surface: return "surface";
    case CompatibilityTier::TransverseHyperplanes: return "transverse-hyperplanes";
    case CompatibilityTier::AdaptedBasis: return "adapted-basis";
  }
  return "unknown";
}

std::optional<std::vector<RatVector>> adapted_basis(Field field, std::size_t r,
                                                    const std::vector<Subspace>& family) {
  const std::size_t m = family.size();
  require(m < 8 * sizeof(std::size_t) - 1, ErrorKind::Unsupported,
          "too many subspaces for adapted-basis construction");
  // A_J = intersection over J (A_empty = F). Visiting J by decreasing size,
  // pick a complement C_J of sum_{J' > J} A_{J'} inside A_J; the union of
  // bases of all C_J is adapted when such a basis exists.
  const std::size_t subsets = std::size_t{1} << m;
  std::vector<Subspace> meet(subsets);
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    Subspace s = Subspace::full(field, r);
    for (std::size_t j = 0; j < m; ++j)
      if (mask & (std::size_t{1} << j)) s = s.intersect(family[j]);
    meet[mask] = s;
  }
  std::vector<std::size_t> order(subsets);
  for (std::size_t i = 0; i < subsets; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [](std::size_t a, std::size_t b) {
    return __builtin_popcountll(a) > __builtin_popcountll(b);
  });
  std::vector<RatVector> lines;
  for (std::size_t mask : order) {
    Subspace above(field, r);
    for (std::size_t sup = 0; sup < subsets; ++sup)
      if (sup != mask && (sup & mask) == mask) above = above + meet[sup];
    std::vector<RatVector> current = above.basis_rows();
    std::size_t have = above.dim();
    for (const RatVector& v : meet[mask].basis_rows()) {
      current.push_back(v);
      if (rank(Matrix::from_rows(field, current, r)) > have) {
        ++have;
        lines.push_back(v);
      } else {
        current.pop_back();
      }
    }
  }
  if (lines.size() != r || rank(Matrix::from_rows(field, lines, r)) != r) return std::nullopt;
  for (const Subspace& w : family) {
    std::vector<RatVector> inside;
    for (const RatVector& l : lines)
      if (w.contains(l)) inside.push_back(l);
    if (inside.size() != w.dim()) return std::nullopt;
  }
  return lines;
}

bool hyperplanes_transverse(const ToricVectorBundle& b, std::size_t cone_index) {
  const Cone& cone = b.fan.max_cones().at(cone_index);
  std::vector<Subspace> distinct;
  for (std::size_t j : cone) {
    const Subspace& w = b.filtrations[j].subspace;
    if (w.is_zero()) continue;
    require(w.dim() + 1 == b.rank, ErrorKind::InvalidArgument,
            "transversality test applies to hyperplanes only");
    if (std::find(distinct.begin(), distinct.end(), w) == distinct.end()) distinct.push_back(w);
  }
  std::vector<RatVector> normals;
  for (const Subspace& w : distinct) normals.push_back(w.perp().basis_rows().front());
  return normals.empty() || rank(Matrix::from_rows(b.field, normals, b.rank)) == normals.size();
}

namespace {

std::optional<std::vector<IntVector>> characters_for(const ToricVectorBundle& b, const Cone& cone,
                                                     const std::vector<RatVector>& lines) {
  IntMatrix rows;
  for (std::size_t j : cone) rows.push_back(b.fan.ray(j));
  std::vector<IntVector> chars;
  for (const RatVector& l : lines) {
    IntVector rhs;
    for (std::size_t j : cone) {
      const RayFiltration& f = b.filtrations[j];
      const bool inside = !f.subspace.is_zero() && f.subspace.contains(l);
      rhs.push_back(Integer(f.shift + (inside ? static_cast<long>(f.step) : 0)));
    }
    auto u = solve_integer(rows, b.fan.dim(), rhs);
    if (!u) return std::nullopt;
    chars.push_back(*u);
  }
  return chars;
}

bool all_hyperplanes_or_zero(const ToricVectorBundle& b, const Cone& cone) {
  for (std::size_t j : cone) {
    const Subspace& w = b.filtrations[j].subspace;
    if (!w.is_zero() && w.dim() + 1 != b.rank) return false;
  }
  return true;
}

}  // namespace

CompatibilityResult check_compatibility(const ToricVectorBundle& b) {
  require(b.filtrations.size() == b.fan.ray_count(), ErrorKind::InvalidArgument,
          "filtration count does not match the ray count");
  CompatibilityResult out;
  for (std::size_t c = 0; c < b.fan.max_cones().size(); ++c) {
    const Cone& cone = b.fan.max_cones()[c];
    CompatibilityTier tier = CompatibilityTier::AdaptedBasis;
    if (b.fan.dim() == 2)
      tier = CompatibilityTier::Surface;
    else if (all_hyperplanes_or_zero(b, cone))
      tier = CompatibilityTier::TransverseHyperplanes;
    if (tier == CompatibilityTier::TransverseHyperplanes && !hyperplanes_transverse(b, c)) {
      out.failing_cone = c;
      out.reason = "hyperplanes on maximal cone " + std::to_string(c) +
                   " do not intersect transversely";
      out.cones.clear();
      return out;
    }
    std::vector<Subspace> family;
    for (std::size_t j : cone)
      if (!b.filtrations[j].subspace.is_zero()) family.push_back(b.filtrations[j].subspace);
    const auto lines = adapted_basis(b.field, b.rank, family);
    if (!lines) {
      out.failing_cone = c;
      out.reason = "no line decomposition of F is adapted to the subspaces on maximal cone " +
                   std::to_string(c);
      out.cones.clear();
      return out;
    }
    const auto chars = characters_for(b, cone, *lines);
    if (!chars) {
      out.failing_cone = c;
      out.reason = "no integral characters realize the filtrations on maximal cone " +
                   std::to_string(c);
      out.cones.clear();
      return out;
    }
    out.cones.push_back({c, tier, *lines, *chars});
  }
  out.compatible = true;
  return out;
}

bool verify_certificate(const ToricVectorBundle& b, const ConeCertificate& cert) {
  const Cone& cone = b.fan.max_cones().at(cert.cone_index);
  if (cert.lines.size() != b.rank || cert.characters.size() != b.rank) return false;
  if (rank(Matrix::from_rows(b.field, cert.lines, b.rank)) != b.rank) return false;
  for (std::size_t j : cone) {
    const RayFiltration& f = b.filtrations[j];
    for (long k = f.shift - 1; k <= f.shift + static_cast<long>(f.step) + 1; ++k) {
      std::vector<RatVector> chosen;
      for (std::size_t i = 0; i < b.rank; ++i)
        if (dot(cert.characters[i], b.fan.ray(j)) >= k) chosen.push_back(cert.lines[i]);
      if (Subspace::span(b.field, b.rank, chosen) != f.at(k)) return false;
    }
  }
  return true;
}

Subspace isotypical_sections(const ToricVectorBundle& b, const Cone& cone, const IntVector& u) {
  require(u.size() == b.fan.dim(), ErrorKind::InvalidArgument, "character has wrong length");
  Subspace s = Subspace::full(b.field, b.rank);
  for (std::size_t j : cone) {
    const long k = dot(u, b.fan.ray(j)).get_si();
    s = s.intersect(b.filtrations.at(j).at(k));
  }
  return s;
}

SymPowerReport sym_power_dimension(const ToricVectorBundle& b, unsigned m) {
  require(b.shift_normalized(), ErrorKind::InvalidArgument,
          "symmetric powers need shift-normalized filtrations");
  const std::size_t r = b.rank;
  SymPowerReport out;
  out.dimension = monomial_count(r, m);
  for (const RayFiltration& f : b.filtrations) {
    std::vector<std::size_t> dims;
    const auto sub_basis = f.subspace.basis_rows();
    std::vector<Polynomial> sub_forms;
    for (const auto& v : sub_basis) sub_forms.push_back(Polynomial::linear_form(b.field, v));
    for (unsigned l = 0; l <= m; ++l) {
      // Span of (products of l vectors of F_j) * (monomials of degree m - l).
      std::vector<Polynomial> left;
      for (const Exponent& e : monomials_of_degree(sub_forms.size(), l)) {
        Polynomial p = Polynomial::constant(b.field, r, 1);
        for (std::size_t k = 0; k < e.size(); ++k) p = p * sub_forms[k].pow(e[k]);
        left.push_back(p);
      }
      std::vector<RatVector> rows;
      for (const Exponent& e : monomials_of_degree(r, m - l)) {
        const Polynomial mono = Polynomial::monomial(b.field, e, 1);
        for (const Polynomial& p : left) rows.push_back((p * mono).dense(m));
      }
      dims.push_back(rows.empty() ? 0
                                  : rank(Matrix::from_rows(b.field, rows, out.dimension)));
    }
    out.level_dims.push_back(dims);
  }
  return out;
}

// --- single-ray projectivization --------------------------------------------

SingleRayFans single_ray_projectivization_fan(
    const IntVector& ray, const RayFiltration& filtration, std::size_t r,
    const std::optional<std::vector<RatVector>>& splitting) {
  require(r >= 2, ErrorKind::InvalidArgument, "projectivization needs rank >= 2");
  require(!is_zero(ray) && content(ray) == 1, ErrorKind::InvalidArgument,
          "ray generator must be primitive");
  const Subspace& w = filtration.subspace;
  require(w.ambient() == r, ErrorKind::InvalidArgument, "filtration lives in the wrong dimension");
  const Field field = w.field();
  SingleRayFans out;
  if (splitting) {
    require(splitting->size() == r && rank(Matrix::from_rows(field, *splitting, r)) == r,
            ErrorKind::InvalidArgument, "splitting must be a basis of F");
    std::size_t inside = 0;
    for (const auto& l : *splitting)
      if (!w.is_zero() && w.contains(l)) ++inside;
    require(inside == w.dim(), ErrorKind::InvalidArgument,
            "splitting not adapted to the filtration");
    out.splitting = *splitting;
  } else {
    std::vector<RatVector> lines = w.basis_rows();
    for (std::size_t i = 0; i < r && lines.size() < r; ++i) {
      RatVector e(r, 0);
      e[i] = 1;
      lines.push_back(e);
      if (rank(Matrix::from_rows(field, lines, r)) < lines.size()) lines.pop_back();
    }
    out.splitting = lines;
  }
  std::vector<bool> inside(r, false);
  std::size_t k = 0;
  for (std::size_t j = 0; j < r; ++j) {
    inside[j] = !w.is_zero() && w.contains(out.splitting[j]);
    if (inside[j]) ++k;
    // n_j = max{k : F(k) contains L_j}
    out.weights.push_back(filtration.shift + (inside[j] ? static_cast<long>(filtration.step) : 0));
  }

  // Coordinates on R^r/(1,...,1): y -> (y_1 - y_r, ..., y_{r-1} - y_r).
  const std::size_t n = ray.size();
  auto quotient = [&](const std::vector<long>& y) {
    IntVector q;
    for (std::size_t i = 0; i + 1 < r; ++i) q.push_back(Integer(y[i] - y[r - 1]));
    return q;
  };
  std::vector<IntVector> rays;
  {
    IntVector vt = ray;
    for (const Integer& x : quotient(out.weights)) vt.push_back(x);
    rays.push_back(vt);  // index 0: image of v~
  }
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<long> e(r, 0);
    e[j] = 1;
    IntVector ej(n, 0);
    for (const Integer& x : quotient(e)) ej.push_back(x);
    rays.push_back(ej);  // index j + 1
  }
  std::vector<Cone> max_cones;
  for (std::size_t drop = 0; drop < r; ++drop) {
    Cone c{0};
    for (std::size_t j = 0; j < r; ++j)
      if (j != drop) c.push_back(j + 1);
    max_cones.push_back(c);
  }
  out.total = Fan(n + r - 1, rays, max_cones);

  // All faces of the total fan, minus cones containing v~ together with all
  // outside e_j, and (when k >= 2) cones containing all inside e_j.
  std::set<Cone> faces;
  for (const Cone& c : max_cones)
    for (std::size_t mask = 1; mask < (std::size_t{1} << c.size()); ++mask) {
      Cone f;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (mask & (std::size_t{1} << i)) f.push_back(c[i]);
      faces.insert(f);
    }
  auto has_all = [&](const Cone& f, bool want_inside) {
    for (std::size_t j = 0; j < r; ++j)
      if (inside[j] == want_inside && !std::binary_search(f.begin(), f.end(), j + 1)) return false;
    return true;
  };
  std::vector<Cone> kept;
  for (const Cone& f : faces) {
    const bool has_v = f.front() == 0;
    if (k > 0 && has_v && has_all(f, false)) continue;
    if (k >= 2 && has_all(f, true)) continue;
    kept.push_back(f);
  }

  // Project to R^r/(1,...,1) and keep maximal images.
  std::vector<IntVector> qrays;
  std::set<std::vector<std::size_t>> images;
  auto qindex = [&](const IntVector& v) {
    for (std::size_t i = 0; i < qrays.size(); ++i)
      if (qrays[i] == v) return i;
    qrays.push_back(v);
    return qrays.size() - 1;
  };
  for (std::size_t j = 0; j < r; ++j) qindex(IntVector(rays[j + 1].begin() + static_cast<long>(n), rays[j + 1].end()));
  for (const Cone& f : kept) {
    std::vector<std::size_t> img;
    for (std::size_t g : f) {
      IntVector p(rays[g].begin() + static_cast<long>(n), rays[g].end());
      if (is_zero(p)) continue;
      img.push_back(qindex(primitive(p)));
    }
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    if (!img.empty()) images.insert(img);
  }
  std::vector<Cone> qcones;
  for (const auto& img : images) {
    bool maximal = true;
    for (const auto& other : images)
      if (other.size() > img.size() &&
          std::includes(other.begin(), other.end(), img.begin(), img.end()))
        maximal = false;
    if (maximal) qcones.push_back(img);
  }
  out.quotient = Fan(r - 1, qrays, qcones);
  if (k == 1)
    for (std::size_t j = 0; j < r; ++j)
      if (inside[j]) out.doubled_ray = j;
  return out;
}

}  // namespace tvb
