#include "tvb/report.hpp"

#include <sstream>

#include "report_sections.hpp"
#include "tvb/error.hpp"

namespace tvb {

namespace detail {

Json one_based(const std::vector<std::size_t>& idx) {
  Json out = Json::array();
  for (std::size_t i : idx) out.push_back(i + 1);
  return out;
}

Json fan_section(const Fan& f, bool with_projectivity) {
  Json s;
  s["dim"] = f.dim();
  s["ray_count"] = f.ray_count();
  s["rays"] = Json::array();
  for (const auto& r : f.rays()) s["rays"].push_back(to_string(r));
  s["max_cone_count"] = f.max_cones().size();
  const ValidationReport v = validate_fan(f);
  s["valid"] = v.ok();
  s["violations"] = Json::array();
  for (const auto& x : v.violations) s["violations"].push_back(x.kind + ": " + x.detail);
  if (!v.ok()) return s;
  const SmoothnessResult sm = is_smooth(f);
  s["smooth"] = sm.smooth;
  if (sm.witness) s["singular_cone"] = one_based(*sm.witness);
  const bool complete = is_complete(f);
  s["complete"] = complete;
  if (with_projectivity && complete) s["projective"] = is_projective(f).projective;
  return s;
}

Json bundle_section(const ToricVectorBundle& b, const std::vector<Coincidence>& coincidences) {
  Json s;
  s["rank"] = b.rank;
  s["field"] = b.field.name();
  s["filtrations"] = Json::array();
  for (std::size_t j = 0; j < b.filtrations.size(); ++j) {
    const auto& f = b.filtrations[j];
    s["filtrations"].push_back("ray " + std::to_string(j + 1) + ": dim " +
                               std::to_string(f.subspace.dim()) + ", step " + std::to_string(f.step) +
                               ", shift " + std::to_string(f.shift));
  }
  if (!coincidences.empty()) {
    s["coincidences"] = Json::array();
    for (const auto& c : coincidences) {
      Json e;
      e["rays"] = one_based({c.first, c.second});
      e["cause"] = c.opposite_rays ? "opposite rays" : "characteristic";
      s["coincidences"].push_back(e);
    }
  }
  return s;
}

Json compatibility_section(const ToricVectorBundle& b, const CompatibilityResult& c) {
  Json s;
  s["compatible"] = c.compatible;
  if (!c.compatible) {
    if (c.failing_cone) s["failing_cone"] = one_based(b.fan.max_cones()[*c.failing_cone]);
    s["reason"] = c.reason;
    return s;
  }
  std::map<std::string, std::size_t> tiers;
  bool verified = true;
  for (const auto& cert : c.cones) {
    ++tiers[to_string(cert.tier)];
    verified = verified && verify_certificate(b, cert);
  }
  s["tiers"] = tiers;
  s["certificates_verified"] = verified;
  return s;
}

Json arrangement_section(const Arrangement& a) {
  Json s;
  s["ambient"] = "P^" + std::to_string(a.rank - 1);
  s["members"] = Json::array();
  for (const auto& m : a.members) {
    Json e;
    e["rays"] = one_based(m.rays);
    e["projective_dim"] = m.projective_dim();
    e["kind"] = m.is_hyperplane() ? "hyperplane" : (m.projective_dim() == 0 ? "point" : "center");
    Json basis = Json::array();
    for (const auto& row : m.locus.basis_rows()) basis.push_back(to_string(row));
    e["locus"] = basis;
    s["members"].push_back(e);
  }
  s["zero_rays"] = one_based(a.zero_rays);
  return s;
}

Json position_section(const PositionReport& p) {
  Json s;
  s["count"] = p.count;
  s["distinct"] = p.distinct;
  s["general_position"] = p.general_position;
  if (p.dependent_subset) s["dependent_subset"] = one_based(*p.dependent_subset);
  s["collinear"] = p.collinear;
  s["on_rational_normal_curve"] = p.on_rational_normal_curve;
  s["in_hyperplane"] = p.in_hyperplane;
  return s;
}

Json degree_json(const ClassGroup& g, const DivisorClass& c) {
  Json e;
  e["class"] = g.format(c);
  e["vector"] = vector_to_json(c);
  return e;
}

Json cox_section(const CoxPresentation& p) {
  Json s;
  s["summary"] = p.summary();
  Json cg;
  cg["rank"] = p.class_group.rank();
  cg["basis"] = p.class_group.basis;
  cg["sigma"] = one_based(p.class_group.sigma);
  cg["phi_star_available"] = p.class_group.phi_star_available;
  s["class_group"] = cg;
  Json base;
  base["name"] = p.base.name();
  base["centers"] = Json::array();
  for (const auto& c : p.base.centers) {
    Json e;
    e["symbol"] = c.symbol;
    e["projective_dim"] = c.projective_dim;
    e["rays"] = one_based(c.rays);
    base["centers"].push_back(e);
  }
  base["doubled_hyperplanes"] = p.base.doubled_hyperplanes.size();
  base["blowup_order_length"] = p.base.blowup_order.entries.size();
  base["annotations"] = p.base.annotations;
  s["base"] = base;
  auto named = [&](const std::vector<NamedDegree>& v) {
    Json out = Json::array();
    for (const auto& n : v) {
      Json e;
      e["name"] = n.name;
      e["degree"] = p.class_group.format(n.degree);
      e["meaning"] = n.meaning;
      out.push_back(e);
    }
    return out;
  };
  s["generators"] = named(p.generators);
  s["symbols"] = named(p.symbols);
  s["relations"] = Json::array();
  for (const auto& r : p.relations) {
    Json e;
    e["relation"] = r.to_string();
    e["tag"] = r.tag;
    s["relations"].push_back(e);
  }
  s["free_variables"] = p.free_variable_count();
  s["homogeneous"] = check_homogeneity(p).empty();
  s["warnings"] = p.warnings;
  return s;
}

Json mds_section(const MdsResult& r) {
  Json s;
  s["verdict"] = to_string(r.verdict);
  s["conditional"] = r.conditional;
  s["reasons"] = r.reasons;
  s["annotations"] = r.annotations;
  return s;
}

Json bundle_mds_section(const BundleMdsReport& rep) {
  Json s = mds_section(rep.result);
  if (rep.position) s["position"] = position_section(*rep.position);
  if (rep.totaro) {
    Json t;
    t["member_indices"] = one_based(rep.totaro->indices);
    t["cubic_space_dim"] = rep.totaro->pencil.cubic_space_dim;
    t["transverse"] = rep.totaro->pencil.transverse;
    t["complete_intersection"] = rep.totaro->pencil.complete_intersection;
    s["cubic_pencil_certificate"] = t;
  }
  if (!rep.reductions.empty()) {
    s["reductions"] = Json::array();
    for (std::size_t i = 0; i < rep.reductions.size(); ++i) {
      Json e;
      e["from"] = "P^" + std::to_string(rep.reductions[i].ambient_dim);
      e["points_kept"] = rep.reduction_subset_sizes[i];
      e["hyperplane"] = to_string(rep.reductions[i].hyperplane);
      s["reductions"].push_back(e);
    }
  }
  return s;
}

std::string conclusion(const MdsResult& r) {
  switch (r.verdict) {
    case Verdict::MDS: return "Mori dream space";
    case Verdict::NotMDS:
      return r.conditional ? "not a Mori dream space (conditional on very-generality)"
                           : "not a Mori dream space";
    case Verdict::Unknown: break;
  }
  return "Mori dream space status unknown";
}

void add_citations(Json& doc, const std::vector<std::string>& ids) {
  Json out = Json::array();
  std::vector<std::string> seen;
  for (const auto& id : ids) {
    if (std::find(seen.begin(), seen.end(), id) != seen.end()) continue;
    seen.push_back(id);
    const Citation c = citation(id);
    Json e;
    e["id"] = c.id;
    e["statement"] = c.statement;
    out.push_back(e);
  }
  doc["citations"] = out;
}

Json start(const std::string& command) {
  Json doc;
  doc["command"] = command;
  return doc;
}

// Every report ends with citations, errors and conclusion, in that order.
void finish(Report& r, const std::string& conclusion_text) {
  Json citations = r.doc.contains("citations") ? r.doc["citations"] : Json::array();
  Json errors = r.doc.contains("errors") ? r.doc["errors"] : Json::array();
  r.doc.erase("citations");
  r.doc.erase("errors");
  r.doc["citations"] = citations;
  r.doc["errors"] = errors;
  r.doc["conclusion"] = conclusion_text;
  r.has_errors = !errors.empty();
}

ToricVectorBundle prepared_bundle(const Input& in) {
  require(in.bundle.has_value(), ErrorKind::InvalidArgument, "input has no filtrations");
  require_valid(in.fan);
  require(is_smooth(in.fan).smooth, ErrorKind::Validation, "fan is not smooth");
  require(is_complete(in.fan), ErrorKind::Validation, "fan is not complete");
  ToricVectorBundle b = *in.bundle;
  const CompatibilityResult c = check_compatibility(b);
  require(c.compatible, ErrorKind::Validation, "bundle is not compatible: " + c.reason);
  normalize_shifts(b);
  return b;
}

}  // namespace detail

using namespace detail;

Report validate_report(const Input& in) {
  Report r{start("validate")};
  r.doc["fan"] = fan_section(in.fan, true);
  Json errors = Json::array();
  for (const auto& v : r.doc["fan"]["violations"]) errors.push_back(v);
  if (in.bundle) {
    r.doc["bundle"] = bundle_section(*in.bundle, in.coincidences);
    if (errors.empty() && r.doc["fan"]["smooth"].get<bool>() && r.doc["fan"]["complete"].get<bool>()) {
      const auto c = check_compatibility(*in.bundle);
      r.doc["compatibility"] = compatibility_section(*in.bundle, c);
      if (!c.compatible) errors.push_back("compatibility: " + c.reason);
    } else if (errors.empty()) {
      errors.push_back("compatibility: needs a smooth complete fan");
    }
  }
  r.doc["errors"] = errors;
  finish(r, errors.empty() ? "valid" : "invalid");
  return r;
}

Report cox_report(const Input& in) {
  Report r{start("cox")};
  const ToricVectorBundle b = prepared_bundle(in);
  const CoxPresentation p = cox_presentation(b);
  r.doc["presentation"] = cox_section(p);
  add_citations(r.doc, {"cox-ring-transfer"});
  finish(r, p.summary());
  return r;
}

Report mds_report(const Input& in) {
  Report r{start("mds")};
  const ToricVectorBundle b = prepared_bundle(in);
  const BundleMdsReport rep = bundle_mds_report(b, {in.assume_very_general});
  r.doc["arrangement"] = arrangement_section(rep.arrangement);
  r.doc["mds"] = bundle_mds_section(rep);
  add_citations(r.doc, rep.result.citations);
  finish(r, conclusion(rep.result));
  return r;
}

Report mds_params_report(std::size_t rank, std::size_t points, const std::string& position) {
  PositionFlags flags;
  if (position == "general") {
    flags.general_position = true;
  } else if (position == "very-general") {
    flags.general_position = flags.very_general = true;
  } else if (position == "collinear") {
    flags.collinear = true;
  } else if (position == "on-rnc") {
    flags.on_rational_normal_curve = true;
  } else {
    fail(ErrorKind::InvalidArgument, "unknown position '" + position + "'");
  }
  require(rank >= 1, ErrorKind::InvalidArgument, "rank must be positive");
  Report r{start("mds")};
  Json in;
  in["rank"] = rank;
  in["points"] = points;
  in["position"] = position;
  r.doc["input"] = in;
  const MdsResult res = mds_classify(rank, points, flags);
  r.doc["mds"] = mds_section(res);
  add_citations(r.doc, res.citations);
  finish(r, conclusion(res));
  return r;
}

Report effcone_report(const Input& in, const ReportOptions& opts) {
  require(opts.budget >= 1 && opts.budget <= 12, ErrorKind::InvalidArgument,
          "budget must be between 1 and 12");
  Report r{start("effcone")};
  r.doc["budget"] = opts.budget;
  const ToricVectorBundle b = prepared_bundle(in);
  EnumerationBudget budget;
  budget.max_depth = opts.budget;
  const NonpolyhedralityReport rep = nonpolyhedrality_report(b, budget);
  const PhiStar phi = phi_star(b);
  Json s;
  s["fan_hypothesis"] = rep.fan_hypothesis;
  s["rays_outside"] = one_based(rep.rays_outside);
  if (rep.threshold_sum) s["threshold_sum"] = rep.threshold_sum->get_str();
  s["threshold_ok"] = rep.threshold_ok;
  s["general_position"] = rep.general_position;
  s["hypotheses_met"] = rep.hypotheses_met;
  s["conditional"] = rep.conditional;
  if (rep.enumeration) {
    const auto& e = *rep.enumeration;
    Json en;
    en["classes"] = e.classes.size();
    en["with_permutations"] = e.with_permutations.get_str();
    en["level_sizes"] = e.level_sizes;
    Json degs = Json::array();
    for (const auto& d : e.level_max_degree) degs.push_back(integer_to_json(d));
    en["level_max_degree"] = degs;
    en["truncated"] = e.truncated;
    Json list = Json::array();
    for (std::size_t i = 0; i < e.classes.size(); ++i) {
      Json c;
      c["curve"] = e.classes[i].to_string();
      c["divisor"] = phi.target.format(rep.images[i]);
      list.push_back(c);
    }
    en["list"] = list;
    s["enumeration"] = en;
  }
  s["notes"] = rep.notes;
  r.doc["effective_cone"] = s;
  Json gens = Json::array();
  for (const auto& g : effective_generators(b, {})) {
    Json e;
    e["class"] = phi.target.format(g.cls);
    e["provenance"] = g.provenance;
    gens.push_back(e);
  }
  r.doc["zero_subspace_generators"] = gens;
  if (rep.hypotheses_met) add_citations(r.doc, {"nonpolyhedral-effective-cone"});
  finish(r, rep.hypotheses_met
                ? "pseudoeffective cone not polyhedral: " +
                      std::to_string(rep.enumeration->classes.size()) +
                      " (-1)-class orbits found (evidence, conditional on very-generality)"
                : "hypotheses not met");
  return r;
}

Report class_report(const Input& in, const std::string& form) {
  Report r{start("class")};
  const ToricVectorBundle b = prepared_bundle(in);
  const Polynomial p = parse_polynomial(form, b.field, b.rank);
  require(p.is_homogeneous() && !p.is_zero(), ErrorKind::InvalidArgument,
          "form must be a nonzero homogeneous polynomial");
  const HomogeneousForm h = HomogeneousForm::from_polynomial(p);
  const ClassGroup g = class_group_projectivization(b);
  const DivisorClass c = orbit_closure_class(h, b);
  r.doc["form"] = p.to_string();
  r.doc["degree"] = h.degree;
  Json mult = Json::array();
  for (std::size_t j = 0; j < b.filtrations.size(); ++j) {
    if (b.filtrations[j].subspace.is_zero()) continue;
    Json e;
    e["ray"] = j + 1;
    e["multiplicity"] = multiplicity_at(h, b.filtrations[j].subspace.perp().basis_rows().front());
    mult.push_back(e);
  }
  r.doc["multiplicities"] = mult;
  r.doc["class"] = degree_json(g, c);
  finish(r, "class " + g.format(c));
  return r;
}

namespace {

void render_value(std::ostringstream& out, const Json& v, int indent);

bool scalar(const Json& v) { return !v.is_object() && !v.is_array(); }

// Scalar arrays print inline unless an element would blur the separators.
bool inline_array(const Json& v) {
  return std::all_of(v.begin(), v.end(), [](const Json& x) {
    return scalar(x) && !(x.is_string() && x.get<std::string>().find(", ") != std::string::npos);
  });
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  return v.dump();
}

void render_object(std::ostringstream& out, const Json& obj, int indent, bool first_inline) {
  bool first = true;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string pad = (first && first_inline) ? "" : std::string(indent, ' ');
    first = false;
    out << pad << it.key() << ":";
    render_value(out, it.value(), indent + 2);
  }
}

void render_value(std::ostringstream& out, const Json& v, int indent) {
  if (scalar(v)) {
    out << " " << scalar_text(v) << "\n";
    return;
  }
  if (v.is_array() && inline_array(v)) {
    out << " [";
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar_text(v[i]);
    out << "]\n";
    return;
  }
  out << "\n";
  if (v.is_object()) {
    render_object(out, v, indent, false);
    return;
  }
  for (const auto& item : v) {
    out << std::string(indent, ' ') << "-";
    if (item.is_object() && !item.empty()) {
      out << " ";
      render_object(out, item, indent + 2, true);
    } else {
      render_value(out, item, indent + 2);
    }
  }
}

}  // namespace

std::string render_text(const Json& doc) {
  std::ostringstream out;
  if (doc.is_object()) render_object(out, doc, 0, false);
  else render_value(out, doc, 0);
  return out.str();
}

std::string render(const Report& r, bool json) {
  return json ? r.doc.dump(2) + "\n" : render_text(r.doc);
}

}  // namespace tvb
