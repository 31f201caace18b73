#include <algorithm>

#include "report_sections.hpp"
#include "tvb/error.hpp"

namespace tvb {

using namespace detail;

ToricVectorBundle nine_point_surface_bundle(std::uint64_t seed, Field field) {
  const auto pts = very_general_points(3, 9, seed, field);
  std::vector<Subspace> subs;
  for (const auto& p : pts.points) subs.push_back(Subspace::span(field, 3, {p}).perp());
  subs.emplace_back(field, 3);
  subs.emplace_back(field, 3);
  return standard_bundle(p1xp1_blowup_fan(), 3, field, subs);
}

std::vector<std::size_t> cotangent_threefold_pencil_subset() {
  return {0, 2, 5, 6, 7, 10, 11, 12, 13};
}

std::vector<Fan> extension_chain(std::size_t max_dim) {
  std::vector<Fan> out{cotangent_threefold_sequence().fans.back()};
  while (out.back().dim() < max_dim) out.push_back(extend_fan_one_dimension(out.back()));
  return out;
}

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"p2-cotangent", "example-1.5", "example-4.2",
                                              "theorem-1.4",  "kapranov",    "losev-manin",
                                              "tangent"};
  return names;
}

namespace {

Field field_of(const ReportOptions& opts) {
  return Field::of_characteristic(opts.characteristic.value_or(0));
}

std::size_t in_range(const std::optional<std::size_t>& v, std::size_t fallback, std::size_t lo,
                     std::size_t hi, const std::string& what) {
  const std::size_t x = v.value_or(fallback);
  require(x >= lo && x <= hi, ErrorKind::InvalidArgument,
          what + " must be between " + std::to_string(lo) + " and " + std::to_string(hi));
  return x;
}

// Verdict read back from a report's mds section.
MdsResult verdict_of(const Json& doc) {
  MdsResult res;
  if (!doc.contains("mds")) return res;
  const auto v = doc["mds"]["verdict"].get<std::string>();
  res.verdict = v == "NotMDS" ? Verdict::NotMDS : v == "MDS" ? Verdict::MDS : Verdict::Unknown;
  res.conditional = doc["mds"]["conditional"].get<bool>();
  return res;
}

// Bundle pipeline shared by several examples: validity, compatibility,
// presentation and verdict.
void bundle_pipeline(Report& r, const ToricVectorBundle& bundle,
                     const std::vector<Coincidence>& coincidences, bool assume_very_general,
                     std::vector<std::string>& citations) {
  r.doc["bundle"] = bundle_section(bundle, coincidences);
  const auto compat = check_compatibility(bundle);
  r.doc["compatibility"] = compatibility_section(bundle, compat);
  if (!compat.compatible) {
    r.doc["errors"] = Json::array({"compatibility: " + compat.reason});
    return;
  }
  ToricVectorBundle b = bundle;
  normalize_shifts(b);
  const BundleMdsReport mds = bundle_mds_report(b, {assume_very_general});
  r.doc["arrangement"] = arrangement_section(mds.arrangement);
  r.doc["presentation"] = cox_section(cox_presentation(b));
  r.doc["mds"] = bundle_mds_section(mds);
  citations.push_back("cox-ring-transfer");
  for (const auto& c : mds.result.citations) citations.push_back(c);
}

Report p2_cotangent(const ReportOptions& opts) {
  Report r{start("example p2-cotangent")};
  const Fan f = projective_space_fan(2);
  r.doc["fan"] = fan_section(f, true);
  const auto cot = cotangent_bundle(f, field_of(opts));
  std::vector<std::string> cites;
  bundle_pipeline(r, cot.bundle, cot.coincidences, true, cites);
  add_citations(r.doc, cites);
  finish(r, r.doc.contains("mds") ? conclusion(verdict_of(r.doc)) : "incompatible bundle");
  return r;
}

Report nine_points(const ReportOptions& opts) {
  Report r{start("example example-1.5")};
  r.doc["seed"] = opts.seed;
  const Field field = field_of(opts);
  const auto general = very_general_points(3, 9, opts.seed, field);
  const ToricVectorBundle b = nine_point_surface_bundle(opts.seed, field);
  r.doc["fan"] = fan_section(b.fan, true);
  Json g;
  g["points"] = Json::array();
  for (const auto& p : general.points) g["points"].push_back(to_string(p));
  g["verified"] = general.verified;
  g["unchecked"] = general.unchecked;
  g["attempts"] = general.attempts;
  r.doc["genericity"] = g;
  std::vector<std::string> cites;
  bundle_pipeline(r, b, {}, true, cites);
  if (r.doc.contains("mds")) {
    EnumerationBudget budget;
    budget.max_depth = opts.budget;
    const auto np = nonpolyhedrality_report(b, budget);
    Json s;
    s["fan_hypothesis"] = np.fan_hypothesis;
    if (np.threshold_sum) s["threshold_sum"] = np.threshold_sum->get_str();
    s["threshold_ok"] = np.threshold_ok;
    s["hypotheses_met"] = np.hypotheses_met;
    if (np.enumeration) {
      s["minus_one_classes"] = np.enumeration->classes.size();
      s["with_permutations"] = np.enumeration->with_permutations.get_str();
      Json degs = Json::array();
      for (const auto& d : np.enumeration->level_max_degree) degs.push_back(integer_to_json(d));
      s["level_max_degree"] = degs;
    }
    s["notes"] = np.notes;
    r.doc["effective_cone"] = s;
    if (np.hypotheses_met) cites.push_back("nonpolyhedral-effective-cone");
  }
  add_citations(r.doc, cites);
  finish(r, conclusion(verdict_of(r.doc)));
  return r;
}

Report threefold(const ReportOptions& opts) {
  Report r{start("example example-4.2")};
  const Field field = field_of(opts);
  const FanSequence seq = cotangent_threefold_sequence();
  Json steps = Json::array();
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    Json e;
    e["vector"] = to_string(seq.steps[i].vector);
    e["center_rays"] = Json::array();
    for (std::size_t j : seq.steps[i].center.cone) e["center_rays"].push_back(to_string(seq.fans[i].ray(j)));
    e["smooth_star_point"] = seq.steps[i].smooth_star_point;
    e["smooth_after"] = is_smooth(seq.fans[i + 1]).smooth;
    steps.push_back(e);
  }
  r.doc["subdivisions"] = steps;
  const Fan& f = seq.fans.back();
  r.doc["fan"] = fan_section(f, true);
  const auto cot = cotangent_bundle(f, field);
  Json pencil;
  const auto subset = cotangent_threefold_pencil_subset();
  pencil["rays"] = one_based(subset);
  if (field.characteristic() == 2 || field.characteristic() == 3) {
    pencil["skipped"] = "characteristic " + std::to_string(field.characteristic());
  } else {
    std::vector<RatVector> pts;
    for (std::size_t j : subset) pts.push_back(to_rational(f.ray(j)));
    const auto rep = cubic_pencil_check(field, pts);
    pencil["cubic_space_dim"] = rep.cubic_space_dim;
    pencil["transverse"] = rep.transverse;
    pencil["complete_intersection"] = rep.complete_intersection;
  }
  r.doc["cubic_pencil"] = pencil;
  std::vector<std::string> cites;
  bundle_pipeline(r, cot.bundle, cot.coincidences, true, cites);
  add_citations(r.doc, cites);
  const MdsResult res = verdict_of(r.doc);
  finish(r, res.verdict == Verdict::NotMDS && r.doc["mds"].contains("cubic_pencil_certificate")
                ? "Not MDS: cubic pencil certificate"
                : conclusion(res));
  return r;
}

Report induction(const ExampleArgs& args, const ReportOptions& opts) {
  const std::size_t dim = in_range(args.dim, 4, 4, 7, "--dim");
  Report r{start("example theorem-1.4")};
  r.doc["dim"] = dim;
  const Field field = field_of(opts);
  const auto chain = extension_chain(dim);
  Json steps = Json::array();
  std::vector<std::string> cites;
  bool all_not = true;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const Fan& f = chain[i];
    Json e;
    e["dim"] = f.dim();
    e["ray_count"] = f.ray_count();
    e["smooth"] = is_smooth(f).smooth;
    e["complete"] = is_complete(f);
    auto b = cotangent_bundle(f, field).bundle;
    normalize_shifts(b);
    const Arrangement a = from_bundle(b);
    // Points of the previous fan's rays lie in the last coordinate hyperplane;
    // the two new rays leave it.
    std::vector<RatVector> inherited;
    for (const auto& m : a.members)
      if (sgn(f.ray(m.rays.front()).back()) == 0) inherited.push_back(m.locus.basis_rows().front());
    e["points"] = a.members.size();
    e["inherited_points"] = inherited.size();
    e["inherited_in_hyperplane"] = position_report(field, f.dim(), inherited).in_hyperplane;
    e["all_in_hyperplane"] = position_report(a).in_hyperplane;
    const auto mds = bundle_mds_report(b);
    e["reductions"] = mds.reductions.size();
    e["verdict"] = to_string(mds.result.verdict);
    all_not = all_not && mds.result.verdict == Verdict::NotMDS;
    for (const auto& c : mds.result.citations) cites.push_back(c);
    steps.push_back(e);
  }
  r.doc["extensions"] = steps;
  add_citations(r.doc, cites);
  finish(r, all_not ? "not a Mori dream space in every dimension up to " + std::to_string(dim)
                    : "verdict changed along the chain");
  return r;
}

Report kapranov(const ExampleArgs& args) {
  const std::size_t rank = in_range(args.rank, 4, 3, 6, "--rank");
  Report r{start("example kapranov")};
  r.doc["rank"] = rank;
  const KapranovReport rep = kapranov_report(rank);
  r.doc["member_count"] = rep.arrangement.members.size();
  std::map<std::string, std::size_t> by_dim;
  for (const auto& m : rep.arrangement.members) ++by_dim["P^" + std::to_string(m.projective_dim())];
  r.doc["members_by_dim"] = by_dim;
  r.doc["mds"] = mds_section(rep.result);
  add_citations(r.doc, rep.result.citations);
  finish(r, conclusion(rep.result));
  return r;
}

Report losev_manin(const ExampleArgs& args, const ReportOptions& opts) {
  const std::size_t dim = in_range(args.dim, 2, 2, 4, "--dim");
  Report r{start("example losev-manin")};
  r.doc["dim"] = dim;
  const Field field = field_of(opts);
  const auto data = losev_manin_subspaces(dim, field);
  r.doc["fan"] = fan_section(data.fan, false);
  std::vector<std::string> cites;
  bundle_pipeline(r, losev_manin_bundle(data, field), {}, true, cites);
  add_citations(r.doc, cites);
  finish(r, r.doc.contains("presentation") ? r.doc["presentation"]["summary"].get<std::string>()
                                           : "incompatible bundle");
  return r;
}

Report tangent(const ExampleArgs& args, const ReportOptions& opts) {
  require(args.fan_path.has_value(), ErrorKind::InvalidArgument, "tangent needs a fan file");
  const Input in = load_input(*args.fan_path, opts.characteristic);
  Report r{start("example tangent")};
  r.doc["fan"] = fan_section(in.fan, false);
  if (!r.doc["fan"]["violations"].empty()) {
    r.doc["errors"] = r.doc["fan"]["violations"];
    finish(r, "invalid fan");
    return r;
  }
  require(r.doc["fan"]["smooth"].get<bool>() && r.doc["fan"]["complete"].get<bool>(),
          ErrorKind::Validation, "tangent Cox ring needs a smooth complete fan");
  const Field field = in.bundle ? in.bundle->field : field_of(opts);
  const auto t = tangent_cox_ring(in.fan, field);
  r.doc["explicit_form"] = t.explicit_form;
  Json ker = Json::array();
  for (const auto& k : t.kernel) ker.push_back(to_string(k));
  r.doc["kernel"] = ker;
  r.doc["presentation"] = cox_section(t.presentation);
  add_citations(r.doc, {"cox-ring-transfer"});
  finish(r, t.presentation.summary());
  return r;
}

}  // namespace

Report example_report(const std::string& name, const ExampleArgs& args, const ReportOptions& opts) {
  if (name == "p2-cotangent") return p2_cotangent(opts);
  if (name == "example-1.5") return nine_points(opts);
  if (name == "example-4.2") return threefold(opts);
  if (name == "theorem-1.4") return induction(args, opts);
  if (name == "kapranov") return kapranov(args);
  if (name == "losev-manin") return losev_manin(args, opts);
  if (name == "tangent") return tangent(args, opts);
  fail(ErrorKind::InvalidArgument, "unknown example '" + name + "'");
}

}  // namespace tvb
