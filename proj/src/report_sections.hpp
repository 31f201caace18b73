#pragma once

// Building blocks shared by report.cpp and registry.cpp.

#include <map>
#include <string>
#include <vector>

#include "tvb/report.hpp"

namespace tvb::detail {

Json one_based(const std::vector<std::size_t>& idx);
Json fan_section(const Fan& f, bool with_projectivity);
Json bundle_section(const ToricVectorBundle& b, const std::vector<Coincidence>& coincidences);
Json compatibility_section(const ToricVectorBundle& b, const CompatibilityResult& c);
Json arrangement_section(const Arrangement& a);
Json position_section(const PositionReport& p);
Json degree_json(const ClassGroup& g, const DivisorClass& c);
Json cox_section(const CoxPresentation& p);
Json mds_section(const MdsResult& r);
Json bundle_mds_section(const BundleMdsReport& rep);
std::string conclusion(const MdsResult& r);
void add_citations(Json& doc, const std::vector<std::string>& ids);
Json start(const std::string& command);
void finish(Report& r, const std::string& conclusion_text);
/// Smooth complete fan, compatible bundle, shifts normalized; throws otherwise.
ToricVectorBundle prepared_bundle(const Input& in);

}  // namespace tvb::detail
