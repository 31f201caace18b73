#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "tvb/cones.hpp"
#include "tvb/io.hpp"

namespace tvb {

struct ReportOptions {
  std::uint64_t seed = 1;
  std::size_t budget = 5;  // (-1)-class BFS depth
  std::optional<std::uint64_t> characteristic;
};

/// One self-describing document per run. `errors` lists validation
/// failures; verdicts never count as errors.
struct Report {
  Json doc;
  bool has_errors = false;
};

Report validate_report(const Input& in);
Report cox_report(const Input& in);
Report mds_report(const Input& in);
/// position: general, very-general, collinear or on-rnc.
Report mds_params_report(std::size_t rank, std::size_t points, const std::string& position);
Report effcone_report(const Input& in, const ReportOptions& opts);
Report class_report(const Input& in, const std::string& form);

struct ExampleArgs {
  std::optional<std::size_t> dim;
  std::optional<std::size_t> rank;
  std::optional<std::string> fan_path;
};
/// Registry names: p2-cotangent, example-1.5, example-4.2, theorem-1.4,
/// kapranov, losev-manin, tangent.
Report example_report(const std::string& name, const ExampleArgs& args, const ReportOptions& opts);
const std::vector<std::string>& example_names();

/// Indented key/value rendering of the same tree; arrays of scalars inline.
std::string render_text(const Json& doc);
std::string render(const Report& r, bool json);

// --- registry builders --------------------------------------------------------

/// The 11-ray surface fan with nine planes whose points are seeded general
/// points of P^2; the last two rays carry zero subspaces.
ToricVectorBundle nine_point_surface_bundle(std::uint64_t seed, Field field = Field::rationals());
/// Rays of the 14-ray threefold whose cotangent points carry the cubic pencil.
std::vector<std::size_t> cotangent_threefold_pencil_subset();
/// The threefold fan followed by its extensions up to dimension max_dim.
std::vector<Fan> extension_chain(std::size_t max_dim);

}  // namespace tvb
