// Command-line front end; talks to the library only through tvb.h.

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "tvb/tvb.h"

namespace {

struct InputDeleter {
  void operator()(tvb_input* in) const { tvb_input_free(in); }
};
using InputPtr = std::unique_ptr<tvb_input, InputDeleter>;

// 0: clean, 1: validation errors (including a rejected input file), 2: any
// other failure.
int exit_code(tvb_status s, int has_errors) {
  if (s == TVB_OK) return has_errors ? 1 : 0;
  return s == TVB_PARSE || s == TVB_VALIDATION || s == TVB_FIELD_MISMATCH ? 1 : 2;
}

int report_failure(tvb_status s) {
  std::cerr << "error (" << tvb_status_name(s) << "): " << tvb_last_error() << "\n";
  return exit_code(s, 0);
}

int print(tvb_status s, char* text, int has_errors = 0) {
  if (s != TVB_OK) return report_failure(s);
  std::fputs(text, stdout);
  tvb_string_free(text);
  return exit_code(s, has_errors);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toric vector bundles: projectivizations, Cox rings and Mori dream spaces"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  std::uint64_t seed = 1;
  std::uint32_t budget = 5;
  std::uint64_t characteristic = 0;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", seed, "Seed for sampled points");
  app.add_option("--budget", budget, "Search budget (BFS depth of the (-1)-class enumeration)")
      ->check(CLI::Range(1, 12));
  auto* char_opt = app.add_option("--char", characteristic, "Field characteristic: 0 or a prime");

  std::string file;
  auto* validate = app.add_subcommand("validate", "Validate a fan or bundle file");
  validate->add_option("file", file)->required()->check(CLI::ExistingFile);
  auto* cox = app.add_subcommand("cox", "Cox ring presentation of P(F)");
  cox->add_option("file", file)->required()->check(CLI::ExistingFile);
  auto* effcone = app.add_subcommand("effcone", "Effective cone report");
  effcone->add_option("file", file)->required()->check(CLI::ExistingFile);

  std::size_t rank = 0, points = 0;
  std::string position;
  auto* mds = app.add_subcommand("mds", "Mori dream space verdict for a bundle or a point set");
  mds->add_option("file", file)->check(CLI::ExistingFile);
  auto* rank_opt = mds->add_option("--rank", rank, "r, for P^{r-1}");
  auto* points_opt = mds->add_option("--points", points, "Number of points");
  auto* pos_opt = mds->add_option("--position", position)
                      ->check(CLI::IsMember({"general", "very-general", "collinear", "on-rnc"}));
  rank_opt->needs(points_opt, pos_opt);

  std::string form;
  auto* cls = app.add_subcommand("class", "Divisor class of the orbit closure of a hypersurface");
  cls->add_option("file", file)->required()->check(CLI::ExistingFile);
  cls->add_option("--form", form, "Homogeneous polynomial in z1..zr")->required();

  std::string name, fan_path;
  std::size_t dim = 0;
  auto* example = app.add_subcommand("example", "Run a built-in example pipeline");
  example->add_option("name", name)->required()->check(CLI::IsMember(
      {"p2-cotangent", "example-1.5", "example-4.2", "theorem-1.4", "kapranov", "losev-manin",
       "tangent"}));
  example->add_option("fanfile", fan_path, "Fan file (tangent only)")->check(CLI::ExistingFile);
  example->add_option("--dim", dim);
  example->add_option("--rank", rank);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;  // --help is not a failure
  }

  tvb_options opts;
  tvb_options_init(&opts);
  opts.format = format == "json" ? TVB_FORMAT_JSON : TVB_FORMAT_TEXT;
  opts.seed = seed;
  opts.budget = budget;
  if (char_opt->count()) {
    opts.has_characteristic = 1;
    opts.characteristic = characteristic;
  }

  char* text = nullptr;
  int has_errors = 0;
  if (*example) {
    if (name == "tangent" && fan_path.empty()) {
      std::cerr << "error: example tangent needs a fan file\n";
      return 2;
    }
    const tvb_status s = tvb_example(name.c_str(), dim, rank, fan_path.empty() ? nullptr : fan_path.c_str(),
                                     &opts, &text, &has_errors);
    return print(s, text, has_errors);
  }
  if (*mds && file.empty()) {
    if (!rank_opt->count()) {
      std::cerr << "error: mds needs a file or --rank/--points/--position\n";
      return 2;
    }
    const tvb_status s = tvb_mds_params(rank, points, position.c_str(), &opts, &text);
    return print(s, text);
  }

  tvb_input* raw = nullptr;
  const tvb_status loaded = tvb_input_load(file.c_str(), &opts, &raw);
  if (loaded != TVB_OK) return report_failure(loaded);
  InputPtr in(raw);
  tvb_status s;
  if (*validate) s = tvb_validate(in.get(), &opts, &text, &has_errors);
  else if (*cox) s = tvb_cox(in.get(), &opts, &text);
  else if (*mds) s = tvb_mds(in.get(), &opts, &text);
  else if (*effcone) s = tvb_effcone(in.get(), &opts, &text);
  else s = tvb_orbit_class(in.get(), form.c_str(), &opts, &text);
  return print(s, text, has_errors);
}
