#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tvb/klyachko.hpp"

namespace tvb {

using Json = nlohmann::ordered_json;

/// A parsed fan file, optionally carrying a bundle.
struct Input {
  Fan fan;
  std::optional<ToricVectorBundle> bundle;
  std::string constructor;  // "cotangent", "tangent" or empty
  std::vector<Coincidence> coincidences;  // cotangent shorthand only
  bool assume_very_general = true;
};

/// Structural parsing only; fan validation is left to the caller. Errors
/// name the offending field, e.g. "rays[3]". A command-line characteristic
/// must agree with a `char` field when both are present.
Input parse_input(const std::string& text,
                  std::optional<std::uint64_t> characteristic = std::nullopt);
Input load_input(const std::string& path,
                 std::optional<std::uint64_t> characteristic = std::nullopt);

Json fan_to_json(const Fan& f);
/// Explicit filtrations (no shorthand), so it re-parses to an equal bundle.
Json bundle_to_json(const ToricVectorBundle& b);

/// Integers within 64 bits as JSON numbers, larger ones as decimal strings.
Json integer_to_json(const Integer& z);
Json rational_to_json(const Rational& q);  // always a string
Json vector_to_json(const IntVector& v);

}  // namespace tvb
