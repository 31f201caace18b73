#include "tvb/io.hpp"

#include <fstream>
#include <sstream>

#include "tvb/error.hpp"

namespace tvb {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(ErrorKind::Parse, where + ": " + what);
}

Integer parse_integer(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    Integer z;
    if (s.empty() || z.set_str(s, 10) != 0) bad(where, "'" + s + "' is not an integer");
    return z;
  }
  bad(where, "expected an integer");
}

Rational parse_rational(const Json& j, const std::string& where) {
  if (!j.is_string()) return Rational(parse_integer(j, where));
  const auto s = j.get<std::string>();
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(j, where));
  Integer num, den;
  if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0)
    bad(where, "'" + s + "' is not a rational");
  if (den == 0) bad(where, "zero denominator in '" + s + "'");
  return Rational(num) / den;
}

std::size_t parse_count(const Json& j, const std::string& where) {
  const Integer z = parse_integer(j, where);
  if (z < 0 || !z.fits_ulong_p()) bad(where, "expected a nonnegative count");
  return z.get_ui();
}

const Json& field_of(const Json& doc, const char* key) {
  if (!doc.contains(key)) bad(key, "missing field");
  return doc.at(key);
}

Fan parse_fan(const Json& doc) {
  const std::size_t dim = parse_count(field_of(doc, "dim"), "dim");
  if (dim == 0) bad("dim", "must be positive");
  const Json& rays_j = field_of(doc, "rays");
  if (!rays_j.is_array()) bad("rays", "expected an array");
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < rays_j.size(); ++i) {
    const std::string where = "rays[" + std::to_string(i) + "]";
    const Json& r = rays_j[i];
    if (!r.is_array() || r.size() != dim)
      bad(where, "expected " + std::to_string(dim) + " integers");
    IntVector v;
    for (std::size_t k = 0; k < dim; ++k) v.push_back(parse_integer(r[k], where));
    if (is_zero(v)) bad(where, "zero ray");
    if (content(v) != 1) bad(where, to_string(v) + " is not primitive");
    rays.push_back(v);
  }
  const Json& cones_j = field_of(doc, "max_cones");
  if (!cones_j.is_array()) bad("max_cones", "expected an array");
  std::vector<Cone> cones;
  for (std::size_t i = 0; i < cones_j.size(); ++i) {
    const std::string where = "max_cones[" + std::to_string(i) + "]";
    if (!cones_j[i].is_array() || cones_j[i].empty()) bad(where, "expected ray indices");
    Cone c;
    for (const Json& x : cones_j[i]) {
      const std::size_t idx = parse_count(x, where);
      if (idx >= rays.size()) bad(where, "ray index " + std::to_string(idx) + " out of range");
      c.push_back(idx);
    }
    cones.push_back(c);
  }
  return Fan(dim, std::move(rays), std::move(cones));
}

RayFiltration parse_filtration(const Json& j, Field field, std::size_t rank, const std::string& where) {
  RayFiltration f;
  f.subspace = Subspace(field, rank);
  if (j.is_null()) return f;
  if (!j.is_object()) bad(where, "expected null or an object");
  if (j.contains("basis")) {
    const Json& basis = j.at("basis");
    if (!basis.is_array()) bad(where + ".basis", "expected an array of vectors");
    std::vector<RatVector> rows;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const std::string w = where + ".basis[" + std::to_string(i) + "]";
      if (!basis[i].is_array() || basis[i].size() != rank)
        bad(w, "expected " + std::to_string(rank) + " entries (the bundle rank)");
      RatVector row;
      for (const Json& x : basis[i]) row.push_back(parse_rational(x, w));
      rows.push_back(row);
    }
    try {
      f.subspace = Subspace::span(field, rank, rows);
    } catch (const Error& e) {
      bad(where + ".basis", e.what());
    }
    if (f.subspace.is_full()) bad(where + ".basis", "spans the whole space");
  }
  if (j.contains("step")) {
    const std::size_t step = parse_count(j.at("step"), where + ".step");
    if (step == 0) bad(where + ".step", "must be positive");
    f.step = static_cast<unsigned>(step);
  }
  if (j.contains("shift")) {
    const Integer s = parse_integer(j.at("shift"), where + ".shift");
    if (!s.fits_slong_p()) bad(where + ".shift", "out of range");
    f.shift = s.get_si();
  }
  return f;
}

Field resolve_field(const Json& doc, std::optional<std::uint64_t> characteristic) {
  std::optional<std::uint64_t> from_file;
  if (doc.contains("char")) {
    const Integer c = parse_integer(doc.at("char"), "char");
    if (c < 0 || !c.fits_ulong_p()) bad("char", "expected 0 or a prime");
    from_file = c.get_ui();
  }
  if (from_file && characteristic && *from_file != *characteristic)
    fail(ErrorKind::FieldMismatch, "char: file says " + std::to_string(*from_file) +
                                       " but --char " + std::to_string(*characteristic) + " was given");
  const std::uint64_t p = from_file ? *from_file : characteristic.value_or(0);
  try {
    return Field::of_characteristic(p);
  } catch (const Error& e) {
    bad("char", e.what());
  }
}

}  // namespace

Input parse_input(const std::string& text, std::optional<std::uint64_t> characteristic) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::Parse, e.what());
  }
  if (!doc.is_object()) bad("document", "expected an object");
  Input in;
  in.fan = parse_fan(doc);
  const Field field = resolve_field(doc, characteristic);
  if (doc.contains("assume_very_general")) {
    if (!doc.at("assume_very_general").is_boolean()) bad("assume_very_general", "expected a boolean");
    in.assume_very_general = doc.at("assume_very_general").get<bool>();
  }
  if (!doc.contains("filtrations")) {
    if (doc.contains("rank")) bad("filtrations", "missing field (rank was given)");
    return in;
  }
  const Json& filt = doc.at("filtrations");
  if (filt.is_string()) {
    in.constructor = filt.get<std::string>();
    if (doc.contains("rank") && parse_count(doc.at("rank"), "rank") != in.fan.dim())
      bad("rank", "the " + in.constructor + " bundle has rank dim");
    if (in.constructor == "cotangent") {
      auto c = cotangent_bundle(in.fan, field);
      in.bundle = std::move(c.bundle);
      in.coincidences = std::move(c.coincidences);
    } else if (in.constructor == "tangent") {
      in.bundle = tangent_bundle(in.fan, field);
    } else {
      bad("filtrations", "unknown constructor '" + in.constructor + "'");
    }
    return in;
  }
  const std::size_t rank = parse_count(field_of(doc, "rank"), "rank");
  if (rank == 0) bad("rank", "must be positive");
  if (!filt.is_array()) bad("filtrations", "expected an array or a constructor name");
  if (filt.size() != in.fan.ray_count())
    bad("filtrations", "expected " + std::to_string(in.fan.ray_count()) + " entries, one per ray");
  ToricVectorBundle b;
  b.fan = in.fan;
  b.rank = rank;
  b.field = field;
  for (std::size_t j = 0; j < filt.size(); ++j)
    b.filtrations.push_back(parse_filtration(filt[j], field, rank, "filtrations[" + std::to_string(j) + "]"));
  in.bundle = std::move(b);
  return in;
}

Input load_input(const std::string& path, std::optional<std::uint64_t> characteristic) {
  std::ifstream file(path);
  require(static_cast<bool>(file), ErrorKind::Io, "cannot read " + path);
  std::ostringstream text;
  text << file.rdbuf();
  return parse_input(text.str(), characteristic);
}

Json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(static_cast<std::int64_t>(z.get_si()));
  return Json(z.get_str());
}

Json rational_to_json(const Rational& q) { return Json(q.get_str()); }

Json vector_to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(integer_to_json(z));
  return out;
}

Json fan_to_json(const Fan& f) {
  Json out;
  out["dim"] = f.dim();
  out["rays"] = Json::array();
  for (const auto& r : f.rays()) out["rays"].push_back(vector_to_json(r));
  out["max_cones"] = f.max_cones();
  return out;
}

Json bundle_to_json(const ToricVectorBundle& b) {
  Json out = fan_to_json(b.fan);
  out["rank"] = b.rank;
  out["char"] = b.field.characteristic();
  out["filtrations"] = Json::array();
  for (const auto& f : b.filtrations) {
    if (f.subspace.is_zero() && f.step == 1 && f.shift == 0) {
      out["filtrations"].push_back(nullptr);
      continue;
    }
    Json entry;
    entry["basis"] = Json::array();
    for (const auto& row : f.subspace.basis_rows()) {
      Json r = Json::array();
      for (const auto& x : row) r.push_back(rational_to_json(x));
      entry["basis"].push_back(r);
    }
    entry["step"] = f.step;
    entry["shift"] = f.shift;
    out["filtrations"].push_back(entry);
  }
  return out;
}

}  // namespace tvb
