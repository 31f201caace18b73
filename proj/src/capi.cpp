#include "tvb/tvb.h"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <new>

#include "tvb/error.hpp"
#include "tvb/report.hpp"

struct tvb_input {
  tvb::Input value;
};

namespace {

thread_local std::string last_error;

tvb_status status_of(tvb::ErrorKind k) {
  switch (k) {
    case tvb::ErrorKind::InvalidArgument: return TVB_INVALID_ARGUMENT;
    case tvb::ErrorKind::FieldMismatch: return TVB_FIELD_MISMATCH;
    case tvb::ErrorKind::OutOfScope: return TVB_OUT_OF_SCOPE;
    case tvb::ErrorKind::Parse: return TVB_PARSE;
    case tvb::ErrorKind::Validation: return TVB_VALIDATION;
    case tvb::ErrorKind::Unsupported: return TVB_UNSUPPORTED;
    case tvb::ErrorKind::Io: return TVB_IO;
    case tvb::ErrorKind::Internal: return TVB_INTERNAL;
  }
  return TVB_INTERNAL;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
tvb_status guarded(Fn fn) {
  try {
    last_error.clear();
    fn();
    return TVB_OK;
  } catch (const tvb::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    last_error = e.what();
    return TVB_INTERNAL;
  }
}

tvb::ReportOptions options_of(const tvb_options* opts) {
  tvb::ReportOptions o;
  if (!opts) return o;
  o.seed = opts->seed;
  o.budget = opts->budget;
  if (opts->has_characteristic) o.characteristic = opts->characteristic;
  return o;
}

bool as_json(const tvb_options* opts) { return opts && opts->format == TVB_FORMAT_JSON; }

void require_args(bool ok) {
  tvb::require(ok, tvb::ErrorKind::InvalidArgument, "null argument");
}

tvb_status emit(const tvb_options* opts, char** report, int* has_errors,
                const std::function<tvb::Report()>& make) {
  return guarded([&] {
    require_args(report != nullptr);
    const tvb::Report r = make();
    *report = copy_string(tvb::render(r, as_json(opts)));
    if (has_errors) *has_errors = r.has_errors ? 1 : 0;
  });
}

}  // namespace

extern "C" {

void tvb_options_init(tvb_options* opts) {
  if (!opts) return;
  opts->format = TVB_FORMAT_TEXT;
  opts->seed = 1;
  opts->budget = 5;
  opts->has_characteristic = 0;
  opts->characteristic = 0;
}

tvb_status tvb_input_load(const char* path, const tvb_options* opts, tvb_input** out) {
  return guarded([&] {
    require_args(path && out);
    *out = new tvb_input{tvb::load_input(path, options_of(opts).characteristic)};
  });
}

tvb_status tvb_input_parse(const char* text, const tvb_options* opts, tvb_input** out) {
  return guarded([&] {
    require_args(text && out);
    *out = new tvb_input{tvb::parse_input(text, options_of(opts).characteristic)};
  });
}

void tvb_input_free(tvb_input* in) { delete in; }

tvb_status tvb_validate(const tvb_input* in, const tvb_options* opts, char** report, int* has_errors) {
  return emit(opts, report, has_errors, [&] {
    require_args(in != nullptr);
    return tvb::validate_report(in->value);
  });
}

tvb_status tvb_cox(const tvb_input* in, const tvb_options* opts, char** report) {
  return emit(opts, report, nullptr, [&] {
    require_args(in != nullptr);
    return tvb::cox_report(in->value);
  });
}

tvb_status tvb_mds(const tvb_input* in, const tvb_options* opts, char** report) {
  return emit(opts, report, nullptr, [&] {
    require_args(in != nullptr);
    return tvb::mds_report(in->value);
  });
}

tvb_status tvb_mds_params(size_t rank, size_t points, const char* position,
                          const tvb_options* opts, char** report) {
  return emit(opts, report, nullptr, [&] {
    require_args(position != nullptr);
    return tvb::mds_params_report(rank, points, position);
  });
}

tvb_status tvb_effcone(const tvb_input* in, const tvb_options* opts, char** report) {
  return emit(opts, report, nullptr, [&] {
    require_args(in != nullptr);
    return tvb::effcone_report(in->value, options_of(opts));
  });
}

tvb_status tvb_orbit_class(const tvb_input* in, const char* form, const tvb_options* opts,
                           char** report) {
  return emit(opts, report, nullptr, [&] {
    require_args(in && form);
    return tvb::class_report(in->value, form);
  });
}

tvb_status tvb_example(const char* name, size_t dim, size_t rank, const char* fan_path,
                       const tvb_options* opts, char** report, int* has_errors) {
  return emit(opts, report, has_errors, [&] {
    require_args(name != nullptr);
    tvb::ExampleArgs args;
    if (dim) args.dim = dim;
    if (rank) args.rank = rank;
    if (fan_path) args.fan_path = fan_path;
    return tvb::example_report(name, args, options_of(opts));
  });
}

tvb_status tvb_input_to_json(const tvb_input* in, char** out) {
  return guarded([&] {
    require_args(in && out);
    const auto& v = in->value;
    const tvb::Json doc = v.bundle ? tvb::bundle_to_json(*v.bundle) : tvb::fan_to_json(v.fan);
    *out = copy_string(doc.dump(2) + "\n");
  });
}

void tvb_string_free(char* s) { std::free(s); }

const char* tvb_last_error(void) { return last_error.c_str(); }

const char* tvb_status_name(tvb_status status) {
  switch (status) {
    case TVB_OK: return "ok";
    case TVB_INVALID_ARGUMENT: return "invalid argument";
    case TVB_PARSE: return "parse error";
    case TVB_VALIDATION: return "validation error";
    case TVB_OUT_OF_SCOPE: return "out of scope";
    case TVB_FIELD_MISMATCH: return "field mismatch";
    case TVB_UNSUPPORTED: return "unsupported";
    case TVB_IO: return "i/o error";
    case TVB_INTERNAL: return "internal error";
  }
  return "unknown status";
}

}  // extern "C"
