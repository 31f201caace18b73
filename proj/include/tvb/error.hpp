#pragma once

#include <stdexcept>
#include <string>

namespace tvb {

enum class ErrorKind {
  InvalidArgument,
  FieldMismatch,
  OutOfScope,
  Parse,
  Validation,
  Unsupported,
  Io,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace tvb
