#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace densitykit {

enum class ErrorKind {
  invalid_parameter,
  projection_singular,
  radius_too_large,
  unsupported,
  input_inconsistent,
  out_of_range,
  parse_error,
  infeasible,
  construction,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::projection_singular: return "projection-singular";
    case ErrorKind::radius_too_large: return "radius-too-large";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::input_inconsistent: return "input-inconsistent";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::construction: return "construction";
  }
  return "unknown";
}

/// Every failure raised by the toolkit carries one of the kinds above so
/// callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace densitykit
