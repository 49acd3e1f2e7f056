#pragma once

#include <stdexcept>
#include <string>

namespace gquant {

// Each kind maps to a distinct CLI exit code.
enum class ErrorKind {
  Structural,   // mismatched groups, shapes, dimensions
  Capacity,     // size above the supported cap
  Capability,   // operation not supported for this input
  Numerical,    // a residual check inside a construction failed
  Naturality,   // block extraction found off-structure mass
  Singularity,  // a required inverse does not exist
  Parse,        // malformed spec string or JSON payload
  Rejected,     // input fails a precondition check (e.g. not coherent)
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace gquant
