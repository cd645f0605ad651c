#pragma once

#include <stdexcept>
#include <string>

namespace stagecert {

enum class ErrorKind {
  Domain,       // argument outside the mathematical domain (sqrt of negative, ...)
  Unavailable,  // sequence entry or stage not materialized
  Range,        // index outside the directly defined range
  Integrity,    // internal consistency check failed (e.g. ambiguous Lambda decomposition)
  Resource,     // dimension / size cap exceeded
  Divergence,   // defining series does not converge
  Degenerate,   // seminorm identically zero
  Geometry,     // contour meets the spectrum
  Usage,        // malformed configuration or command line
};

const char* to_string(ErrorKind kind);

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

}  // namespace stagecert
