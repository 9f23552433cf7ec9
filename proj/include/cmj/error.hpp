#pragma once

#include <stdexcept>
#include <string>

namespace cmj {

enum class ErrorKind {
  structural_input,   // bad vertex/edge references, overlapping families, ...
  no_join,            // some component has an odd number of terminals
  not_minimum_join,   // a join was supplied where a minimum one is required
  theorem_violation,  // a structural theorem failed to hold at runtime
  oracle_scale,       // instance exceeds an exhaustive oracle's size guard
  parse,
  contract,           // caller broke a documented precondition
  internal,
};

const char* to_string(ErrorKind kind) noexcept;

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

}  // namespace cmj
