#pragma once

#include <stdexcept>
#include <string>

namespace dirint {

enum class ErrorKind {
  InvalidDegree,
  DegreeMismatch,
  OrderOverflow,
  OrderMismatch,
  Design,
  Validation,
  DivisionByZero,
  UndefinedDiffuseness,
  UndefinedDoa,
  UndefinedBias,
  EmptyInput,
  Io,
};

/// Library exception. Every failure the library reports carries a kind so the
/// CLI can map it onto its exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// 2 for input/validation problems, 3 for numeric degeneracies, 4 for I/O.
inline int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DivisionByZero:
    case ErrorKind::UndefinedDiffuseness:
    case ErrorKind::UndefinedDoa:
    case ErrorKind::UndefinedBias:
    case ErrorKind::EmptyInput:
      return 3;
    case ErrorKind::Io:
      return 4;
    default:
      return 2;
  }
}

}  // namespace dirint
