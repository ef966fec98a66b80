#pragma once

#include <stdexcept>
#include <string>

namespace flatsurf {

enum class ErrorKind {
  NotTransitive,
  SizeMismatch,
  MalformedDiagram,
  MalformedSurface,
  BasisMismatch,
  DomainError,
  NotGenusThree,
  Unsupported,
  NotRel,
  InvalidClass,
  OrbitTooLarge,
  NotClosed,
  CapExceeded,
  ConfigError,
  ResumeMismatch,
  InvariantViolation,
  Overflow,
  ParseError,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace flatsurf
