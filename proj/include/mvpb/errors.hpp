#ifndef MVPB_ERRORS_HPP
#define MVPB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mvpb {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ShapeMismatch : Error {
  using Error::Error;
};

struct NotADistribution : Error {
  using Error::Error;
};

struct EmptySample : Error {
  using Error::Error;
};

struct AbsoluteContinuityViolation : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct InstanceTooLarge : Error {
  using Error::Error;
};

struct TooFewExamples : Error {
  using Error::Error;
};

struct RequestTooLarge : Error {
  using Error::Error;
};

struct UnknownClass : Error {
  using Error::Error;
};

struct LineCountMismatch : Error {
  using Error::Error;
};

struct LabelDomainError : Error {
  using Error::Error;
};

struct ModelVersionMismatch : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

// Carries the position of the offending token (1-based line and column).
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

}  // namespace mvpb

#endif
