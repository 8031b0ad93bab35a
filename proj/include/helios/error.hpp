#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace helios {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// core-data
class MissingColumn : public Error {
 public:
  explicit MissingColumn(const std::string& column)
      : Error("missing column: " + column), column_(column) {}
  const std::string& column() const noexcept { return column_; }

 private:
  std::string column_;
};

class UnparsableRow : public Error {
 public:
  UnparsableRow(std::size_t line, const std::string& what)
      : Error("unparsable row at line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class NonMonotonicTimestamps : public Error {
 public:
  using Error::Error;
};
class BoundaryOutOfRange : public Error {
 public:
  using Error::Error;
};
class DatasetHasGaps : public Error {
 public:
  using Error::Error;
};

// features / components / learning
class InsufficientHistory : public Error {
 public:
  using Error::Error;
};
class InsufficientLags : public Error {
 public:
  using Error::Error;
};
class AlignmentMismatch : public Error {
 public:
  using Error::Error;
};
class NonFiniteInput : public Error {
 public:
  using Error::Error;
};
class NonFiniteObjective : public Error {
 public:
  using Error::Error;
};
class NonFiniteGradient : public Error {
 public:
  using Error::Error;
};
class MissingExogenous : public Error {
 public:
  using Error::Error;
};
class DegenerateData : public Error {
 public:
  using Error::Error;
};
class IoError : public Error {
 public:
  using Error::Error;
};
class SchemaVersionMismatch : public Error {
 public:
  using Error::Error;
};
class ConfigError : public Error {
 public:
  using Error::Error;
};

// evaluation
class LengthMismatch : public Error {
 public:
  using Error::Error;
};
class DegenerateVariance : public Error {
 public:
  using Error::Error;
};
class SingularDesign : public Error {
 public:
  using Error::Error;
};
class InsufficientCoverage : public Error {
 public:
  using Error::Error;
};

}  // namespace helios
