#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pullfit {

enum class ErrorCode {
  // stimulus design
  InvalidSpec,
  EmptyDesign,
  // simulation
  InvalidCounts,
  EmptySelection,
  // synthesis
  InsufficientSingles,
  WeightOutOfRange,
  // density estimation
  DegenerateDistribution,
  InsufficientSamples,
  InvalidBandwidth,
  InvalidGrid,
  EmptyObservations,
  // estimation
  Precondition,
  NonFinite,
  MissingCondition,
  EmptyValues,
  // input and configuration
  SchemaError,
  RowError,
  ConsistencyError,
  ParseError,
  ValidationError,
  GridError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// the CLI can map it to an exit status and a machine-parsable diagnostic.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

/// Row-level ingestion failure; `line()` is 1-based and counts the header.
class RowError : public Error {
public:
  RowError(ErrorCode code, std::size_t line, const std::string& message)
      : Error(code, "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace pullfit
