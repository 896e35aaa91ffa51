#include "pullfit/error.hpp"

namespace pullfit {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::EmptyDesign: return "EmptyDesign";
    case ErrorCode::InvalidCounts: return "InvalidCounts";
    case ErrorCode::EmptySelection: return "EmptySelection";
    case ErrorCode::InsufficientSingles: return "InsufficientSingles";
    case ErrorCode::WeightOutOfRange: return "WeightOutOfRange";
    case ErrorCode::DegenerateDistribution: return "DegenerateDistribution";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::InvalidBandwidth: return "InvalidBandwidth";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::EmptyObservations: return "EmptyObservations";
    case ErrorCode::Precondition: return "Precondition";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::MissingCondition: return "MissingCondition";
    case ErrorCode::EmptyValues: return "EmptyValues";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::RowError: return "RowError";
    case ErrorCode::ConsistencyError: return "ConsistencyError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::GridError: return "GridError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

} // namespace pullfit
