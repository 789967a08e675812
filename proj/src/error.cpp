#include "polyflow/error.hpp"

namespace polyflow {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidPolygon: return "INVALID_POLYGON";
    case ErrorCode::DegenerateTriple: return "DEGENERATE_TRIPLE";
    case ErrorCode::CoincidentVertices: return "COINCIDENT_VERTICES";
    case ErrorCode::DegenerateLeadingMode: return "DEGENERATE_LEADING_MODE";
    case ErrorCode::PreconditionNotStar: return "PRECONDITION_NOT_STAR";
    case ErrorCode::PreconditionNotConvex: return "PRECONDITION_NOT_CONVEX";
    case ErrorCode::NotSimple: return "NOT_SIMPLE";
    case ErrorCode::GenerationFailed: return "GENERATION_FAILED";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::Io: return "IO_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace polyflow
