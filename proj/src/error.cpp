#include "condtree/error.hpp"

namespace condtree {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidPreorder: return "InvalidPreorder";
    case ErrorCode::InvalidContour: return "InvalidContour";
    case ErrorCode::VertexNotInTree: return "VertexNotInTree";
    case ErrorCode::SingletonTree: return "SingletonTree";
    case ErrorCode::EmptyVertex: return "EmptyVertex";
    case ErrorCode::RootNotAllowed: return "RootNotAllowed";
    case ErrorCode::RootAboveLevel: return "RootAboveLevel";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::SizeOverflow: return "SizeOverflow";
    case ErrorCode::UnreachableSize: return "UnreachableSize";
    case ErrorCode::RejectionBudgetExhausted: return "RejectionBudgetExhausted";
    case ErrorCode::IrrationalMass: return "IrrationalMass";
    case ErrorCode::NotWellLabelled: return "NotWellLabelled";
    case ErrorCode::NotAQuadrangulation: return "NotAQuadrangulation";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::NonUniqueMinimum: return "NonUniqueMinimum";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace condtree
