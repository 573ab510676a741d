#include "ffvc/error.hpp"

namespace ffvc {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::ZeroParameter: return "ZeroParameter";
    case ErrorCode::ConstantPolynomial: return "ConstantPolynomial";
    case ErrorCode::DegreeDivisibleByP: return "DegreeDivisibleByP";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::NotQuadratic: return "NotQuadratic";
    case ErrorCode::DegenerateConic: return "DegenerateConic";
    case ErrorCode::BadDegree: return "BadDegree";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::SizeOutOfRange: return "SizeOutOfRange";
    case ErrorCode::DegenerateSize: return "DegenerateSize";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace ffvc
