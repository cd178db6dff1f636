#include "onoff/error.hpp"

namespace onoff {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::DegenerateInput: return "degenerate-input";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::ContractViolation: return "contract-violation";
    case ErrorCode::MustReduce: return "must-reduce";
    case ErrorCode::ComplexityGuard: return "complexity-guard";
    case ErrorCode::ImproperTransform: return "improper-transform";
    case ErrorCode::InfiniteMean: return "infinite-mean";
    case ErrorCode::PrecisionFloor: return "precision-floor";
    case ErrorCode::TailSum: return "tail-sum";
    case ErrorCode::CertificateUnavailable: return "certificate-unavailable";
    case ErrorCode::Undecidable: return "undecidable";
    case ErrorCode::Parse: return "parse";
  }
  return "unknown";
}

}  // namespace onoff
