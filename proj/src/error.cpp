#include "evconflict/error.hpp"

namespace evc {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidFocal: return "invalid-focal";
    case ErrorCode::InvalidWeight: return "invalid-weight";
    case ErrorCode::InvalidMass: return "invalid-mass";
    case ErrorCode::FrameMismatch: return "frame-mismatch";
    case ErrorCode::TotalConflict: return "total-conflict";
    case ErrorCode::EmptyInput: return "empty-input";
    case ErrorCode::DegenerateMass: return "degenerate-mass";
    case ErrorCode::InvalidFrame: return "invalid-frame";
    case ErrorCode::InvalidParams: return "invalid-params";
    case ErrorCode::Shape: return "shape";
    case ErrorCode::InvalidEvidence: return "invalid-evidence";
    case ErrorCode::Numeric: return "numeric";
    case ErrorCode::UnsupportedScale: return "unsupported-scale";
    case ErrorCode::EmptyResponse: return "empty-response";
    case ErrorCode::InvalidKappa: return "invalid-kappa";
    case ErrorCode::IdOutOfRange: return "id-out-of-range";
    case ErrorCode::DegenerateLabels: return "degenerate-labels";
    case ErrorCode::Io: return "io";
    case ErrorCode::BadMagic: return "bad-magic";
    case ErrorCode::BadVersion: return "bad-version";
    case ErrorCode::Truncated: return "truncated";
    case ErrorCode::TrailingData: return "trailing-data";
    case ErrorCode::NonFinite: return "non-finite";
    case ErrorCode::InvalidTag: return "invalid-tag";
    case ErrorCode::InvalidConfig: return "invalid-config";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace evc
