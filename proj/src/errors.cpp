#include "flatbundle/errors.hpp"

namespace flatbundle {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::parse: return "parse-error";
    case ErrorCode::invalid_genus: return "invalid-genus";
    case ErrorCode::invalid_matrix: return "invalid-matrix";
    case ErrorCode::complexity_budget: return "complexity-budget";
    case ErrorCode::budget_exhausted: return "budget-exhausted";
    case ErrorCode::ambiguous_arc: return "ambiguous-arc";
    case ErrorCode::sampling_gap: return "sampling-gap";
    case ErrorCode::genus_mismatch: return "genus-mismatch";
    case ErrorCode::word_too_long: return "word-too-long";
    case ErrorCode::degenerate_vertex: return "degenerate-vertex";
    case ErrorCode::not_a_representation: return "not-a-representation";
    case ErrorCode::ambiguous_integer: return "ambiguous-integer";
    case ErrorCode::internal_consistency: return "internal-consistency";
    case ErrorCode::theorem_violation: return "theorem-violation";
    case ErrorCode::audit_failure: return "audit-failure";
  }
  return "unknown";
}

bool is_input_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument:
    case ErrorCode::parse:
    case ErrorCode::invalid_genus:
    case ErrorCode::invalid_matrix:
    case ErrorCode::ambiguous_arc:
    case ErrorCode::sampling_gap:
    case ErrorCode::genus_mismatch:
    case ErrorCode::word_too_long:
    case ErrorCode::degenerate_vertex:
    case ErrorCode::complexity_budget:
      return true;
    default:
      return false;
  }
}

}  // namespace flatbundle
