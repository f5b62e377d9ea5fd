#pragma once

#include <stdexcept>
#include <string>

namespace flatbundle {

enum class ErrorCode {
  invalid_argument,
  parse,
  invalid_genus,
  invalid_matrix,
  complexity_budget,
  budget_exhausted,
  ambiguous_arc,
  sampling_gap,
  genus_mismatch,
  word_too_long,
  degenerate_vertex,
  not_a_representation,
  ambiguous_integer,
  internal_consistency,
  theorem_violation,
  audit_failure,
};

const char* to_string(ErrorCode code) noexcept;

// True for codes that describe bad caller input rather than a failed check.
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  // position is 1-based (token index for words, byte offset otherwise).
  ParseError(std::size_t position, const std::string& what)
      : Error(ErrorCode::parse, what), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace flatbundle
