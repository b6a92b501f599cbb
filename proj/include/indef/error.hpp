#pragma once

#include <stdexcept>
#include <string>

namespace indef {

enum class ErrorCode {
  DuplicateVertexInSimplex,
  IndexOutOfRange,
  EmptyInput,
  MissingEdgeValue,
  UnknownEdge,
  NonFiniteValue,
  LengthMismatch,
  ComplexMismatch,
  NonFiniteScalar,
  CombinatorialBlowup,
  UnknownSimplex,
  BadBarycentric,
  CliqueCapTooSmall,
  RetriesExhausted,
  SolverDiverged,
  SingularFamily,
  ParseError,
  VerificationFailed,
  UnknownFamily,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DuplicateVertexInSimplex: return "DuplicateVertexInSimplex";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::MissingEdgeValue: return "MissingEdgeValue";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ComplexMismatch: return "ComplexMismatch";
    case ErrorCode::NonFiniteScalar: return "NonFiniteScalar";
    case ErrorCode::CombinatorialBlowup: return "CombinatorialBlowup";
    case ErrorCode::UnknownSimplex: return "UnknownSimplex";
    case ErrorCode::BadBarycentric: return "BadBarycentric";
    case ErrorCode::CliqueCapTooSmall: return "CliqueCapTooSmall";
    case ErrorCode::RetriesExhausted: return "RetriesExhausted";
    case ErrorCode::SolverDiverged: return "SolverDiverged";
    case ErrorCode::SingularFamily: return "SingularFamily";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace indef
