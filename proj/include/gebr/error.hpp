#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <cstdint>

namespace gebr {

enum class ErrorCode {
  FieldMismatch,
  BadFieldWidth,
  ModulusMismatch,
  DivisionByZero,
  BothZero,
  NotInvertible,
  BadModulus,
  NotPrime,
  GNotDivisor,
  BadShape,
  Degenerate,
  LengthMismatch,
  UnsolvablePattern,
  SingularModH,
  NoUnitPivot,
  InsufficientKnowns,
  InconsistentKnowns,
  TooManyErasures,
  TooManyLines,
  UnsupportedParams,
  GNotInvertible,
  NotCoprime,
  WitnessCheckFailed,
  NoWitnessClause,
  TooLarge,
  VerificationFailed,
  BadContainer,
  BadArgument,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::BadFieldWidth: return "BadFieldWidth";
    case ErrorCode::ModulusMismatch: return "ModulusMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::BothZero: return "BothZero";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::BadModulus: return "BadModulus";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::GNotDivisor: return "GNotDivisor";
    case ErrorCode::BadShape: return "BadShape";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::UnsolvablePattern: return "UnsolvablePattern";
    case ErrorCode::SingularModH: return "SingularModH";
    case ErrorCode::NoUnitPivot: return "NoUnitPivot";
    case ErrorCode::InsufficientKnowns: return "InsufficientKnowns";
    case ErrorCode::InconsistentKnowns: return "InconsistentKnowns";
    case ErrorCode::TooManyErasures: return "TooManyErasures";
    case ErrorCode::TooManyLines: return "TooManyLines";
    case ErrorCode::UnsupportedParams: return "UnsupportedParams";
    case ErrorCode::GNotInvertible: return "GNotInvertible";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::WitnessCheckFailed: return "WitnessCheckFailed";
    case ErrorCode::NoWitnessClause: return "NoWitnessClause";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::BadContainer: return "BadContainer";
    case ErrorCode::BadArgument: return "BadArgument";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this exception. Algebraic
/// failures (a non-unit determinant, a non-invertible element) carry the
/// offending gcd as little-endian coefficient bytes in `witness()`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Error(ErrorCode code, const std::string& what, std::vector<std::uint8_t> witness, unsigned width)
      : Error(code, what) {
    witness_ = std::move(witness);
    witness_width_ = width;
  }

  ErrorCode code() const noexcept { return code_; }
  const std::optional<std::vector<std::uint8_t>>& witness() const noexcept { return witness_; }
  unsigned witness_width() const noexcept { return witness_width_; }

 private:
  ErrorCode code_;
  std::optional<std::vector<std::uint8_t>> witness_;
  unsigned witness_width_ = 1;
};

}  // namespace gebr
