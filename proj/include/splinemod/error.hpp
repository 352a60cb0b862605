#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace splinemod {

enum class ErrorCode {
  ParseError,
  InvalidModulus,
  UnknownVertex,
  SelfLoop,
  LengthMismatch,
  NotAnExtension,
  NotADivisor,
  NotSingleLabel,
  NotConnected,
  NotPowerFamily,
  RotationRequired,
  PreconditionViolated,
  HypothesisViolated,
  InfeasibleParameters,
  NotACycle,
  NoTheoremApplies,
  BudgetExceeded,
  NotAGroup,
  NonCoprimeModuli,
  IntegerMode,
  InternalInconsistency,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget)
      : Error(ErrorCode::BudgetExceeded,
              "requires " + (required == UINT64_MAX ? std::string(">2^64") : std::to_string(required)) +
                  " but budget is " + std::to_string(budget)),
        required_(required) {}

  /// UINT64_MAX when the requirement itself overflows.
  std::uint64_t required() const noexcept { return required_; }

 private:
  std::uint64_t required_;
};

class RotationRequired : public Error {
 public:
  explicit RotationRequired(std::size_t rotation)
      : Error(ErrorCode::RotationRequired,
              "cycle must be rotated by " + std::to_string(rotation) + " positions"),
        rotation_(rotation) {}

  std::size_t rotation() const noexcept { return rotation_; }

 private:
  std::size_t rotation_;
};

}  // namespace splinemod
