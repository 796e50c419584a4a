#pragma once

#include <stdexcept>
#include <string>

namespace kbfe {

enum class ErrorCode {
  invalid_argument,
  parse,
  sizing,
  hypothesis,
  validation,
  budget,
};

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorCode::invalid_argument, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorCode::parse, what) {}
};

/// The evaluation window is too small for the requested recovery.
class SizingError : public Error {
 public:
  explicit SizingError(const std::string& what) : Error(ErrorCode::sizing, what) {}
};

/// The group or input violates a structural hypothesis of the operation.
class HypothesisError : public Error {
 public:
  explicit HypothesisError(const std::string& what) : Error(ErrorCode::hypothesis, what) {}
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error(ErrorCode::budget, what) {}
};

}  // namespace kbfe
