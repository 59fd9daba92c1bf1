#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace abc {

enum class ErrorCode {
  ZeroInverse,
  BadModulus,
  BadLength,
  Undefined,
  ParseError,
  NotOnCurve,
  ZeroDenominator,
  EmptyAttributes,
  TooManyAttributes,
  AttributeRange,
  IndexOutOfRange,
  RngFailure,
  PrimeSearchExhausted,
  MalformedPoint,
  FrameTooLarge,
  MalformedJson,
  UnexpectedEof,
  ConnectionFailed,
  ProtocolError,
  IoFailure,
  UnsupportedPlatform,
  EmptyCell,
  BadConfig,
};

std::string_view error_code_name(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace abc
