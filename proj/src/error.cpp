#include "abc/error.hpp"

namespace abc {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::BadModulus: return "BadModulus";
    case ErrorCode::BadLength: return "BadLength";
    case ErrorCode::Undefined: return "Undefined";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotOnCurve: return "NotOnCurve";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::EmptyAttributes: return "Empty";
    case ErrorCode::TooManyAttributes: return "TooManyAttributes";
    case ErrorCode::AttributeRange: return "AttributeRange";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::RngFailure: return "RngFailure";
    case ErrorCode::PrimeSearchExhausted: return "PrimeSearchExhausted";
    case ErrorCode::MalformedPoint: return "MalformedPoint";
    case ErrorCode::FrameTooLarge: return "FrameTooLarge";
    case ErrorCode::MalformedJson: return "MalformedJson";
    case ErrorCode::UnexpectedEof: return "UnexpectedEof";
    case ErrorCode::ConnectionFailed: return "ConnectionFailed";
    case ErrorCode::ProtocolError: return "ProtocolError";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::UnsupportedPlatform: return "UnsupportedPlatform";
    case ErrorCode::EmptyCell: return "EmptyCell";
    case ErrorCode::BadConfig: return "BadConfig";
  }
  return "Unknown";
}

}  // namespace abc
