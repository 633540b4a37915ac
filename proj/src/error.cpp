#include "focus/error.hpp"

namespace focus {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io: return "Io";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptFile: return "CorruptFile";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::NonIncreasingPositions: return "NonIncreasingPositions";
    case ErrorCode::EmptyManifest: return "EmptyManifest";
    case ErrorCode::EmptyCurve: return "EmptyCurve";
    case ErrorCode::ImageTooSmall: return "ImageTooSmall";
    case ErrorCode::InvalidStep: return "InvalidStep";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::BadSmoothingWidth: return "BadSmoothingWidth";
    case ErrorCode::BadStep: return "BadStep";
  }
  return "Unknown";
}

bool is_io_error(ErrorCode code) {
  return code == ErrorCode::Io || code == ErrorCode::UnsupportedFormat ||
         code == ErrorCode::CorruptFile;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

}  // namespace focus
