#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace focus {

enum class ErrorCode {
  // I/O and decoding
  Io,
  UnsupportedFormat,
  CorruptFile,
  // Input validation
  MalformedLine,
  NonIncreasingPositions,
  EmptyManifest,
  EmptyCurve,
  ImageTooSmall,
  InvalidStep,
  InvalidArgument,
  TooFewPoints,
  BadSmoothingWidth,
  BadStep,
};

std::string_view to_string(ErrorCode code);

// True for errors that come from reading or decoding external data, false for
// precondition violations on otherwise readable inputs.
bool is_io_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  // The message without the code prefix, for re-wrapping with context.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace focus
