#pragma once

#include <stdexcept>
#include <string>

namespace defog {

/// Structured failure categories used across the library. Every recoverable
/// failure surfaces as an Error carrying one of these kinds; callers that
/// need to branch on the cause switch on kind() instead of parsing messages.
enum class ErrorKind {
  ShapeMismatch,
  TooFewFrames,
  NegativePixel,
  NonFinitePixel,
  EmptyInput,
  NegativeInput,
  RangeError,
  TooSmall,
  BadMagic,
  BadHeader,
  TruncatedData,
  SampleOutOfRange,
  ChannelMismatch,
  InvalidArgument,
  IoError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace defog
