#pragma once

#include <stdexcept>
#include <string>

namespace wiretap {

// Every library failure carries a stable kind name; the CLI prints it on
// standard error so scripts can branch on it.
enum class ErrorKind {
  kNonPositiveDefinite,
  kSingularMatrix,
  kDimensionMismatch,
  kLengthMismatch,
  kParseError,
  kInvalidPower,
  kInvalidArgument,
  kInnerNotImproved,
  kTooManyUsers,
  kUnsupportedK,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  const char* name() const { return error_kind_name(kind_); }

 private:
  ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNonPositiveDefinite: return "NonPositiveDefinite";
    case ErrorKind::kSingularMatrix: return "SingularMatrix";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kLengthMismatch: return "LengthMismatch";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kInvalidPower: return "InvalidPower";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kInnerNotImproved: return "InnerNotImproved";
    case ErrorKind::kTooManyUsers: return "TooManyUsers";
    case ErrorKind::kUnsupportedK: return "UnsupportedK";
  }
  return "Unknown";
}

}  // namespace wiretap
