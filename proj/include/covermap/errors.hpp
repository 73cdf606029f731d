#pragma once

#include <stdexcept>
#include <string>

namespace covermap {

// Error taxonomy shared across the library.
//
// kInvalidInput  -> caller violated a documented precondition or fed bad data
// kInconclusive  -> a bounded search exhausted its ceiling; not a disproof
// kHypothesis    -> the hypotheses of a planning theorem fail for the input
// kOverflow      -> exact 64-bit arithmetic would have wrapped
// kInternal      -> a verified internal invariant broke (bug)
enum class ErrorKind {
  kInvalidInput,
  kInconclusive,
  kHypothesis,
  kOverflow,
  kInternal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kInconclusive: return "inconclusive";
    case ErrorKind::kHypothesis: return "hypothesis-failed";
    case ErrorKind::kOverflow: return "overflow";
    case ErrorKind::kInternal: return "internal";
  }
  return "unknown";
}

}  // namespace covermap
