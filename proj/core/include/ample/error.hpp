#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ample {

/// Structured failure: a stable code, a human-readable message and the
/// indices of the elements that witness the failure.
struct Error {
  std::string code;
  std::string message;
  std::vector<int> witness;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(Error e)
      : std::runtime_error(e.code + ": " + e.message), error_(std::move(e)) {}

  ValidationError(std::string code, std::string message,
                  std::vector<int> witness = {})
      : ValidationError(
            Error{std::move(code), std::move(message), std::move(witness)}) {}

  const Error& error() const { return error_; }
  const std::string& code() const { return error_.code; }
  const std::vector<int>& witness() const { return error_.witness; }

 private:
  Error error_;
};

[[noreturn]] inline void fail(std::string code, std::string message,
                              std::vector<int> witness = {}) {
  throw ValidationError(std::move(code), std::move(message),
                        std::move(witness));
}

}  // namespace ample
