#pragma once

#include <stdexcept>
#include <string>

namespace sw {

/// Error taxonomy shared by the C++ core, the C API and the CLI exit codes.
enum class ErrorKind {
  Usage,         // precondition or argument violation
  Input,         // malformed or non-finite input data, unreadable files
  Numerical,     // an iterative routine failed to converge
  Verification,  // an acceptance check did not hold
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorKind::Input, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class VerificationError : public Error {
 public:
  explicit VerificationError(const std::string& what) : Error(ErrorKind::Verification, what) {}
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw UsageError(message);
}

}  // namespace sw
