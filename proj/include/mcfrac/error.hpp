#pragma once

#include <stdexcept>
#include <string>

namespace mcfrac {

/// Error categories shared by the C++ core and the C ABI status codes.
enum class ErrorCode {
  ok = 0,
  invalid_argument = 1,
  domain = 2,
  numeric = 3,
  data = 4,
  singular_operator = 5,
  io = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCode::invalid_argument, what) {}
};

/// Argument outside the mathematical domain of a function (|y| >= 1 for the
/// map, a Gamma pole, ...).
struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorCode::domain, what) {}
};

/// Iteration failed to converge, or produced non-finite output.
struct NumericError : Error {
  explicit NumericError(const std::string& what) : Error(ErrorCode::numeric, what) {}
};

/// Input samples are unusable (non-finite values, shape mismatch in files).
struct DataError : Error {
  explicit DataError(const std::string& what) : Error(ErrorCode::data, what) {}
};

/// A spectral multiplier vanished or became negative at some mode.
struct SingularOperator : Error {
  explicit SingularOperator(const std::string& what)
      : Error(ErrorCode::singular_operator, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

}  // namespace mcfrac
