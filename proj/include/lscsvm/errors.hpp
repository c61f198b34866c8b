#ifndef LSCSVM_ERRORS_HPP_
#define LSCSVM_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lscsvm {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument shape or value (dimension mismatch, invalid hyperparameter).
class InputError : public Error {
 public:
  using Error::Error;
};

// A matrix or operator that should be symmetric positive definite is not.
class DefinitenessError : public Error {
 public:
  using Error::Error;
};

// Two training inputs coincide, which makes the Gram matrix singular.
class DuplicatePointError : public DefinitenessError {
 public:
  DuplicatePointError(std::size_t first, std::size_t second)
      : DefinitenessError("duplicate input points at indices " +
                          std::to_string(first) + " and " +
                          std::to_string(second)),
        first_(first),
        second_(second) {}

  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

// Malformed text input; line is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class VersionError : public Error {
 public:
  using Error::Error;
};

// Structurally valid input whose contents are inconsistent.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Raised when the rho-condition is enforced as an error and does not hold.
class RhoConditionError : public Error {
 public:
  using Error::Error;
};

// Every start of a multi-start training run failed.
class TrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace lscsvm

#endif  // LSCSVM_ERRORS_HPP_
