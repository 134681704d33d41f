#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace msvc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An ordering is not a permutation of the graph's vertex set.
class InvalidOrdering : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive routine was asked to do more work than its budget allows.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Parameters are individually valid but cannot be realized together.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The gadget sampler ran out of retries.
class SamplingFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. `line()` is 1-based; 0 means end of input.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace msvc
