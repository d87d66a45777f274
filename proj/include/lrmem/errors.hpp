#ifndef LRMEM_ERRORS_HPP
#define LRMEM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lrmem {

/// Bad arguments or configuration: the caller asked for something the
/// preconditions rule out.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or non-finite input data (CSV cells, NaN observations).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File system failures.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure could not produce a result (e.g. Cholesky failure).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lrmem

#endif  // LRMEM_ERRORS_HPP
