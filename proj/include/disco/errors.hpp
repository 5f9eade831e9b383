#pragma once

#include <stdexcept>
#include <string>

namespace disco {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad caller input: empty names, malformed constraint clauses, out-of-range
// configuration values.
struct ValidationError : Error {
  using Error::Error;
};

// A key that does not resolve in the store it was presented to.
struct NotFoundError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

// Query normalization produced zero tokens.
struct EmptyQueryError : ValidationError {
  using ValidationError::ValidationError;
};

}  // namespace disco
