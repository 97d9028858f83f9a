#pragma once

#include <stdexcept>
#include <string>

namespace parabolica {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad Coxeter matrix, unknown label, out-of-range parameter.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A configured resource bound (cell cap, coset cap, search bound) was hit.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// A semi-decision procedure gave up without an answer.
class Inconclusive : public Error {
 public:
  using Error::Error;
};

}  // namespace parabolica
