#pragma once

#include <stdexcept>
#include <string>

namespace vnd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class NotPositive : public Error {
 public:
  using Error::Error;
};

class NotSubalgebra : public Error {
 public:
  using Error::Error;
};

class NotAGroup : public Error {
 public:
  using Error::Error;
};

// Requested configuration is outside what the implementation handles
// (e.g. non-faithful reference state for the L_p oracle).
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace vnd
