#pragma once

#include <stdexcept>
#include <string>

namespace wtm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad configuration: missing columns, malformed mapping or override files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input data that cannot be analyzed (e.g. nothing left after row filtering).
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace wtm
