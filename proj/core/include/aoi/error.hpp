#pragma once

#include <stdexcept>
#include <string>

namespace aoi {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad parameters, wrong lengths, budget or divisibility
/// violations.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive computation would exceed its configured size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace aoi
