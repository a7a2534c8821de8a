#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gcy {

// Base for everything the library throws on bad input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// A documented precondition does not hold (degree, parity, purity, closedness ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class StabilityError : public Error {
 public:
  StabilityError(const std::string& what, std::size_t point)
      : Error(what), point_(point) {}
  std::size_t point() const { return point_; }

 private:
  std::size_t point_;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace gcy
