#pragma once

#include <stdexcept>
#include <string>

namespace limop {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedTag : public Error {
 public:
  using Error::Error;
};

// Objective evaluated to a non-finite value at every probed feasible point.
class NonFiniteObjective : public Error {
 public:
  using Error::Error;
};

// A probe point produced +inf or NaN.
class NonFinite : public Error {
 public:
  using Error::Error;
};

class GridTooLarge : public Error {
 public:
  using Error::Error;
};

class NotInDomain : public Error {
 public:
  using Error::Error;
};

class SetupError : public Error {
 public:
  using Error::Error;
};

}  // namespace limop
