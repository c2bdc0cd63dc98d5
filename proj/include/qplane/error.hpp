#pragma once

#include <stdexcept>
#include <string>

namespace qplane {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters (q outside (0,1), empty windows, bad tolerances ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Sampling grid too coarse for the angular band of a function.
class AliasingError : public Error {
 public:
  using Error::Error;
};

// Evaluation requested exactly at a pole of the extended exponential.
class PoleError : public Error {
 public:
  using Error::Error;
};

// Kernel table or output window does not cover what an operation needs.
class WindowError : public Error {
 public:
  using Error::Error;
};

// Quadrature over an empty radial window.
class NoDataError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column = 0)
      : Error(what), line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace qplane
