#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace juryconv {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class BackendMismatch : public Error {
 public:
  using Error::Error;
};

// a00 is zero (or numerically zero) so no convolution inverse exists.
class SingularMatrix : public Error {
 public:
  SingularMatrix(const std::string& what, std::string entry)
      : Error(what), entry_(std::move(entry)) {}
  const std::string& entry() const noexcept { return entry_; }

 private:
  std::string entry_;
};

// A function was asked for a value outside its domain.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, double node)
      : Error(what), node_(node) {}
  double node() const noexcept { return node_; }

 private:
  double node_;
};

class SizeLimitExceeded : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

// Malformed input; field() names the offending JSON field or CSV cell.
class ParseError : public Error {
 public:
  ParseError(const std::string& field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace juryconv
