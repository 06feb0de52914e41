#pragma once

#include <stdexcept>
#include <string>

namespace factorx {

// Base of everything the library throws on bad input or failed computation.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// A computation would exceed its configured work budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, double projected)
      : Error(what), projected_(projected) {}
  double projected() const { return projected_; }

 private:
  double projected_;
};

}  // namespace factorx
