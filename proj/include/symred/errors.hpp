#pragma once

#include <stdexcept>
#include <string>

namespace symred {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class UnboundSymbol : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A sample point at which an expression cannot be evaluated (pole, branch
// restriction, series guard). Sampling catches it and draws another point.
class PointRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SamplingStarvation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace symred
