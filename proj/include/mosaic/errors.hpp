#pragma once

#include <stdexcept>
#include <string>

namespace mosaic {

/// Invalid parameter value (negative window, gamma outside [0,1], ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A node or time lies outside the node set / time domain it is checked against.
class DomainError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A mosaic partition breaks the disjointness contract.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Edge generation could not proceed (e.g. rewiring with no eligible cell).
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mosaic
