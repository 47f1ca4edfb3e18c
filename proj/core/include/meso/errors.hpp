#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace meso {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. line() is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates a precondition (self-loop, label out of range, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// The quantity is undefined for this input, e.g. a graph with no edges.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// Combination of options the library does not implement (e.g. directed ER null).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace meso
