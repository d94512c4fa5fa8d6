#pragma once

#include <stdexcept>
#include <string>

namespace hochbv {

/// Input that violates a documented precondition (shape, field, format).
class MalformedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Entries from two different fields were combined.
class FieldMismatch : public MalformedInput {
 public:
  using MalformedInput::MalformedInput;
};

/// A computation produced something that cannot happen for well-formed data
/// (e.g. an image not contained in a kernel, so d∘d ≠ 0).
class Inconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Degree or size cap exceeded.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfiniteDimensional : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotACocycle : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidAutomorphism : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedCoefficients : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operation requires a validated structural map and none was supplied.
class UnvalidatedStructuralMap : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public MalformedInput {
 public:
  ParseError(std::string file, int line, int column, const std::string& what)
      : MalformedInput(file + ":" + std::to_string(line) + ":" +
                       std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace hochbv
