#ifndef TIELAB_ERROR_HPP
#define TIELAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace tielab {

// Bad user input: malformed files, out-of-range values, inconsistent
// configuration. The CLI maps these to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// File could not be parsed; carries the 1-based line number when known.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : ValidationError(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Operation asked of an empty sample/edge set where the result is undefined.
class EmptyInputError : public ValidationError {
 public:
  explicit EmptyInputError(const std::string& what) : ValidationError(what) {}
};

// Statistic is undefined on this input (e.g. zero variance everywhere).
class DegenerateInputError : public ValidationError {
 public:
  explicit DegenerateInputError(const std::string& what) : ValidationError(what) {}
};

// Unexpected failures at run time (I/O on results, internal invariants).
// The CLI maps these to exit code 1.
class RuntimeFailure : public std::runtime_error {
 public:
  explicit RuntimeFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tielab

#endif  // TIELAB_ERROR_HPP
