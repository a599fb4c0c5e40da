#pragma once

#include <stdexcept>
#include <string>

namespace dioph {

enum class ErrorKind {
  kDimension,       // shapes or dimension constraints violated
  kDependent,       // linearly dependent input where independence is required
  kZeroVector,      // zero vector where a direction is required
  kNotDecomposable, // vector fails the Plücker relations
  kPrecision,       // working precision exhausted
  kDomain,          // parameter outside its admissible range
  kParse,           // malformed textual input
  kCache,           // on-disk cache failed validation
  kBudget,          // search budget exhausted
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse errors carry a 1-based line/column.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(ErrorKind::kParse, "line " + std::to_string(line) + ", column " +
                                     std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace dioph
