#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace singtraj {

/// Operands live over different variable sets, or a name is unknown.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Groebner computation exceeded its configured ceiling.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, std::size_t basis_size, unsigned degree)
      : std::runtime_error(what), basis_size_(basis_size), degree_(degree) {}

  std::size_t basis_size() const { return basis_size_; }
  unsigned degree() const { return degree_; }

 private:
  std::size_t basis_size_;
  unsigned degree_;
};

/// Text that is not a polynomial in the expected variables.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(message + " at line " + std::to_string(line) +
                           ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A system expected to have finitely many solutions does not.
class PositiveDimensionalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace singtraj
