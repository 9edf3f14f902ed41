#pragma once

#include <stdexcept>
#include <string>

namespace pictex {

enum class ErrorKind {
  overflow,
  division_by_zero,
  parse,
  invalid_argument,
  degenerate,
  io,
};

/// Every failure in the engine surfaces as an Error. `line`/`column` are
/// zero when the error did not originate from source text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(what), kind_(kind), line_(line), column_(column) {}

  ErrorKind kind() const noexcept { return kind_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

  Error located(int line, int column) const {
    if (line_ != 0) return *this;
    return Error(kind_, what(), line, column);
  }

 private:
  ErrorKind kind_;
  int line_;
  int column_;
};

}  // namespace pictex
