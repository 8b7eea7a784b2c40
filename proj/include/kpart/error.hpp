#pragma once

#include <stdexcept>
#include <string>

namespace kpart {

enum class Errc {
  NonFiniteInput,
  OverflowRisk,
  InvalidK,
  NonTermination,
  InvalidAssignment,
  ParseError,
  BudgetExceeded,
  NegativeInput,
  InvalidSpec,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonFiniteInput: return "NonFiniteInput";
    case Errc::OverflowRisk: return "OverflowRisk";
    case Errc::InvalidK: return "InvalidK";
    case Errc::NonTermination: return "NonTermination";
    case Errc::InvalidAssignment: return "InvalidAssignment";
    case Errc::ParseError: return "ParseError";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NegativeInput: return "NegativeInput";
    case Errc::InvalidSpec: return "InvalidSpec";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

/// Input parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(Errc::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace kpart
