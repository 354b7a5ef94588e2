#ifndef TEMPORALIS_ERRORS_HPP
#define TEMPORALIS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace temporalis {

// Base class for everything thrown on purpose. The CLI maps subclasses to
// exit codes: input problems -> 2, exceeded guards -> 3, broken internal
// invariants -> 4.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// Malformed input: syntax, empty intervals, rationals, unsafe rules, ...
class InputError : public Error {
public:
  using Error::Error;
};

class ParseError : public InputError {
public:
  ParseError(const std::string &msg, std::size_t line, std::size_t column)
      : InputError(msg + " (at " + std::to_string(line) + ":" +
                   std::to_string(column) + ")"),
        line(line), column(column) {}
  std::size_t line;
  std::size_t column;
};

class SafetyError : public InputError {
public:
  SafetyError(std::size_t rule_index, const std::string &variable)
      : InputError("unsafe rule #" + std::to_string(rule_index) +
                   ": head variable " + variable +
                   " does not occur in a positive body atom outside a "
                   "left operand of SINCE/UNTIL"),
        rule_index(rule_index), variable(variable) {}
  std::size_t rule_index;
  std::string variable;
};

// A configurable resource guard tripped; the instance is beyond desk scale.
class GuardError : public Error {
public:
  using Error::Error;
};

// Something that must never happen happened.
class InvariantError : public Error {
public:
  using Error::Error;
};

} // namespace temporalis

#endif
