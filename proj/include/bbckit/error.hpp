#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bbckit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A symbol or automaton does not belong to the expected alphabet.
class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

/// An operation was handed an argument that violates its documented
/// precondition (e.g. complement of a partial DFA).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class PartialityError : public Error {
 public:
  using Error::Error;
};

class NondeterminismError : public Error {
 public:
  using Error::Error;
};

class NotTranslatedMealy : public Error {
 public:
  NotTranslatedMealy(const std::string& what, std::size_t state)
      : Error(what), state_(state) {}
  std::size_t state() const { return state_; }

 private:
  std::size_t state_;
};

/// Raised by spec validation; carries the offending transition.
class NotPrefixClosed : public Error {
 public:
  NotPrefixClosed(const std::string& what, std::size_t from, std::size_t symbol,
                  std::size_t to)
      : Error(what), from_(from), symbol_(symbol), to_(to) {}
  std::size_t from() const { return from_; }
  std::size_t symbol() const { return symbol_; }
  std::size_t to() const { return to_; }

 private:
  std::size_t from_, symbol_, to_;
};

class BugAutomatonError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

class SerializeError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NotACounterexample : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace bbckit
