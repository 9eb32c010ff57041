#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace omt {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller supplied a value outside an operation's domain (unknown symbol,
/// nondeterministic acceptor where a deterministic one is required, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Out-degree of a safety acceptor exceeds the tree arity, or a tree of the
/// wrong arity was supplied.
class ArityError : public Error {
 public:
  using Error::Error;
};

/// The empty language has no tree representation.
class EmptyLanguageError : public Error {
 public:
  using Error::Error;
};

/// Raised when a search exceeds its query or step allowance. Never replaces a
/// wrong answer: it means "no answer".
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

/// A learner broke the query protocol (e.g. nondeterministic hypothesis).
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// A learner got stuck; usually the target is outside the learner's class.
class LearnerError : public Error {
 public:
  using Error::Error;
};

}  // namespace omt
