#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vfrag {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text; `position` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A symbol that the selected language or structure does not admit.
class LanguageError : public Error {
 public:
  using Error::Error;
};

/// Input outside the fragment an operation requires (e.g. a quantifier
/// where a quantifier-free formula is expected).
class FragmentError : public Error {
 public:
  using Error::Error;
};

/// DNF clause-count guard tripped.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// Search space larger than the configured bound.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Bad finite-field parameters or model descriptor.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// A series computation needed more precision than was available.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

}  // namespace vfrag
