#ifndef AMRST_ERRORS_HPP
#define AMRST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace amrst {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Penman / token-stream syntax error. `position` is a byte offset into the
// input (or token index for token streams), -1 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, long position = -1)
      : Error(position >= 0 ? msg + " (at position " + std::to_string(position) + ")" : msg),
        position_(position) {}
  long position() const { return position_; }

 private:
  long position_;
};

// Graph invariant violation (programmatic construction, invalid mapping, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A metric was asked to compare inputs that are empty after extraction/OOV
// handling; reported distinctly from any numeric result.
class EmptyExtractionError : public Error {
 public:
  using Error::Error;
};

// Malformed data file (embeddings, JSONL, config). `line` is 1-based, 0 when
// unknown.
class FormatError : public Error {
 public:
  FormatError(const std::string& msg, std::size_t line = 0)
      : Error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Failure talking to a remote model backend.
class BackendError : public Error {
 public:
  enum class Kind { Timeout, Protocol, HttpStatus, Unreachable, Item };
  BackendError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace amrst

#endif  // AMRST_ERRORS_HPP
