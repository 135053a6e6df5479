#pragma once

#include <stdexcept>
#include <string>

namespace survcor {

/// Base class for all errors raised by this library. Messages are single
/// lines so the CLI can forward them verbatim to scripted callers.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input document: bad header, bad cell, duplicate index.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameter or violated operation precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Not enough usable data to produce a result.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// File could not be opened, read, or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace survcor
