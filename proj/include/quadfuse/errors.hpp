// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quadfuse {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidTerm : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Raised by the strict-mode parser on the first malformed line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UnknownFunction : public Error {
 public:
  explicit UnknownFunction(const std::string& name)
      : Error("unknown resolution function '" + name + "'"), name_(name) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class MissingParam : public Error {
 public:
  MissingParam(const std::string& function, const std::string& param)
      : Error("resolution function " + function +
              " requires a valid parameter '" + param + "'") {}
};

class EmptySources : public Error {
 public:
  EmptySources() : Error("quality assessment requires a non-empty source set") {}
};

class PolicySyntaxError : public Error {
 public:
  PolicySyntaxError(std::size_t line, const std::string& message)
      : Error("policy line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace quadfuse
