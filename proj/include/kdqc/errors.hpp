// Copyright 2026 The kdqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace kdqc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A dense operation would exceed the configured Hilbert-space dimension cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Operand dimensions or site counts do not match.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Input outside the mathematical domain of an operation (e.g. non-Hermitian
/// matrix handed to the Hermitian eigensolver).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on data that does not satisfy its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A computation ran past its configured budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// One or more invariant checks failed. `failures()` lists each failed check.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> failures);
  ValidationError(const std::string& failure);

  const std::vector<std::string>& failures() const noexcept { return failures_; }

 private:
  std::vector<std::string> failures_;
};

/// Syntax error in textual input, with a 1-based source location.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column,
             const std::string& source_line);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace kdqc
