// Copyright 2026 The ratprog Authors
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

namespace ratprog {

/// Root of every error thrown by the library. The CLI maps each direct
/// category below to one exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Category: malformed or invalid input (exit code 2).
class InputError : public Error {
 public:
  using Error::Error;
};

// Category: numerical failure (exit code 3).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

class DomainError : public InputError {
 public:
  using InputError::InputError;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what), position_(position) {}
  explicit ParseError(const std::string& what) : InputError(what) {}

  /// Byte offset or line number, depending on the format being parsed.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_ = 0;
};

class SchemaError : public InputError {
 public:
  using InputError::InputError;
};

class ValidationError : public InputError {
 public:
  ValidationError(const std::string& what, std::vector<std::string> details)
      : InputError(what), details_(std::move(details)) {}

  const std::vector<std::string>& details() const { return details_; }

 private:
  std::vector<std::string> details_;
};

class BindingError : public InputError {
 public:
  using InputError::InputError;
};

class EvalError : public InputError {
 public:
  using InputError::InputError;
};

class NotPurelyRationalError : public InputError {
 public:
  NotPurelyRationalError(const std::string& what, std::vector<std::string> nodes)
      : InputError(what), nodes_(std::move(nodes)) {}

  const std::vector<std::string>& offending_nodes() const { return nodes_; }

 private:
  std::vector<std::string> nodes_;
};

class MissingMetricError : public InputError {
 public:
  using InputError::InputError;
};

class PoleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateSystemError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateDenominatorError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Exit code 4.
class NoFeasibleConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ratprog
