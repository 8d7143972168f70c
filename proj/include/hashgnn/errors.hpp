// Copyright 2026 The hashgnn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace hashgnn {

// Process exit codes used by the command-line front end.
enum class ExitCode : int {
  kOk = 0,
  kConfig = 2,
  kParse = 3,
  kValidation = 4,
  kResource = 5,
};

// Base of every recoverable error the library reports to callers. Each class
// maps onto one exit code so the CLI can translate without string matching.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept = 0;
};

// Invalid run parameters (K = 0, ratio outside (0,1), infeasible generator).
class ConfigError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kConfig; }
};

// Unreadable input: missing file or malformed line.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  ExitCode exit_code() const noexcept override { return ExitCode::kParse; }
  // 1-based line number of the offending input, 0 when not line-specific.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates a data-model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kValidation; }
};

// Edge split could not be produced (too few edges, no non-edges left).
class SplitError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Planned allocation exceeds the configured budget, or output cannot be written.
class ResourceError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kResource; }
};

// MinHash over an empty set; callers substitute the sentinel instead.
class EmptySetError : public std::domain_error {
 public:
  EmptySetError() : std::domain_error("minhash of an empty set is undefined") {}
};

}  // namespace hashgnn
