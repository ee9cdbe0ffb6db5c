// Copyright 2026 The qkit Authors
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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qkit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input (files, flags). The CLI maps these to exit code 1.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string &what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Gate or circuit invariant violated.
class InvalidGate : public Error {
 public:
  using Error::Error;
};

/// A dense-simulation size guard was exceeded.
class SizeLimitExceeded : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Raised when a base and modulus share a factor; carries the gcd.
class NotCoprime : public Error {
 public:
  NotCoprime(std::uint64_t value, std::uint64_t modulus, std::uint64_t gcd)
      : Error("gcd(" + std::to_string(value) + ", " + std::to_string(modulus) +
              ") = " + std::to_string(gcd)),
        gcd_(gcd) {}

  std::uint64_t gcd() const { return gcd_; }

 private:
  std::uint64_t gcd_;
};

/// Pass-level failure in the transpiler or a mitigation transform.
class TransformError : public Error {
 public:
  using Error::Error;
};

}  // namespace qkit
