// Copyright 2026 The BaIT Authors. All Rights Reserved.
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
// =============================================================================

#ifndef BAIT_ERRORS_HPP_
#define BAIT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace bait {

// Base of every error thrown by the library. The CLI maps subclasses onto
// exit codes: input/integrity problems exit 2, contract violations exit 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes that cannot be combined.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Argument outside its documented domain (probability, count, learning rate).
class ParameterError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

// Input with nothing to work on: an all-masked key set, a zero-sentence body.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// Caller broke an operation precondition (e.g. an UNR sample given to stage 2).
class ContractError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// Text input that does not follow its format. `line` is 1-based, 0 if unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Cross-file consistency failures: duplicate ids, dangling references.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Binary store/checkpoint framing problems.
class FormatError : public Error {
 public:
  enum class Kind { kBadMagic, kBadVersion, kDimensionMismatch, kTruncated, kNonFinite, kBadHeader };
  FormatError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace bait

#endif  // BAIT_ERRORS_HPP_
